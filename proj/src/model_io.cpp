#include "ofs/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <type_traits>

#include "ofs/errors.hpp"

namespace ofs {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

// Cuts a `#` comment that sits outside quotes and starts a field.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == '#' && (i == 0 || is_space(line[i - 1]))) {
      return line.substr(0, i);
    }
  }
  return line;
}

// Open brace/paren depth outside quotes.
int open_depth(std::string_view text) {
  int depth = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == '{' || c == '(') {
      ++depth;
    } else if (c == '}' || c == ')') {
      --depth;
    }
  }
  return depth;
}

// A rule statement, possibly spanning several physical lines.
struct Statement {
  std::string text;
  std::size_t first_line = 0;
  std::vector<std::size_t> line_offsets;  // offset in `text` where each line begins

  std::pair<std::size_t, std::size_t> position(std::size_t offset) const {
    std::size_t idx = 0;
    while (idx + 1 < line_offsets.size() && line_offsets[idx + 1] <= offset) ++idx;
    return {first_line + idx, offset - line_offsets[idx] + 1};
  }

  [[noreturn]] void fail(const std::string& what, std::size_t offset) const {
    auto [line, col] = position(offset);
    throw SyntaxError(what, line, col);
  }
};

enum class FileKind { kModel, kPrototype };

struct ParsedFile {
  std::string name;
  std::size_t level_count = 0;
  std::set<Token> terminals;
  std::vector<std::vector<Rule>> levels;
  std::vector<SetFormer> formers;
};

class FileParser {
 public:
  FileParser(std::string_view text, FileKind kind) : lines_(split_lines(text)), kind_(kind) {}

  ParsedFile parse() {
    ParsedFile out;
    std::size_t i = 0;
    skip_blank(i);
    if (i >= lines_.size()) throw SyntaxError("missing 'ofs-model' header", 1, 1);
    parse_header(i, out);
    ++i;

    std::optional<int> current_level;
    std::vector<bool> seen(out.level_count, false);
    bool terminals_seen = false;

    while (skip_blank(i), i < lines_.size()) {
      const std::string& raw = lines_[i];
      std::string_view t = trim(raw);
      const std::size_t indent = raw.find_first_not_of(" \t");

      if (t.rfind("terminals:", 0) == 0) {
        if (terminals_seen || current_level) fail("misplaced 'terminals:' line", i, indent);
        terminals_seen = true;
        std::istringstream fields{std::string(t.substr(10))};
        for (std::string tok; fields >> tok;) out.terminals.insert(tok);
        ++i;
        continue;
      }

      std::string stripped = strip_comment(raw);
      std::string_view st = trim(stripped);
      if (st.empty()) {
        ++i;
        continue;
      }
      if (st.rfind("level", 0) == 0 && st.back() == ':' && st.size() > 6 && is_space(st[5])) {
        std::string_view num = trim(st.substr(5, st.size() - 6));
        int level = -1;
        if (!num.empty() && std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
            num.size() < 6) {
          level = std::stoi(std::string(num));
        }
        if (level < 0) fail("bad level header", i, indent);
        if (static_cast<std::size_t>(level) >= out.level_count) {
          fail("level " + std::to_string(level) + " exceeds declared level count", i, indent);
        }
        if (seen[level]) fail("level " + std::to_string(level) + " declared twice", i, indent);
        seen[level] = true;
        current_level = level;
        ++i;
        continue;
      }

      if (!current_level) fail("rule outside of a level block", i, indent);
      Statement stmt = collect_statement(i);
      parse_rule(stmt, *current_level, out);
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t line_index, std::size_t col) const {
    throw SyntaxError(what, line_index + 1, (col == std::string::npos ? 0 : col) + 1);
  }

  void skip_blank(std::size_t& i) const {
    while (i < lines_.size()) {
      std::string_view t = trim(lines_[i]);
      if (!t.empty() && t.front() != '#') return;
      ++i;
    }
  }

  void parse_header(std::size_t i, ParsedFile& out) {
    std::istringstream fields(lines_[i]);
    std::string magic, name, levels;
    fields >> magic >> name >> levels;
    std::string extra;
    if (magic != "ofs-model" || name.empty() || levels.rfind("levels=", 0) != 0 || (fields >> extra)) {
      fail("expected 'ofs-model <name> levels=<n>'", i, 0);
    }
    std::string num = levels.substr(7);
    if (num.empty() || num.size() > 5 ||
        !std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      fail("bad level count '" + num + "'", i, 0);
    }
    out.name = name;
    out.level_count = static_cast<std::size_t>(std::stoul(num));
    out.levels.assign(out.level_count, {});
  }

  Statement collect_statement(std::size_t& i) {
    Statement stmt;
    stmt.first_line = i + 1;
    for (;;) {
      stmt.line_offsets.push_back(stmt.text.size());
      stmt.text += strip_comment(lines_[i]);
      ++i;
      std::string_view t = trim(stmt.text);
      bool more = open_depth(stmt.text) > 0 || (!t.empty() && (t.back() == '|' || t.back() == ','));
      if (i >= lines_.size()) break;
      if (!more) {
        std::string next = strip_comment(lines_[i]);
        std::string_view nt = trim(next);
        more = !nt.empty() && nt.front() == '|';
      }
      if (!more) break;
      stmt.text += '\n';
    }
    return stmt;
  }

  void parse_rule(const Statement& stmt, int level, ParsedFile& out) {
    const std::string& s = stmt.text;
    std::size_t pos = 0;
    while (pos < s.size() && is_space(s[pos])) ++pos;
    std::size_t name_start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (pos == name_start) stmt.fail("expected an object name", name_start);
    std::string name = s.substr(name_start, pos - name_start);
    while (pos < s.size() && is_space(s[pos])) ++pos;

    ObjectName lhs{level, name};
    if (s.compare(pos, 2, "=>") == 0) {
      if (level == 0) stmt.fail("level-0 rules use '=' with a string set", pos);
      std::size_t body = pos + 2;
      out.levels[level].push_back(Rule{lhs, parse_sub(stmt, body, [&](std::string_view text) {
                                        return parse_regex(text);
                                      })});
      return;
    }
    if (pos >= s.size() || s[pos] != '=') stmt.fail("expected '=>' or '='", pos);
    if (level != 0) stmt.fail("rules above level 0 use '=>' with a regular expression", pos);
    std::size_t body = pos + 1;
    while (body < s.size() && is_space(s[body])) ++body;
    if (kind_ == FileKind::kModel) {
      out.levels[0].push_back(Rule{lhs, parse_set(stmt, body)});
    } else {
      out.formers.push_back(parse_sub(stmt, body, [&](std::string_view text) {
        return parse_former(text);
      }));
      out.levels[0].push_back(Rule{lhs, ObjectSet{}});
    }
  }

  // Runs a sub-parser on s[offset..] and maps its error position back.
  template <typename Fn>
  std::invoke_result_t<Fn, std::string_view> parse_sub(const Statement& stmt, std::size_t offset, Fn&& fn) {
    try {
      return fn(std::string_view(stmt.text).substr(offset));
    } catch (const SyntaxError& e) {
      std::string what = e.what();
      what = what.substr(0, what.rfind(" at line "));
      stmt.fail(what, offset + e.column() - 1);
    }
  }

  ObjectSet parse_set(const Statement& stmt, std::size_t pos) {
    const std::string& s = stmt.text;
    auto skip = [&] {
      while (pos < s.size() && is_space(s[pos])) ++pos;
    };
    if (pos >= s.size() || s[pos] != '{') stmt.fail("expected '{'", pos);
    ++pos;
    ObjectSet set;
    bool need_sep = false;
    for (;;) {
      skip();
      if (pos >= s.size()) stmt.fail("unterminated string set", pos);
      if (s[pos] == '}') {
        ++pos;
        break;
      }
      if (need_sep) {
        if (s[pos] != ',') stmt.fail("expected ',' or '}'", pos);
        ++pos;
        need_sep = false;
        continue;
      }
      if (s[pos] != '"') stmt.fail("expected a quoted string", pos);
      std::size_t start = pos++;
      std::string content;
      for (;;) {
        if (pos >= s.size() || s[pos] == '\n') stmt.fail("unterminated string", start);
        char c = s[pos++];
        if (c == '"') break;
        if (c == '\\') {
          if (pos >= s.size()) stmt.fail("unterminated escape", pos);
          content += s[pos++];
        } else {
          content += c;
        }
      }
      std::istringstream fields(content);
      Word w;
      for (std::string tok; fields >> tok;) w.push_back(tok);
      set.insert(std::move(w));
      need_sep = true;
    }
    skip();
    if (pos != s.size()) stmt.fail("unexpected text after string set", pos);
    return set;
  }

  std::vector<std::string> lines_;
  FileKind kind_;
};

std::string quote_word(const Word& w) {
  std::string out = "\"";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    for (char c : w[i]) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
  }
  return out + "\"";
}

void serialize_into(std::string& out, const Model& model, const std::vector<SetFormer>* formers) {
  out += "ofs-model " + model.name() + " levels=" + std::to_string(model.level_count()) + "\n";
  out += "terminals:";
  for (const auto& t : model.terminals()) out += " " + t;
  out += "\n";
  for (std::size_t li = model.level_count(); li-- > 0;) {
    out += "level " + std::to_string(li) + ":\n";
    const auto& rules = model.levels()[li];
    for (std::size_t r = 0; r < rules.size(); ++r) {
      const auto& rule = rules[r];
      out += "  " + rule.lhs.label;
      if (rule.has_regex()) {
        out += " => " + to_string(rule.regex()) + "\n";
      } else if (formers) {
        out += " = " + to_string((*formers)[r]) + "\n";
      } else {
        out += " = {";
        bool first = true;
        for (const auto& w : rule.set().strings()) {
          out += first ? " " : ", ";
          first = false;
          out += quote_word(w);
        }
        out += first ? "}\n" : " }\n";
      }
    }
  }
}

}  // namespace

Model parse_model(std::string_view text) {
  ParsedFile f = FileParser(text, FileKind::kModel).parse();
  return Model(std::move(f.name), std::move(f.terminals), std::move(f.levels));
}

PrototypeModel parse_prototype(std::string_view text) {
  ParsedFile f = FileParser(text, FileKind::kPrototype).parse();
  return PrototypeModel{Model(std::move(f.name), std::move(f.terminals), std::move(f.levels)),
                        std::move(f.formers)};
}

std::string serialize_model(const Model& model) {
  std::string out;
  serialize_into(out, model, nullptr);
  return out;
}

std::string serialize_prototype(const PrototypeModel& proto) {
  std::string out;
  serialize_into(out, proto.skeleton, &proto.formers);
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Model load_model(const std::filesystem::path& path) { return parse_model(read_text_file(path)); }

PrototypeModel load_prototype(const std::filesystem::path& path) {
  return parse_prototype(read_text_file(path));
}

}  // namespace ofs
