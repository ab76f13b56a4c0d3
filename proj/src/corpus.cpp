#include "ofs/corpus.hpp"

#include <algorithm>
#include <cctype>

#include "ofs/errors.hpp"
#include "ofs/model_io.hpp"

namespace ofs {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

bool is_comment(std::string_view line) {
  auto t = trim(line);
  return !t.empty() && t.front() == '#';
}

}  // namespace

AlphabetSpec::AlphabetSpec(std::map<Token, std::set<std::string>> memberships)
    : memberships_(std::move(memberships)) {
  for (const auto& [t, classes] : memberships_) {
    if (!is_valid_token(t)) throw FormatError("invalid alphabet token '" + t + "'");
    if (is_reserved(t)) throw FormatError("reserved marker '" + t + "' listed in the alphabet");
    tokens_.insert(t);
    longest_ = std::max(longest_, t.size());
  }
  longest_ = std::max<std::size_t>(longest_, 1);
}

TokenClassTable AlphabetSpec::class_table() const {
  std::map<std::string, std::set<Token>> classes;
  for (const auto& [t, names] : memberships_) {
    for (const auto& c : names) classes[c].insert(t);
  }
  return TokenClassTable(tokens_, std::move(classes));
}

AlphabetSpec parse_alphabet(std::string_view text) {
  std::map<Token, std::set<std::string>> memberships;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::string_view line = lines[i];
    if (trim(line).empty() || is_comment(line)) continue;
    std::size_t begin = 0;
    while (is_space(line[begin])) ++begin;
    std::size_t colon = std::string_view::npos;
    for (std::size_t p = begin; p < line.size(); ++p) {
      if (line[p] == ':' && (p + 1 == line.size() || is_space(line[p + 1]))) {
        colon = p;
        break;
      }
    }
    if (colon == std::string_view::npos) throw SyntaxError("expected 'token: CLASS, ...'", line_no, begin + 1);
    Token token(line.substr(begin, colon - begin));
    if (token.empty() || !is_valid_token(token)) throw SyntaxError("invalid token", line_no, begin + 1);
    if (is_reserved(token)) throw SyntaxError("reserved marker '" + token + "' in alphabet", line_no, begin + 1);
    if (memberships.count(token)) throw SyntaxError("duplicate token '" + token + "'", line_no, begin + 1);

    std::set<std::string> classes;
    std::size_t p = colon + 1;
    while (p <= line.size()) {
      std::size_t comma = line.find(',', p);
      if (comma == std::string_view::npos) comma = line.size();
      std::string_view name = trim(line.substr(p, comma - p));
      const bool ok = !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
      });
      if (!ok) throw SyntaxError("invalid class name", line_no, p + 1);
      classes.insert(std::string(name));
      p = comma + 1;
    }
    memberships.emplace(std::move(token), std::move(classes));
  }
  return AlphabetSpec(std::move(memberships));
}

AlphabetSpec load_alphabet(const std::filesystem::path& path) { return parse_alphabet(read_text_file(path)); }

Word tokenize(std::string_view line, const AlphabetSpec& alphabet, TokenizeMode mode) {
  Word out;
  const auto& known = alphabet.tokens();
  auto known_or_marker = [&](std::string_view s) { return is_reserved(s) || known.count(std::string(s)) != 0; };
  std::size_t pos = 0;
  while (pos < line.size()) {
    if (is_space(line[pos])) {
      ++pos;
      continue;
    }
    if (mode == TokenizeMode::kWhitespace) {
      std::size_t end = pos;
      while (end < line.size() && !is_space(line[end])) ++end;
      std::string_view unit = line.substr(pos, end - pos);
      if (!known_or_marker(unit)) throw UntokenizableInput(std::string(line), pos);
      out.emplace_back(unit);
      pos = end;
      continue;
    }
    std::size_t len = std::min(alphabet.longest(), line.size() - pos);
    for (; len > 0; --len) {
      std::string_view cand = line.substr(pos, len);
      if (cand.find_first_of(" \t\r\n\v\f") != std::string_view::npos) continue;
      if (known_or_marker(cand)) break;
    }
    if (len == 0) throw UntokenizableInput(std::string(line), pos);
    out.emplace_back(line.substr(pos, len));
    pos += len;
  }
  return out;
}

Word WordForm::tokens() const {
  Word out;
  for (std::size_t i = 0; i < syllables.size(); ++i) {
    if (i) out.emplace_back(kSeparator);
    if (stress_index == i) out.emplace_back(kStressMarker);
    out.insert(out.end(), syllables[i].begin(), syllables[i].end());
  }
  return out;
}

Word WordForm::phonemes() const {
  Word out;
  for (const auto& s : syllables) out.insert(out.end(), s.begin(), s.end());
  return out;
}

std::string WordForm::to_text() const { return join_spaced(tokens()); }

namespace {

// Splits a marked token sequence; returns a reject reason on failure.
std::optional<std::string> to_word_form(const Word& tokens, bool require_stress, WordForm& out) {
  out = {};
  std::size_t markers = 0;
  out.syllables.emplace_back();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t == kSeparator) {
      if (out.syllables.back().empty()) return "empty syllable";
      out.syllables.emplace_back();
    } else if (t == kStressMarker) {
      ++markers;
      if (!out.syllables.back().empty()) return "stress marker inside a syllable";
      if (i + 1 == tokens.size() || is_reserved(tokens[i + 1])) return "stress marker without a syllable";
      out.stress_index = out.syllables.size() - 1;
    } else {
      out.syllables.back().push_back(t);
    }
  }
  if (out.syllables.back().empty()) return "empty syllable";
  if (markers > 1) return std::to_string(markers) + " stress markers";
  if (markers == 0 && require_stress) return "no stress marker";
  return std::nullopt;
}

}  // namespace

IngestResult ingest(std::string_view text, const AlphabetSpec& alphabet, const IngestOptions& options) {
  IngestResult result;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (is_comment(lines[i])) continue;
    ++result.input_lines;
    if (trim(lines[i]).empty()) {
      result.rejects.push_back({line_no, "empty"});
      continue;
    }
    Word tokens;
    try {
      tokens = tokenize(lines[i], alphabet, options.mode);
    } catch (const UntokenizableInput& e) {
      result.rejects.push_back({line_no, "untokenizable at byte " + std::to_string(e.offset())});
      continue;
    }
    WordForm form;
    if (auto reason = to_word_form(tokens, options.require_stress, form)) {
      result.rejects.push_back({line_no, *reason});
      continue;
    }
    result.words.push_back(std::move(form));
    result.word_lines.push_back(line_no);
  }
  return result;
}

std::string reject_log_tsv(const std::vector<Reject>& rejects) {
  std::string out = "line\treason\n";
  for (const auto& r : rejects) out += std::to_string(r.line) + "\t" + r.reason + "\n";
  return out;
}

std::vector<Word> marked_corpus(const std::vector<WordForm>& words) {
  std::vector<Word> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(w.tokens());
  return out;
}

}  // namespace ofs
