#include "ofs/pattern.hpp"

#include <algorithm>
#include <cctype>

#include "ofs/errors.hpp"

namespace ofs {

TokenClassTable::TokenClassTable(std::set<Token> phonemes,
                                 std::map<std::string, std::set<Token>> user_classes)
    : phonemes_(std::move(phonemes)) {
  for (const auto& t : phonemes_) {
    if (is_reserved(t)) throw FormatError("reserved marker '" + t + "' listed as a phoneme");
  }
  for (auto& [name, members] : user_classes) {
    if (name == kAny || name == kNoSep || name == kNoSepStress) {
      throw FormatError("class name '" + name + "' is reserved for a derived class");
    }
    for (const auto& t : members) {
      if (is_reserved(t)) throw FormatError("reserved marker '" + t + "' in class " + name);
      if (!phonemes_.count(t)) throw FormatError("class " + name + " names unknown token '" + t + "'");
    }
    classes_.emplace(name, std::move(members));
  }
  std::set<Token> nosepstress = phonemes_;
  std::set<Token> nosep = nosepstress;
  nosep.insert(Token(kStressMarker));
  std::set<Token> any = nosep;
  any.insert(Token(kSeparator));
  classes_[std::string(kAny)] = std::move(any);
  classes_[std::string(kNoSep)] = std::move(nosep);
  classes_[std::string(kNoSepStress)] = std::move(nosepstress);
}

const std::set<Token>& TokenClassTable::members(const std::string& name) const {
  auto it = classes_.find(name);
  if (it == classes_.end()) throw UnknownClass(name);
  return it->second;
}

PatternElement PatternElement::lit(Token t) {
  PatternElement e;
  e.kind = Kind::kLiteral;
  e.literal = std::move(t);
  return e;
}

PatternElement PatternElement::var(std::string class_name, Multiplicity m) {
  PatternElement e;
  e.kind = Kind::kVar;
  e.class_name = std::move(class_name);
  e.mult = m;
  return e;
}

PatternElement PatternElement::capture_var(std::string name, std::string class_name,
                                           Multiplicity m) {
  PatternElement e = var(std::move(class_name), m);
  e.capture = true;
  e.capture_name = std::move(name);
  return e;
}

std::size_t ContextPattern::capture_index() const {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].capture) return i;
  }
  return elements.size();
}

namespace {

// can_span[s][e] for one element over the datum.
class ElementMatcher {
 public:
  ElementMatcher(const PatternElement& el, std::span<const Token> datum,
                 const TokenClassTable& table)
      : el_(el), run_(datum.size() + 1, 0) {
    const std::set<Token>* members =
        el.kind == PatternElement::Kind::kVar ? &table.members(el.class_name) : nullptr;
    for (std::size_t j = datum.size(); j-- > 0;) {
      bool ok = members ? members->count(datum[j]) != 0 : datum[j] == el.literal;
      run_[j] = ok ? run_[j + 1] + 1 : 0;
    }
  }

  bool matches(std::size_t s, std::size_t e) const {
    std::size_t len = e - s;
    if (len > run_[s]) return false;
    if (el_.kind == PatternElement::Kind::kLiteral) return len == 1;
    switch (el_.mult) {
      case Multiplicity::kOne:
        return len == 1;
      case Multiplicity::kStar:
        return true;
      case Multiplicity::kPlus:
        return len >= 1;
    }
    return false;
  }

 private:
  const PatternElement& el_;
  std::vector<std::size_t> run_;
};

void match_one(const ContextPattern& pattern, std::span<const Token> datum,
               const TokenClassTable& table, std::set<Word>& out) {
  const std::size_t m = pattern.elements.size();
  const std::size_t n = datum.size();
  const std::size_t cap = pattern.capture_index();
  if (cap == m) return;

  std::vector<ElementMatcher> matchers;
  matchers.reserve(m);
  for (const auto& el : pattern.elements) matchers.emplace_back(el, datum, table);

  // prefix[i][j]: elements [0, i) cover datum [0, j)
  std::vector<std::vector<char>> prefix(m + 1, std::vector<char>(n + 1, 0));
  prefix[0][0] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t s = 0; s <= n; ++s) {
      if (!prefix[i][s]) continue;
      for (std::size_t e = s; e <= n; ++e) {
        if (matchers[i].matches(s, e)) prefix[i + 1][e] = 1;
      }
    }
  }
  // suffix[i][j]: elements [i, m) cover datum [j, n)
  std::vector<std::vector<char>> suffix(m + 1, std::vector<char>(n + 1, 0));
  suffix[m][n] = 1;
  for (std::size_t i = m; i-- > 0;) {
    for (std::size_t s = 0; s <= n; ++s) {
      for (std::size_t e = s; e <= n; ++e) {
        if (suffix[i + 1][e] && matchers[i].matches(s, e)) {
          suffix[i][s] = 1;
          break;
        }
      }
    }
  }
  for (std::size_t s = 0; s <= n; ++s) {
    if (!prefix[cap][s]) continue;
    for (std::size_t e = s; e <= n; ++e) {
      if (suffix[cap + 1][e] && matchers[cap].matches(s, e)) {
        out.emplace(datum.begin() + static_cast<std::ptrdiff_t>(s),
                    datum.begin() + static_cast<std::ptrdiff_t>(e));
      }
    }
  }
}

}  // namespace

std::set<Word> match_captures(const SetFormer& former, std::span<const Token> datum,
                              const TokenClassTable& table) {
  std::set<Word> out;
  for (const auto& alt : former.alternatives) match_one(alt, datum, table, out);
  return out;
}

namespace {

class FormerParser {
 public:
  FormerParser(std::string_view text, std::size_t line, std::size_t column)
      : text_(text), line_(line), column_(column) {}

  SetFormer parse() {
    SetFormer former;
    skip_ws();
    former.alternatives.push_back(parse_alternative());
    skip_ws();
    while (!at_end() && peek() == '|') {
      ++pos_;
      skip_ws();
      former.alternatives.push_back(parse_alternative());
      skip_ws();
    }
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    const auto& first = former.alternatives.front();
    const auto& universe = first.elements[first.capture_index()].class_name;
    for (const auto& alt : former.alternatives) {
      if (alt.elements[alt.capture_index()].class_name != universe) {
        fail("alternatives capture over different classes");
      }
    }
    return former;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, line_, column_ + pos_);
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool multiplicity(Multiplicity& m) {
    skip_ws();
    if (at_end()) return false;
    if (peek() == '*') {
      m = Multiplicity::kStar;
    } else if (peek() == '+') {
      m = Multiplicity::kPlus;
    } else {
      return false;
    }
    ++pos_;
    return true;
  }

  ContextPattern parse_alternative() {
    expect('/');
    ContextPattern pattern;
    std::size_t captures = 0;
    for (;;) {
      skip_ws();
      if (at_end()) fail("unterminated pattern, expected '/'");
      char c = peek();
      if (c == '/') {
        ++pos_;
        break;
      }
      if (c == '"') {
        pattern.elements.push_back(PatternElement::lit(literal()));
      } else if (c == '(') {
        ++pos_;
        std::string name = identifier();
        expect(':');
        std::string cls = identifier();
        Multiplicity m = Multiplicity::kOne;
        multiplicity(m);
        expect(')');
        if (++captures > 1) fail("more than one capture in a pattern");
        pattern.elements.push_back(PatternElement::capture_var(std::move(name), std::move(cls), m));
      } else if (c == '[') {
        ++pos_;
        std::string cls = identifier();
        Multiplicity m = Multiplicity::kOne;
        bool inside = multiplicity(m);
        expect(']');
        Multiplicity after = Multiplicity::kOne;
        if (multiplicity(after)) {
          if (inside) fail("multiplicity given twice");
          m = after;
        }
        pattern.elements.push_back(PatternElement::var(std::move(cls), m));
      } else {
        fail(std::string("unexpected '") + c + "' in pattern");
      }
    }
    if (pattern.elements.empty()) fail("empty pattern");
    if (captures == 0) fail("pattern has no capture");
    return pattern;
  }

  Token literal() {
    ++pos_;  // opening quote
    Token out;
    for (;;) {
      if (at_end()) fail("unterminated literal");
      char c = peek();
      ++pos_;
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("unterminated escape");
        out += peek();
        ++pos_;
      } else {
        out += c;
      }
    }
    if (!is_valid_token(out)) fail("literal is not a token");
    return out;
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

const char* mult_suffix(Multiplicity m) {
  switch (m) {
    case Multiplicity::kOne:
      return "";
    case Multiplicity::kStar:
      return "*";
    case Multiplicity::kPlus:
      return "+";
  }
  return "";
}

}  // namespace

SetFormer parse_former(std::string_view text, std::size_t line, std::size_t column) {
  return FormerParser(text, line, column).parse();
}

std::string to_string(const SetFormer& former) {
  std::string out;
  for (std::size_t a = 0; a < former.alternatives.size(); ++a) {
    if (a) out += " | ";
    out += "/";
    for (const auto& el : former.alternatives[a].elements) {
      out += ' ';
      if (el.kind == PatternElement::Kind::kLiteral) {
        out += '"';
        for (char c : el.literal) {
          if (c == '"' || c == '\\') out += '\\';
          out += c;
        }
        out += '"';
      } else if (el.capture) {
        out += "(" + el.capture_name + ": " + el.class_name + mult_suffix(el.mult) + ")";
      } else {
        out += "[" + el.class_name + "]" + mult_suffix(el.mult);
      }
    }
    out += " /";
  }
  return out;
}

}  // namespace ofs
