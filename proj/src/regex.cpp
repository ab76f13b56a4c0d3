#include "ofs/regex.hpp"

#include <algorithm>
#include <cctype>

#include "ofs/errors.hpp"

namespace ofs {

Regex Regex::ref(std::string label) { return Regex(Kind::kRef, std::move(label), {}); }

Regex Regex::concat(std::vector<Regex> children) {
  return Regex(Kind::kConcat, {}, std::move(children));
}

Regex Regex::alt(std::vector<Regex> children) {
  return Regex(Kind::kAlt, {}, std::move(children));
}

Regex Regex::star(Regex inner) { return Regex(Kind::kStar, {}, {std::move(inner)}); }

Regex Regex::plus(Regex inner) { return Regex(Kind::kPlus, {}, {std::move(inner)}); }

std::strong_ordering Regex::operator<=>(const Regex& other) const {
  if (auto c = kind_ <=> other.kind_; c != 0) return c;
  if (auto c = label_ <=> other.label_; c != 0) return c;
  return std::lexicographical_compare_three_way(children_.begin(), children_.end(),
                                                other.children_.begin(), other.children_.end());
}

std::vector<std::string> Regex::refs() const {
  std::vector<std::string> out;
  std::function<void(const Regex&)> walk = [&](const Regex& e) {
    if (e.is_ref()) out.push_back(e.label());
    for (const auto& c : e.children()) walk(c);
  };
  walk(*this);
  return out;
}

Regex Regex::rename(const std::function<std::string(const std::string&)>& fn) const {
  if (is_ref()) return Regex::ref(fn(label_));
  Regex copy = *this;
  for (auto& c : copy.children_) c = c.rename(fn);
  return copy;
}

Regex canonicalize(const Regex& expr) {
  using K = Regex::Kind;
  switch (expr.kind()) {
    case K::kEpsilon:
    case K::kRef:
      return expr;
    case K::kConcat: {
      std::vector<Regex> flat;
      for (const auto& c : expr.children()) {
        Regex cc = canonicalize(c);
        if (cc.kind() == K::kConcat) {
          flat.insert(flat.end(), cc.children().begin(), cc.children().end());
        } else if (!cc.is_epsilon()) {
          flat.push_back(std::move(cc));
        }
      }
      if (flat.empty()) return Regex::epsilon();
      if (flat.size() == 1) return flat.front();
      return Regex::concat(std::move(flat));
    }
    case K::kAlt: {
      std::vector<Regex> flat;
      for (const auto& c : expr.children()) {
        Regex cc = canonicalize(c);
        if (cc.kind() == K::kAlt) {
          flat.insert(flat.end(), cc.children().begin(), cc.children().end());
        } else {
          flat.push_back(std::move(cc));
        }
      }
      std::sort(flat.begin(), flat.end());
      flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
      if (flat.size() == 1) return flat.front();
      return Regex::alt(std::move(flat));
    }
    case K::kStar: {
      Regex inner = canonicalize(expr.inner());
      if (inner.is_epsilon()) return inner;
      if (inner.kind() == K::kStar) return inner;
      if (inner.kind() == K::kPlus) return Regex::star(inner.inner());
      return Regex::star(std::move(inner));
    }
    case K::kPlus: {
      Regex inner = canonicalize(expr.inner());
      if (inner.is_epsilon()) return inner;
      if (inner.kind() == K::kStar || inner.kind() == K::kPlus) return inner;
      return Regex::plus(std::move(inner));
    }
  }
  return expr;
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// alt     := concat ('|' concat)*
// concat  := postfix+
// postfix := atom ('*' | '+')*
// atom    := NAME | '(' ')' | '(' alt ')'
class RegexParser {
 public:
  RegexParser(std::string_view text, std::size_t line, std::size_t column)
      : text_(text), line_(line), column_(column) {}

  Regex parse() {
    skip_ws();
    if (at_end()) fail("empty regular expression");
    Regex e = parse_alt();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
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

  Regex parse_alt() {
    std::vector<Regex> branches{parse_concat()};
    skip_ws();
    while (!at_end() && peek() == '|') {
      ++pos_;
      branches.push_back(parse_concat());
      skip_ws();
    }
    return branches.size() == 1 ? std::move(branches.front()) : Regex::alt(std::move(branches));
  }

  Regex parse_concat() {
    std::vector<Regex> items;
    for (;;) {
      skip_ws();
      if (at_end() || peek() == '|' || peek() == ')') break;
      items.push_back(parse_postfix());
    }
    if (items.empty()) fail("expected an object name or '('");
    return items.size() == 1 ? std::move(items.front()) : Regex::concat(std::move(items));
  }

  Regex parse_postfix() {
    Regex e = parse_atom();
    for (;;) {
      skip_ws();
      if (at_end()) break;
      if (peek() == '*') {
        ++pos_;
        e = Regex::star(std::move(e));
      } else if (peek() == '+') {
        ++pos_;
        e = Regex::plus(std::move(e));
      } else {
        break;
      }
    }
    return e;
  }

  Regex parse_atom() {
    skip_ws();
    if (at_end()) fail("unexpected end of expression");
    char c = peek();
    if (c == '(') {
      ++pos_;
      skip_ws();
      if (!at_end() && peek() == ')') {
        ++pos_;
        return Regex::epsilon();
      }
      Regex e = parse_alt();
      skip_ws();
      if (at_end() || peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (!at_end() && is_ident_char(peek())) ++pos_;
      return Regex::ref(std::string(text_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

enum class Context { kTop, kAltBranch, kConcatItem, kOperand };

void print(const Regex& e, Context ctx, std::string& out) {
  using K = Regex::Kind;
  switch (e.kind()) {
    case K::kEpsilon:
      out += "()";
      return;
    case K::kRef:
      out += e.label();
      return;
    case K::kConcat: {
      bool paren = ctx == Context::kConcatItem || ctx == Context::kOperand;
      if (paren) out += '(';
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i) out += ' ';
        print(e.children()[i], Context::kConcatItem, out);
      }
      if (paren) out += ')';
      return;
    }
    case K::kAlt: {
      bool paren = ctx != Context::kTop;
      if (paren) out += '(';
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i) out += " | ";
        print(e.children()[i], Context::kAltBranch, out);
      }
      if (paren) out += ')';
      return;
    }
    case K::kStar:
    case K::kPlus:
      print(e.inner(), Context::kOperand, out);
      out += e.kind() == K::kStar ? '*' : '+';
      return;
  }
}

}  // namespace

Regex parse_regex(std::string_view text, std::size_t line, std::size_t column) {
  return RegexParser(text, line, column).parse();
}

std::string to_string(const Regex& expr) {
  std::string out;
  print(expr, Context::kTop, out);
  return out;
}

}  // namespace ofs
