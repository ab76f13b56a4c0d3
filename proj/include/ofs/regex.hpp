#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ofs {

// Regular expression over object names, the right-hand side of every rule
// above level 0. Plain value type; children are held by value.
class Regex {
 public:
  // Declaration order is the canonical kind order.
  enum class Kind : std::uint8_t { kEpsilon, kRef, kConcat, kAlt, kStar, kPlus };

  Regex() = default;  // epsilon

  static Regex epsilon() { return Regex(); }
  static Regex ref(std::string label);
  static Regex concat(std::vector<Regex> children);
  static Regex alt(std::vector<Regex> children);
  static Regex star(Regex inner);
  static Regex plus(Regex inner);

  Kind kind() const { return kind_; }
  // Only meaningful for kRef.
  const std::string& label() const { return label_; }
  const std::vector<Regex>& children() const { return children_; }
  const Regex& inner() const { return children_.front(); }

  bool is_epsilon() const { return kind_ == Kind::kEpsilon; }
  bool is_ref() const { return kind_ == Kind::kRef; }

  // Total order: kind, then label, then children lexicographically.
  std::strong_ordering operator<=>(const Regex& other) const;
  bool operator==(const Regex& other) const { return (*this <=> other) == 0; }

  // Every Ref label, in left-to-right order, duplicates included.
  std::vector<std::string> refs() const;

  // Replaces every Ref by rename(label). No simplification is applied.
  Regex rename(const std::function<std::string(const std::string&)>& rename) const;

 private:
  Regex(Kind kind, std::string label, std::vector<Regex> children)
      : kind_(kind), label_(std::move(label)), children_(std::move(children)) {}

  Kind kind_ = Kind::kEpsilon;
  std::string label_;
  std::vector<Regex> children_;
};

// Normal form: nested Concat/Alt flattened, epsilon dropped from Concat,
// Alt children deduplicated and sorted, unary Concat/Alt unwrapped,
// nested closures collapsed (Star over Star/Plus is Star, Plus over Plus is
// Plus, Plus over Star is Star, closures of epsilon are epsilon).
Regex canonicalize(const Regex& expr);

// Surface syntax: juxtaposition is concatenation, `|` alternation, postfix
// `*` and `+`, parentheses, `()` for epsilon.
// `line`/`column` position the text inside an enclosing file for error reports.
Regex parse_regex(std::string_view text, std::size_t line = 1, std::size_t column = 1);
std::string to_string(const Regex& expr);

}  // namespace ofs
