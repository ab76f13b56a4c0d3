#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ofs/token.hpp"

namespace ofs {

// Named token classes. ANY, NOSEP and NOSEPSTRESS are always present:
// ANY is every phoneme plus both markers, NOSEP drops the separator,
// NOSEPSTRESS drops both markers.
class TokenClassTable {
 public:
  static constexpr std::string_view kAny = "ANY";
  static constexpr std::string_view kNoSep = "NOSEP";
  static constexpr std::string_view kNoSepStress = "NOSEPSTRESS";

  TokenClassTable() : TokenClassTable({}, {}) {}
  // Throws FormatError if a user class contains a reserved marker, names a
  // token outside `phonemes`, or shadows a derived class.
  TokenClassTable(std::set<Token> phonemes, std::map<std::string, std::set<Token>> user_classes);

  const std::set<Token>& phonemes() const { return phonemes_; }
  bool has_class(const std::string& name) const { return classes_.count(name) != 0; }
  // Throws UnknownClass.
  const std::set<Token>& members(const std::string& name) const;
  bool knows(const Token& t) const { return phonemes_.count(t) != 0 || is_reserved(t); }
  const std::map<std::string, std::set<Token>>& classes() const { return classes_; }

 private:
  std::set<Token> phonemes_;
  std::map<std::string, std::set<Token>> classes_;
};

enum class Multiplicity { kOne, kStar, kPlus };

struct PatternElement {
  enum class Kind { kLiteral, kVar };

  Kind kind = Kind::kVar;
  Token literal;           // kLiteral
  std::string class_name;  // kVar
  Multiplicity mult = Multiplicity::kOne;
  bool capture = false;
  std::string capture_name;

  static PatternElement lit(Token t);
  static PatternElement var(std::string class_name, Multiplicity m = Multiplicity::kOne);
  static PatternElement capture_var(std::string name, std::string class_name,
                                    Multiplicity m = Multiplicity::kOne);

  bool operator==(const PatternElement&) const = default;
};

// An anchored pattern with exactly one capture element.
struct ContextPattern {
  std::vector<PatternElement> elements;

  std::size_t capture_index() const;
  bool operator==(const ContextPattern&) const = default;
};

struct SetFormer {
  std::vector<ContextPattern> alternatives;

  bool operator==(const SetFormer&) const = default;
};

// All capture substrings over every decomposition of `datum` against every
// alternative. Throws UnknownClass.
std::set<Word> match_captures(const SetFormer& former, std::span<const Token> datum,
                              const TokenClassTable& table);

// `/ elem+ /` alternatives joined by `|`, where
//   elem := "lit" | (name: CLASS mult?) | [CLASS mult?]
// and the multiplicity of a bracketed element may also follow the bracket.
SetFormer parse_former(std::string_view text, std::size_t line = 1, std::size_t column = 1);
std::string to_string(const SetFormer& former);

}  // namespace ofs
