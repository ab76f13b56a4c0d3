#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ofs/regex.hpp"
#include "ofs/token.hpp"

namespace ofs {

struct ObjectName {
  int level = 0;
  std::string label;

  auto operator<=>(const ObjectName&) const = default;
};

// Finite set of token sequences; the right-hand side of a level-0 rule.
// May contain the empty sequence.
class ObjectSet {
 public:
  ObjectSet() = default;
  ObjectSet(std::initializer_list<Word> strings) : strings_(strings) {}
  explicit ObjectSet(std::set<Word> strings) : strings_(std::move(strings)) {}

  const std::set<Word>& strings() const { return strings_; }
  std::size_t size() const { return strings_.size(); }
  bool empty() const { return strings_.empty(); }
  bool contains(const Word& w) const { return strings_.count(w) != 0; }
  bool insert(Word w) { return strings_.insert(std::move(w)).second; }
  void merge(const ObjectSet& other) { strings_.insert(other.strings_.begin(), other.strings_.end()); }

  bool operator==(const ObjectSet&) const = default;

 private:
  std::set<Word> strings_;
};

struct Rule {
  ObjectName lhs;
  std::variant<Regex, ObjectSet> rhs;

  bool has_regex() const { return std::holds_alternative<Regex>(rhs); }
  const Regex& regex() const { return std::get<Regex>(rhs); }
  const ObjectSet& set() const { return std::get<ObjectSet>(rhs); }

  bool operator==(const Rule&) const = default;
};

// A leveled rule system. levels()[i] holds the rules of level i; the single
// rule of the top level is the start rule. Immutable once built.
class Model {
 public:
  Model() = default;
  Model(std::string name, std::set<Token> terminals, std::vector<std::vector<Rule>> levels)
      : name_(std::move(name)), terminals_(std::move(terminals)), levels_(std::move(levels)) {}

  // The distinguished model left over when pruning kills the start rule.
  static Model empty_model(std::string name, std::size_t level_count);

  const std::string& name() const { return name_; }
  const std::set<Token>& terminals() const { return terminals_; }
  const std::vector<std::vector<Rule>>& levels() const { return levels_; }

  // n + 1 where n is the top level index.
  std::size_t level_count() const { return levels_.size(); }
  int top_level() const { return static_cast<int>(levels_.size()) - 1; }

  // True when no rule is left at all.
  bool is_empty() const;

  // The single top-level rule. Only defined on non-empty, valid models.
  const Rule& start() const { return levels_.back().front(); }

  // First rule with this label, at any level.
  const Rule* find(const std::string& label) const;

  bool operator==(const Model&) const = default;

 private:
  std::string name_;
  std::set<Token> terminals_;
  std::vector<std::vector<Rule>> levels_;
};

struct Violation {
  std::string kind;     // e.g. "level-ordering", "duplicate-lhs"
  std::string subject;  // offending rule or name
  std::string message;

  bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

// Lists every broken model invariant; empty iff the model is valid.
ValidationReport validate_model(const Model& model);

// Every higher-level rhs canonicalized; level-0 sets untouched.
Model canonicalize_model(const Model& model);

// Rule-application tree. Internal nodes carry higher-level objects, leaves
// carry a level-0 object and the string it contributed.
struct Derivation {
  ObjectName object;
  std::vector<Derivation> children;
  Word leaf;

  bool is_leaf() const { return object.level == 0; }
  Word yield() const;
  std::size_t depth() const;

  bool operator==(const Derivation&) const = default;
};

// "(Syllable (Onset b) (Peak æ) (Coda ks))"; empty leaves print as ε.
std::string to_string(const Derivation& d);

}  // namespace ofs
