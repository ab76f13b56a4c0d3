#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ofs/model.hpp"

namespace ofs {

// Position automaton of a model. Every occurrence of a level-0 object in the
// fully inlined start rule is a slot; slots are linked by first/follow/last
// sets, and each slot expands into a trie over its object's strings.
//
// Explicit states: state 0 is the start state; each slot owns an entry state
// (its trie root), the trie states below it, and one exit state. Token
// transitions only occur inside tries. Silent moves are: a terminal trie
// node finishes into its slot's exit; start and exit states enter the
// entry of every slot that may come next.
class Automaton {
 public:
  using StateId = std::uint32_t;
  using TokenId = std::uint32_t;
  static constexpr StateId kNoState = UINT32_MAX;

  // One inlined occurrence of a rule above level 0. Instance 0 is the start rule.
  struct Instance {
    ObjectName object;
    int parent = -1;
    int depth = 0;
  };

  struct Slot {
    ObjectName object;        // level-0 object
    std::size_t rule = 0;     // index into the model's level-0 rules
    std::vector<int> chain;   // instance ids from the start rule down
    StateId entry = kNoState;
    StateId exit = kNoState;
  };

  // Slot `to` may follow; `depth` is the deepest instance whose own
  // expression licenses the step (instances above it stay open).
  struct Follow {
    int to = 0;
    int depth = 0;
  };

  struct Transition {
    TokenId token;
    StateId to;
  };

  Automaton() = default;

  // Throws InvalidModel unless the model validates with non-empty level-0
  // sets. The empty model compiles to an automaton accepting nothing.
  static Automaton compile(const Model& model);

  // Throws UnknownToken for tokens outside the model's terminals.
  bool accepts(std::span<const Token> word) const;

  std::optional<TokenId> token_id(const Token& t) const;
  const std::vector<Token>& tokens() const { return tokens_; }

  const std::vector<Instance>& instances() const { return instances_; }
  const std::vector<Slot>& slots() const { return slots_; }
  const std::vector<int>& first() const { return first_; }
  const std::vector<std::vector<Follow>>& follow() const { return follow_; }
  bool is_last(int slot) const { return last_[static_cast<std::size_t>(slot)] != 0; }
  bool nullable() const { return nullable_; }

  // Sorted strings and sizes of the level-0 rule behind each slot.
  const std::vector<Word>& strings_of(int slot) const;
  std::size_t size_of(int slot) const { return strings_of(slot).size(); }

  std::size_t state_count() const { return transitions_.size(); }
  const std::vector<Transition>& transitions(StateId s) const { return transitions_[s]; }
  // Exit state reached silently from a terminal trie node, or kNoState.
  StateId finish(StateId s) const { return finish_[s]; }
  // Slot annotation of a state, -1 for the start state.
  int slot_of(StateId s) const { return slot_of_[s]; }
  bool is_exit(StateId s) const { return s != 0 && slots_[static_cast<std::size_t>(slot_of_[s])].exit == s; }
  StateId step(StateId s, TokenId t) const;

  // Slots that may be entered silently from `s` (start or exit states).
  std::vector<int> next_slots(StateId s) const;

  // Keep-depth of the step from `from` to `to`; `from` = -1 means the start.
  int keep_depth(int from, int to) const;

  // Tree for a slot path and the strings chosen at each slot.
  Derivation derivation(std::span<const int> path, std::span<const Word> leaves) const;

  const ObjectName& start_object() const { return instances_.front().object; }

 private:
  friend class AutomatonBuilder;

  std::vector<Token> tokens_;  // sorted; TokenId indexes this
  std::vector<Instance> instances_;
  std::vector<Slot> slots_;
  std::vector<int> first_;
  std::vector<std::vector<Follow>> follow_;
  std::vector<char> last_;
  bool nullable_ = false;

  std::vector<std::vector<Word>> rule_strings_;  // per level-0 rule

  std::vector<std::vector<Transition>> transitions_;
  std::vector<StateId> finish_;
  std::vector<int> slot_of_;
};

inline Automaton compile(const Model& model) { return Automaton::compile(model); }
inline bool accepts(const Automaton& automaton, std::span<const Token> word) { return automaton.accepts(word); }

// One derivation of `word`, or nullopt. Alternatives are tried in canonical
// order and leaf strings longest first. Throws UnknownToken.
std::optional<Derivation> parse(const Model& model, std::span<const Token> word);

// Same search on an already compiled automaton (no canonicalization).
std::optional<Derivation> parse_with(const Automaton& automaton, std::span<const Token> word);

}  // namespace ofs
