#pragma once

// Reference implementations used only by tests. They work directly on the
// definitions (set semantics of expressions, exhaustive span assignment)
// and share no code with the automaton or the pattern matcher.

#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ofs/model.hpp"
#include "ofs/pattern.hpp"
#include "ofs/rational.hpp"

namespace ofs::testing {

// Every word of at most max_tokens tokens derivable from the start rule.
std::set<Word> language_upto(const Model& model, std::size_t max_tokens);

// One marked slot sequence: the level-0 rule index of each leaf, with each
// occurrence in the inlined start rule told apart by `occurrence`.
struct SlotSeq {
  std::vector<int> occurrence;
  std::vector<std::size_t> rule;
  auto operator<=>(const SlotSeq&) const = default;
};

// All slot sequences with at most max_slots leaves (set semantics over
// occurrence-marked expressions).
std::set<SlotSeq> slot_sequences(const Model& model, std::size_t max_slots);

// Derivations with exactly k leaves, counted with multiplicity.
BigInt brute_count_derivations(const Model& model, std::size_t k);
// Distinct words with exactly k leaves.
std::set<Word> brute_distinct_words(const Model& model, std::size_t k);

// Exhaustive span assignment over every alternative.
std::set<Word> brute_match(const SetFormer& former, const Word& datum, const TokenClassTable& table);

struct RandomModelOptions {
  std::size_t max_classes = 4;
  std::size_t max_set_size = 5;
  std::size_t max_string_length = 3;
  std::vector<Token> alphabet{"a", "b", "c"};
};

// Valid, pruned model with 2 or 3 levels and non-empty level-0 sets.
Model random_model(std::mt19937& rng, const RandomModelOptions& options = {});

// Random expression over `names` (at least one Ref).
Regex random_regex(std::mt19937& rng, const std::vector<std::string>& names, int depth);

// All words over `alphabet` with at most max_len tokens.
std::vector<Word> all_words(const std::vector<Token>& alphabet, std::size_t max_len);

}  // namespace ofs::testing
