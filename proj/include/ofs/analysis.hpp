#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ofs/automaton.hpp"
#include "ofs/generalise.hpp"
#include "ofs/model.hpp"
#include "ofs/rational.hpp"

namespace ofs {

struct ClassStats {
  struct Row {
    std::string name;
    std::size_t size = 0;
    std::size_t unique_count = 0;  // strings in no other class
    Rational unique_pct;           // unique_count / size, a fraction in [0, 1]
  };
  std::vector<Row> rows;
  std::size_t total_size = 0;    // size of the union of all classes
  std::size_t total_unique = 0;  // strings found in exactly one class
  Rational total_unique_pct;
};

ClassStats class_stats(const Model& model);

struct IntersectionTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> intersection;  // symmetric; diagonal = size
  SimilarityMatrix similarity;
};

IntersectionTable intersection_table(const Model& model);

// Derivations with exactly k level-0 leaves, each leaf weighted by its set
// size. Counts paths of the position automaton, so an ambiguous rhs counts
// every reading.
BigInt count_derivations(const Model& model, std::size_t k);
BigInt count_derivations(const Automaton& automaton, std::size_t k);

// Distinct token strings derivable with exactly k leaves. Determinizes the
// slot-counting automaton; throws BudgetExceeded past `state_budget` states.
BigInt count_distinct(const Model& model, std::size_t k, std::uint64_t state_budget);
BigInt count_distinct(const Model& model, std::size_t k);

// Budget from OFS_STATE_BUDGET, default 1,000,000. Throws FormatError on a
// malformed value.
std::uint64_t default_state_budget();

// Calls `sink` for every derivation with 1..max_k leaves (plus the empty
// derivation when the start rule is nullable), grouped by leaf count. Within
// one count, slot paths come in lexicographic order of slot positions, and
// for each path the leaf strings vary lexicographically, last slot fastest.
// `sink` returns false to stop early.
using EnumerationSink = std::function<bool(const Word& word, const Derivation& derivation)>;
void enumerate(const Model& model, std::size_t max_k, const EnumerationSink& sink);

struct CountRow {
  std::size_t k = 0;
  BigInt derivations;
  std::optional<BigInt> distinct;
};

// Aligned text: one block per table with "all" and "unique (%)" columns.
std::string render_stats_text(const ClassStats& stats, const IntersectionTable& table, int sim_digits);
std::string render_stats_tsv(const ClassStats& stats, const IntersectionTable& table, int sim_digits);
std::string render_counts_text(const std::vector<CountRow>& rows);
std::string render_counts_tsv(const std::vector<CountRow>& rows);

}  // namespace ofs
