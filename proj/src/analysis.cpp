#include "ofs/analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include "ofs/errors.hpp"

namespace ofs {

namespace {

const std::vector<Rule>& level0(const Model& model) {
  static const std::vector<Rule> none;
  return model.levels().empty() ? none : model.levels()[0];
}

}  // namespace

ClassStats class_stats(const Model& model) {
  ClassStats stats;
  std::map<Word, std::size_t> owners;
  for (const auto& r : level0(model)) {
    for (const auto& w : r.set().strings()) ++owners[w];
  }
  for (const auto& r : level0(model)) {
    ClassStats::Row row;
    row.name = r.lhs.label;
    row.size = r.set().size();
    for (const auto& w : r.set().strings()) row.unique_count += owners[w] == 1;
    row.unique_pct = row.size ? Rational(static_cast<std::int64_t>(row.unique_count),
                                         static_cast<std::int64_t>(row.size))
                              : Rational(0);
    stats.rows.push_back(std::move(row));
  }
  stats.total_size = owners.size();
  for (const auto& [w, n] : owners) stats.total_unique += n == 1;
  stats.total_unique_pct = stats.total_size
                               ? Rational(static_cast<std::int64_t>(stats.total_unique),
                                          static_cast<std::int64_t>(stats.total_size))
                               : Rational(0);
  return stats;
}

IntersectionTable intersection_table(const Model& model) {
  IntersectionTable t;
  t.similarity = similarity_matrix(model);
  const auto& rules = level0(model);
  const std::size_t n = rules.size();
  t.intersection.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    t.names.push_back(rules[i].lhs.label);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = rules[i].set().strings();
      const auto& b = rules[j].set().strings();
      t.intersection[i][j] = static_cast<std::size_t>(
          std::count_if(a.begin(), a.end(), [&](const Word& w) { return b.count(w) != 0; }));
    }
  }
  return t;
}

BigInt count_derivations(const Automaton& a, std::size_t k) {
  if (k == 0) return a.nullable() ? 1 : 0;
  const std::size_t n = a.slots().size();
  std::vector<BigInt> ways(n, 0);
  for (int p : a.first()) ways[static_cast<std::size_t>(p)] = a.size_of(p);
  for (std::size_t step = 1; step < k; ++step) {
    std::vector<BigInt> next(n, 0);
    for (std::size_t p = 0; p < n; ++p) {
      if (ways[p] == 0) continue;
      for (const auto& f : a.follow()[p]) {
        next[static_cast<std::size_t>(f.to)] += ways[p] * a.size_of(f.to);
      }
    }
    ways = std::move(next);
  }
  BigInt total = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (a.is_last(static_cast<int>(p))) total += ways[p];
  }
  return total;
}

BigInt count_derivations(const Model& model, std::size_t k) {
  return count_derivations(Automaton::compile(model), k);
}

std::uint64_t default_state_budget() {
  const char* env = std::getenv("OFS_STATE_BUDGET");
  if (env == nullptr || *env == '\0') return 1'000'000;
  std::string text(env);
  if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw FormatError("OFS_STATE_BUDGET must be a non-negative integer, got '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    throw FormatError("OFS_STATE_BUDGET is out of range");
  }
}

namespace {

// Subset construction over (state, slots entered) pairs; each DFA state is a
// sorted item list. The reachable part is acyclic since every item bounds
// the remaining input by the unused slot budget.
class DistinctCounter {
 public:
  DistinctCounter(const Automaton& a, std::size_t k, std::uint64_t budget)
      : a_(a), k_(k), budget_(budget) {}

  BigInt run() {
    std::vector<std::uint64_t> start{item(0, 0)};
    return count(intern(close(std::move(start))));
  }

 private:
  std::uint64_t item(Automaton::StateId s, std::size_t c) const { return s * (k_ + 1) + c; }

  std::vector<std::uint64_t> close(std::vector<std::uint64_t> items) {
    std::set<std::uint64_t> seen(items.begin(), items.end());
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto s = static_cast<Automaton::StateId>(items[i] / (k_ + 1));
      const std::size_t c = items[i] % (k_ + 1);
      auto add = [&](std::uint64_t it) {
        if (seen.insert(it).second) items.push_back(it);
      };
      if (a_.finish(s) != Automaton::kNoState) add(item(a_.finish(s), c));
      if (c < k_) {
        for (int q : a_.next_slots(s)) add(item(a_.slots()[static_cast<std::size_t>(q)].entry, c + 1));
      }
    }
    return {seen.begin(), seen.end()};
  }

  bool accepting(const std::vector<std::uint64_t>& items) const {
    for (auto it : items) {
      const auto s = static_cast<Automaton::StateId>(it / (k_ + 1));
      if (it % (k_ + 1) != k_) continue;
      if (s == 0 ? a_.nullable() : a_.is_exit(s) && a_.is_last(a_.slot_of(s))) return true;
    }
    return false;
  }

  std::size_t intern(std::vector<std::uint64_t> items) {
    auto [it, inserted] = ids_.try_emplace(std::move(items), sets_.size());
    if (inserted) {
      if (sets_.size() >= budget_) throw BudgetExceeded(budget_);
      sets_.push_back(&it->first);
      memo_.emplace_back();
    }
    return it->second;
  }

  BigInt count(std::size_t id) {
    if (memo_[id]) return *memo_[id];
    const auto items = *sets_[id];
    BigInt total = accepting(items) ? 1 : 0;
    std::map<Automaton::TokenId, std::vector<std::uint64_t>> moves;
    for (auto it : items) {
      const auto s = static_cast<Automaton::StateId>(it / (k_ + 1));
      const std::size_t c = it % (k_ + 1);
      for (const auto& t : a_.transitions(s)) moves[t.token].push_back(item(t.to, c));
    }
    for (auto& [tok, next] : moves) total += count(intern(close(std::move(next))));
    memo_[id] = total;
    return total;
  }

  const Automaton& a_;
  std::size_t k_;
  std::uint64_t budget_;
  std::map<std::vector<std::uint64_t>, std::size_t> ids_;
  std::vector<const std::vector<std::uint64_t>*> sets_;
  std::vector<std::optional<BigInt>> memo_;
};

}  // namespace

BigInt count_distinct(const Model& model, std::size_t k, std::uint64_t state_budget) {
  if (model.is_empty()) return 0;
  return DistinctCounter(Automaton::compile(model), k, state_budget).run();
}

BigInt count_distinct(const Model& model, std::size_t k) {
  return count_distinct(model, k, default_state_budget());
}

void enumerate(const Model& model, std::size_t max_k, const EnumerationSink& sink) {
  if (model.is_empty()) return;
  const Automaton a = Automaton::compile(model);
  if (a.nullable()) {
    if (!sink({}, a.derivation({}, {}))) return;
  }
  const std::size_t n = a.slots().size();
  // finishes[j][p]: a last slot is reachable from p in exactly j more steps.
  std::vector<std::vector<char>> finishes(max_k, std::vector<char>(n, 0));
  for (std::size_t p = 0; p < n && max_k > 0; ++p) finishes[0][p] = a.is_last(static_cast<int>(p));
  for (std::size_t j = 1; j < max_k; ++j) {
    for (std::size_t p = 0; p < n; ++p) {
      for (const auto& f : a.follow()[p]) {
        if (finishes[j - 1][static_cast<std::size_t>(f.to)]) finishes[j][p] = 1;
      }
    }
  }

  std::vector<int> path;
  bool stop = false;
  auto emit_path = [&]() {
    std::vector<std::size_t> pick(path.size(), 0);
    std::vector<Word> leaves(path.size());
    for (;;) {
      Word word;
      for (std::size_t i = 0; i < path.size(); ++i) {
        leaves[i] = a.strings_of(path[i])[pick[i]];
        word.insert(word.end(), leaves[i].begin(), leaves[i].end());
      }
      if (!sink(word, a.derivation(path, leaves))) {
        stop = true;
        return;
      }
      std::size_t i = path.size();
      while (i > 0) {
        --i;
        if (++pick[i] < a.size_of(path[i])) break;
        pick[i] = 0;
        if (i == 0) return;
      }
    }
  };
  auto walk = [&](auto&& self, std::size_t remaining, const std::vector<int>& candidates) -> void {
    for (int q : candidates) {
      if (stop) return;
      if (!finishes[remaining - 1][static_cast<std::size_t>(q)]) continue;
      path.push_back(q);
      if (remaining == 1) {
        emit_path();
      } else {
        std::vector<int> next;
        for (const auto& f : a.follow()[static_cast<std::size_t>(q)]) next.push_back(f.to);
        self(self, remaining - 1, next);
      }
      path.pop_back();
    }
  };
  for (std::size_t k = 1; k <= max_k && !stop; ++k) walk(walk, k, a.first());
}

namespace {

std::string percent(const Rational& r) { return to_decimal_string(r * Rational(100), 2) + "%"; }

std::string with_commas(std::size_t v) {
  std::string s = std::to_string(v);
  for (int i = static_cast<int>(s.size()) - 3; i > 0; i -= 3) s.insert(static_cast<std::size_t>(i), ",");
  return s;
}

// Left-aligns column 0 and right-aligns the rest.
std::string align(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      const std::string pad(width[c] - r[c].size(), ' ');
      if (c) line += "  ";
      line += c == 0 ? r[c] + pad : pad + r[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

}  // namespace

std::string render_stats_text(const ClassStats& stats, const IntersectionTable& table, int sim_digits) {
  std::vector<std::vector<std::string>> rows{{"class", "all", "unique (%)"}};
  for (const auto& r : stats.rows) {
    rows.push_back({r.name, with_commas(r.size),
                    with_commas(r.unique_count) + " (" + percent(r.unique_pct) + ")"});
  }
  rows.push_back({"TOTAL", with_commas(stats.total_size),
                  with_commas(stats.total_unique) + " (" + percent(stats.total_unique_pct) + ")"});
  std::string out = align(rows);

  std::vector<std::vector<std::string>> pairs{{"pair", "intersection", "sim", "sim (decimal)"}};
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    for (std::size_t j = i + 1; j < table.names.size(); ++j) {
      const Rational& s = table.similarity.at(i, j);
      pairs.push_back({table.names[i] + " / " + table.names[j], with_commas(table.intersection[i][j]),
                       to_fraction_string(s), to_decimal_string(s, sim_digits)});
    }
  }
  if (pairs.size() > 1) out += "\n" + align(pairs);
  return out;
}

std::string render_stats_tsv(const ClassStats& stats, const IntersectionTable& table, int sim_digits) {
  std::string out = "class\tall\tunique\tunique_pct\n";
  for (const auto& r : stats.rows) {
    out += r.name + "\t" + std::to_string(r.size) + "\t" + std::to_string(r.unique_count) + "\t" +
           to_decimal_string(r.unique_pct * Rational(100), 2) + "\n";
  }
  out += "TOTAL\t" + std::to_string(stats.total_size) + "\t" + std::to_string(stats.total_unique) + "\t" +
         to_decimal_string(stats.total_unique_pct * Rational(100), 2) + "\n";
  out += "\nclass_a\tclass_b\tintersection\tsim\tsim_decimal\n";
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    for (std::size_t j = i + 1; j < table.names.size(); ++j) {
      const Rational& s = table.similarity.at(i, j);
      out += table.names[i] + "\t" + table.names[j] + "\t" + std::to_string(table.intersection[i][j]) +
             "\t" + to_fraction_string(s) + "\t" + to_decimal_string(s, sim_digits) + "\n";
    }
  }
  return out;
}

std::string render_counts_text(const std::vector<CountRow>& rows) {
  std::vector<std::vector<std::string>> cells{{"k", "derivations", "approx", "distinct"}};
  for (const auto& r : rows) {
    cells.push_back({std::to_string(r.k), r.derivations.str(), to_scientific3(r.derivations),
                     r.distinct ? r.distinct->str() : "-"});
  }
  return align(cells);
}

std::string render_counts_tsv(const std::vector<CountRow>& rows) {
  std::string out = "k\tderivations\tderivations_approx\tdistinct\n";
  for (const auto& r : rows) {
    out += std::to_string(r.k) + "\t" + r.derivations.str() + "\t" + to_scientific3(r.derivations) + "\t" +
           (r.distinct ? r.distinct->str() : "") + "\n";
  }
  return out;
}

}  // namespace ofs
