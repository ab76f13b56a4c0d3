#include "ofs/automaton.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "ofs/errors.hpp"

namespace ofs {

class AutomatonBuilder {
 public:
  explicit AutomatonBuilder(const Model& model) : model_(model) {
    for (std::size_t i = 0; i < model.levels()[0].size(); ++i) {
      level0_index_[model.levels()[0][i].lhs.label] = i;
    }
  }

  Automaton build() {
    Automaton a;
    collect_tokens(a);
    a.rule_strings_.reserve(model_.levels()[0].size());
    for (const auto& rule : model_.levels()[0]) {
      a.rule_strings_.emplace_back(rule.set().strings().begin(), rule.set().strings().end());
    }

    const Rule& start = model_.start();
    a.instances_.push_back({start.lhs, -1, 0});
    Glu g = visit(a, start.regex(), 0);
    a.first_ = g.first;
    a.nullable_ = g.nullable;
    a.last_.assign(a.slots_.size(), 0);
    for (int p : g.last) a.last_[static_cast<std::size_t>(p)] = 1;
    a.follow_.assign(a.slots_.size(), {});
    for (const auto& [edge, depth] : follow_) {
      a.follow_[static_cast<std::size_t>(edge.first)].push_back({edge.second, depth});
    }
    build_states(a);
    return a;
  }

 private:
  struct Glu {
    bool nullable = false;
    std::vector<int> first;
    std::vector<int> last;
  };

  static std::vector<int> merge(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  void link(const std::vector<int>& from, const std::vector<int>& to, int depth) {
    for (int p : from) {
      for (int q : to) {
        auto [it, inserted] = follow_.try_emplace({p, q}, depth);
        if (!inserted) it->second = std::max(it->second, depth);
      }
    }
  }

  std::vector<int> chain_of(const Automaton& a, int inst) const {
    std::vector<int> chain;
    for (int i = inst; i >= 0; i = a.instances_[static_cast<std::size_t>(i)].parent) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    return chain;
  }

  Glu visit(Automaton& a, const Regex& e, int inst) {
    using K = Regex::Kind;
    const int depth = a.instances_[static_cast<std::size_t>(inst)].depth;
    switch (e.kind()) {
      case K::kEpsilon:
        return {true, {}, {}};
      case K::kRef: {
        const Rule* rule = model_.find(e.label());
        if (rule->lhs.level == 0) {
          int p = static_cast<int>(a.slots_.size());
          Automaton::Slot slot;
          slot.object = rule->lhs;
          slot.rule = level0_index_.at(rule->lhs.label);
          slot.chain = chain_of(a, inst);
          a.slots_.push_back(std::move(slot));
          return {false, {p}, {p}};
        }
        int child = static_cast<int>(a.instances_.size());
        a.instances_.push_back({rule->lhs, inst, depth + 1});
        return visit(a, rule->regex(), child);
      }
      case K::kConcat: {
        Glu acc = visit(a, e.children().front(), inst);
        for (std::size_t i = 1; i < e.children().size(); ++i) {
          Glu g = visit(a, e.children()[i], inst);
          link(acc.last, g.first, depth);
          Glu next;
          next.nullable = acc.nullable && g.nullable;
          next.first = acc.nullable ? merge(acc.first, g.first) : acc.first;
          next.last = g.nullable ? merge(acc.last, g.last) : g.last;
          acc = std::move(next);
        }
        return acc;
      }
      case K::kAlt: {
        Glu acc;
        for (const auto& c : e.children()) {
          Glu g = visit(a, c, inst);
          acc.nullable = acc.nullable || g.nullable;
          acc.first = merge(acc.first, g.first);
          acc.last = merge(acc.last, g.last);
        }
        return acc;
      }
      case K::kStar:
      case K::kPlus: {
        Glu g = visit(a, e.inner(), inst);
        link(g.last, g.first, depth);
        if (e.kind() == K::kStar) g.nullable = true;
        return g;
      }
    }
    return {};
  }

  void collect_tokens(Automaton& a) const {
    std::set<Token> all = model_.terminals();
    for (const auto& rule : model_.levels()[0]) {
      for (const auto& s : rule.set().strings()) all.insert(s.begin(), s.end());
    }
    a.tokens_.assign(all.begin(), all.end());
  }

  Automaton::StateId new_state(Automaton& a, int slot) const {
    a.transitions_.emplace_back();
    a.finish_.push_back(Automaton::kNoState);
    a.slot_of_.push_back(slot);
    return static_cast<Automaton::StateId>(a.transitions_.size() - 1);
  }

  void build_states(Automaton& a) const {
    new_state(a, -1);  // start
    for (std::size_t p = 0; p < a.slots_.size(); ++p) {
      auto& slot = a.slots_[p];
      const int sp = static_cast<int>(p);
      slot.entry = new_state(a, sp);
      slot.exit = new_state(a, sp);
      for (const auto& w : a.rule_strings_[slot.rule]) {
        Automaton::StateId s = slot.entry;
        for (const auto& tok : w) {
          Automaton::TokenId t = *a.token_id(tok);
          Automaton::StateId next = a.step(s, t);
          if (next == Automaton::kNoState) {
            next = new_state(a, sp);
            auto& edges = a.transitions_[s];
            auto pos = std::lower_bound(edges.begin(), edges.end(), t,
                                        [](const Automaton::Transition& e, Automaton::TokenId v) { return e.token < v; });
            edges.insert(pos, {t, next});
          }
          s = next;
        }
        a.finish_[s] = slot.exit;
      }
    }
  }

  const Model& model_;
  std::map<std::string, std::size_t> level0_index_;
  std::map<std::pair<int, int>, int> follow_;
};

Automaton Automaton::compile(const Model& model) {
  if (model.is_empty()) {
    Automaton a;
    a.transitions_.emplace_back();
    a.finish_.push_back(kNoState);
    a.slot_of_.push_back(-1);
    a.tokens_.assign(model.terminals().begin(), model.terminals().end());
    return a;
  }
  auto report = validate_model(model);
  if (!report.empty()) {
    throw InvalidModel("cannot compile invalid model: " + report.front().message);
  }
  for (const auto& rule : model.levels()[0]) {
    if (rule.set().empty()) throw InvalidModel("level-0 rule " + rule.lhs.label + " has an empty set");
  }
  return AutomatonBuilder(model).build();
}

std::optional<Automaton::TokenId> Automaton::token_id(const Token& t) const {
  auto it = std::lower_bound(tokens_.begin(), tokens_.end(), t);
  if (it == tokens_.end() || *it != t) return std::nullopt;
  return static_cast<TokenId>(it - tokens_.begin());
}

const std::vector<Word>& Automaton::strings_of(int slot) const {
  return rule_strings_[slots_[static_cast<std::size_t>(slot)].rule];
}

Automaton::StateId Automaton::step(StateId s, TokenId t) const {
  const auto& edges = transitions_[s];
  auto it = std::lower_bound(edges.begin(), edges.end(), t,
                             [](const Transition& e, TokenId v) { return e.token < v; });
  return it != edges.end() && it->token == t ? it->to : kNoState;
}

std::vector<int> Automaton::next_slots(StateId s) const {
  if (s == 0) return first_;
  if (!is_exit(s)) return {};
  std::vector<int> out;
  for (const auto& f : follow_[static_cast<std::size_t>(slot_of_[s])]) out.push_back(f.to);
  return out;
}

int Automaton::keep_depth(int from, int to) const {
  if (from < 0) return 0;
  for (const auto& f : follow_[static_cast<std::size_t>(from)]) {
    if (f.to == to) return f.depth;
  }
  throw InternalError("no step from slot " + std::to_string(from) + " to " + std::to_string(to));
}

namespace {

std::vector<Automaton::TokenId> to_ids(const Automaton& a, std::span<const Token> word) {
  std::vector<Automaton::TokenId> ids;
  ids.reserve(word.size());
  for (const auto& t : word) {
    auto id = a.token_id(t);
    if (!id) throw UnknownToken(t);
    ids.push_back(*id);
  }
  return ids;
}

// Adds the silent closure of `seed` to `set`; returns whether it accepts.
bool close(const Automaton& a, std::vector<Automaton::StateId>& set, std::vector<char>& member) {
  bool accepting = false;
  for (std::size_t i = 0; i < set.size(); ++i) {
    Automaton::StateId s = set[i];
    auto add = [&](Automaton::StateId t) {
      if (!member[t]) {
        member[t] = 1;
        set.push_back(t);
      }
    };
    if (a.finish(s) != Automaton::kNoState) add(a.finish(s));
    if (s == 0) {
      accepting = accepting || a.nullable();
    } else if (a.is_exit(s)) {
      accepting = accepting || a.is_last(a.slot_of(s));
    }
    for (int q : a.next_slots(s)) add(a.slots()[static_cast<std::size_t>(q)].entry);
  }
  return accepting;
}

}  // namespace

bool Automaton::accepts(std::span<const Token> word) const {
  auto ids = to_ids(*this, word);
  std::vector<char> member(state_count(), 0);
  std::vector<StateId> current{0};
  member[0] = 1;
  bool accepting = close(*this, current, member);
  for (TokenId t : ids) {
    std::vector<StateId> next;
    std::fill(member.begin(), member.end(), 0);
    for (StateId s : current) {
      StateId n = step(s, t);
      if (n != kNoState && !member[n]) {
        member[n] = 1;
        next.push_back(n);
      }
    }
    if (next.empty()) return false;
    accepting = close(*this, next, member);
    current = std::move(next);
  }
  return accepting;
}

Derivation Automaton::derivation(std::span<const int> path, std::span<const Word> leaves) const {
  Derivation root{start_object(), {}, {}};
  std::vector<Derivation*> stack{&root};
  std::vector<int> open{0};
  int prev = -1;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const int p = path[i];
    const auto& slot = slots_[static_cast<std::size_t>(p)];
    const std::size_t keep = static_cast<std::size_t>(keep_depth(prev, p)) + 1;
    stack.resize(std::min(stack.size(), keep));
    open.resize(stack.size());
    for (std::size_t d = 0; d < open.size(); ++d) {
      if (slot.chain[d] != open[d]) throw InternalError("derivation provenance mismatch");
    }
    for (std::size_t d = open.size(); d < slot.chain.size(); ++d) {
      const auto& inst = instances_[static_cast<std::size_t>(slot.chain[d])];
      stack.back()->children.push_back(Derivation{inst.object, {}, {}});
      stack.push_back(&stack.back()->children.back());
      open.push_back(slot.chain[d]);
    }
    stack.back()->children.push_back(Derivation{slot.object, {}, leaves[i]});
    prev = p;
  }
  return root;
}

std::optional<Derivation> parse_with(const Automaton& a, std::span<const Token> word) {
  auto ids = to_ids(a, word);
  const std::size_t n = ids.size();
  const std::size_t width = a.slots().size() + 1;
  std::vector<char> visited((n + 1) * width, 0);
  std::vector<int> path;
  std::vector<std::pair<std::size_t, std::size_t>> spans;

  // Depth-first over (offset, last slot); each cell is expanded once.
  auto search = [&](auto&& self, std::size_t offset, int slot) -> bool {
    char& seen = visited[offset * width + static_cast<std::size_t>(slot + 1)];
    if (seen) return false;
    seen = 1;
    if (offset == n && (slot < 0 ? a.nullable() : a.is_last(slot))) return true;
    std::vector<int> candidates;
    if (slot < 0) {
      candidates = a.first();
    } else {
      for (const auto& f : a.follow()[static_cast<std::size_t>(slot)]) candidates.push_back(f.to);
    }
    for (int q : candidates) {
      const auto& s = a.slots()[static_cast<std::size_t>(q)];
      std::vector<std::size_t> ends;
      Automaton::StateId st = s.entry;
      std::size_t pos = offset;
      for (;;) {
        if (a.finish(st) != Automaton::kNoState) ends.push_back(pos);
        if (pos == n) break;
        st = a.step(st, ids[pos]);
        if (st == Automaton::kNoState) break;
        ++pos;
      }
      for (auto it = ends.rbegin(); it != ends.rend(); ++it) {
        path.push_back(q);
        spans.emplace_back(offset, *it);
        if (self(self, *it, q)) return true;
        path.pop_back();
        spans.pop_back();
      }
    }
    return false;
  };

  if (!search(search, 0, -1)) return std::nullopt;
  std::vector<Word> leaves;
  for (auto [b, e] : spans) {
    leaves.emplace_back(word.begin() + static_cast<std::ptrdiff_t>(b),
                        word.begin() + static_cast<std::ptrdiff_t>(e));
  }
  return a.derivation(path, leaves);
}

std::optional<Derivation> parse(const Model& model, std::span<const Token> word) {
  return parse_with(Automaton::compile(canonicalize_model(model)), word);
}

}  // namespace ofs
