#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace ofs::testing {

namespace {

using Lang = std::set<Word>;

Lang concat_bounded(const Lang& a, const Lang& b, std::size_t max_tokens) {
  Lang out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x.size() + y.size() > max_tokens) continue;
      Word w = x;
      w.insert(w.end(), y.begin(), y.end());
      out.insert(std::move(w));
    }
  }
  return out;
}

Lang closure_bounded(const Lang& base, std::size_t max_tokens) {
  Lang result{Word{}};
  Lang frontier = result;
  while (!frontier.empty()) {
    Lang next;
    for (const auto& w : concat_bounded(frontier, base, max_tokens)) {
      if (result.insert(w).second) next.insert(w);
    }
    frontier = std::move(next);
  }
  return result;
}

Lang eval(const Model& model, const Regex& e, std::size_t max_tokens) {
  using K = Regex::Kind;
  switch (e.kind()) {
    case K::kEpsilon:
      return {Word{}};
    case K::kRef: {
      const Rule* r = model.find(e.label());
      if (r->lhs.level == 0) {
        Lang out;
        for (const auto& s : r->set().strings()) {
          if (s.size() <= max_tokens) out.insert(s);
        }
        return out;
      }
      return eval(model, r->regex(), max_tokens);
    }
    case K::kConcat: {
      Lang acc{Word{}};
      for (const auto& c : e.children()) acc = concat_bounded(acc, eval(model, c, max_tokens), max_tokens);
      return acc;
    }
    case K::kAlt: {
      Lang acc;
      for (const auto& c : e.children()) {
        auto l = eval(model, c, max_tokens);
        acc.insert(l.begin(), l.end());
      }
      return acc;
    }
    case K::kStar:
      return closure_bounded(eval(model, e.inner(), max_tokens), max_tokens);
    case K::kPlus: {
      auto inner = eval(model, e.inner(), max_tokens);
      return concat_bounded(inner, closure_bounded(inner, max_tokens), max_tokens);
    }
  }
  return {};
}

// Occurrence-marked evaluation: each level-0 Ref reached through inlining
// gets its own occurrence id, assigned in a fixed traversal order.
class SlotEvaluator {
 public:
  SlotEvaluator(const Model& model, std::size_t max_slots) : model_(model), max_(max_slots) {
    for (std::size_t i = 0; i < model.levels()[0].size(); ++i) index_[model.levels()[0][i].lhs.label] = i;
  }

  std::set<SlotSeq> run() { return eval(model_.start().regex()); }

 private:
  std::set<SlotSeq> cat(const std::set<SlotSeq>& a, const std::set<SlotSeq>& b) const {
    std::set<SlotSeq> out;
    for (const auto& x : a) {
      for (const auto& y : b) {
        if (x.rule.size() + y.rule.size() > max_) continue;
        SlotSeq s = x;
        s.occurrence.insert(s.occurrence.end(), y.occurrence.begin(), y.occurrence.end());
        s.rule.insert(s.rule.end(), y.rule.begin(), y.rule.end());
        out.insert(std::move(s));
      }
    }
    return out;
  }

  std::set<SlotSeq> star(const std::set<SlotSeq>& base) const {
    std::set<SlotSeq> result{SlotSeq{}};
    std::set<SlotSeq> frontier = result;
    while (!frontier.empty()) {
      std::set<SlotSeq> next;
      for (const auto& s : cat(frontier, base)) {
        if (result.insert(s).second) next.insert(s);
      }
      frontier = std::move(next);
    }
    return result;
  }

  std::set<SlotSeq> eval(const Regex& e) {
    using K = Regex::Kind;
    switch (e.kind()) {
      case K::kEpsilon:
        return {SlotSeq{}};
      case K::kRef: {
        const Rule* r = model_.find(e.label());
        if (r->lhs.level == 0) return {SlotSeq{{next_++}, {index_.at(e.label())}}};
        return eval(r->regex());
      }
      case K::kConcat: {
        std::set<SlotSeq> acc{SlotSeq{}};
        for (const auto& c : e.children()) acc = cat(acc, eval(c));
        return acc;
      }
      case K::kAlt: {
        std::set<SlotSeq> acc;
        for (const auto& c : e.children()) {
          auto l = eval(c);
          acc.insert(l.begin(), l.end());
        }
        return acc;
      }
      case K::kStar:
        return star(eval(e.inner()));
      case K::kPlus: {
        auto inner = eval(e.inner());
        return cat(inner, star(inner));
      }
    }
    return {};
  }

  const Model& model_;
  std::size_t max_;
  std::map<std::string, std::size_t> index_;
  int next_ = 0;
};

}  // namespace

std::set<Word> language_upto(const Model& model, std::size_t max_tokens) {
  if (model.is_empty()) return {};
  return eval(model, model.start().regex(), max_tokens);
}

std::set<SlotSeq> slot_sequences(const Model& model, std::size_t max_slots) {
  if (model.is_empty()) return {};
  return SlotEvaluator(model, max_slots).run();
}

BigInt brute_count_derivations(const Model& model, std::size_t k) {
  BigInt total = 0;
  for (const auto& s : slot_sequences(model, k)) {
    if (s.rule.size() != k) continue;
    BigInt product = 1;
    for (auto r : s.rule) product *= model.levels()[0][r].set().size();
    total += product;
  }
  return total;
}

std::set<Word> brute_distinct_words(const Model& model, std::size_t k) {
  std::set<Word> out;
  for (const auto& s : slot_sequences(model, k)) {
    if (s.rule.size() != k) continue;
    std::set<Word> acc{Word{}};
    for (auto r : s.rule) {
      std::set<Word> next;
      for (const auto& prefix : acc) {
        for (const auto& piece : model.levels()[0][r].set().strings()) {
          Word w = prefix;
          w.insert(w.end(), piece.begin(), piece.end());
          next.insert(std::move(w));
        }
      }
      acc = std::move(next);
    }
    out.insert(acc.begin(), acc.end());
  }
  return out;
}

std::set<Word> brute_match(const SetFormer& former, const Word& datum, const TokenClassTable& table) {
  std::set<Word> out;
  for (const auto& alt : former.alternatives) {
    const auto& els = alt.elements;
    // Try every split of the datum into els.size() consecutive spans.
    std::vector<std::size_t> cut(els.size() + 1, 0);
    cut.back() = datum.size();
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
      if (i == els.size()) {
        for (std::size_t e = 0; e < els.size(); ++e) {
          const auto& el = els[e];
          const std::size_t len = cut[e + 1] - cut[e];
          if (el.kind == PatternElement::Kind::kLiteral) {
            if (len != 1 || datum[cut[e]] != el.literal) return;
            continue;
          }
          if (el.mult == Multiplicity::kOne && len != 1) return;
          if (el.mult == Multiplicity::kPlus && len == 0) return;
          const auto& members = table.members(el.class_name);
          for (std::size_t p = cut[e]; p < cut[e + 1]; ++p) {
            if (!members.count(datum[p])) return;
          }
        }
        for (std::size_t e = 0; e < els.size(); ++e) {
          if (els[e].capture) {
            out.insert(Word(datum.begin() + static_cast<std::ptrdiff_t>(cut[e]),
                            datum.begin() + static_cast<std::ptrdiff_t>(cut[e + 1])));
          }
        }
        return;
      }
      if (i + 1 == els.size()) {
        assign(i + 1);
        return;
      }
      for (std::size_t end = cut[i]; end <= datum.size(); ++end) {
        cut[i + 1] = end;
        assign(i + 1);
      }
    };
    assign(0);
  }
  return out;
}

Regex random_regex(std::mt19937& rng, const std::vector<std::string>& names, int depth) {
  std::uniform_int_distribution<int> pick_name(0, static_cast<int>(names.size()) - 1);
  if (depth <= 0) return Regex::ref(names[static_cast<std::size_t>(pick_name(rng))]);
  std::uniform_int_distribution<int> kind(0, 9);
  switch (kind(rng)) {
    case 0:
    case 1:
    case 2:
      return Regex::ref(names[static_cast<std::size_t>(pick_name(rng))]);
    case 3:
    case 4:
    case 5: {
      std::uniform_int_distribution<int> n(2, 3);
      std::vector<Regex> kids;
      for (int i = n(rng); i > 0; --i) kids.push_back(random_regex(rng, names, depth - 1));
      return Regex::concat(std::move(kids));
    }
    case 6:
    case 7: {
      std::uniform_int_distribution<int> n(2, 3);
      std::vector<Regex> kids;
      for (int i = n(rng); i > 0; --i) {
        kids.push_back(rng() % 6 == 0 ? Regex::epsilon() : random_regex(rng, names, depth - 1));
      }
      kids.push_back(random_regex(rng, names, 0));
      return Regex::alt(std::move(kids));
    }
    case 8:
      return Regex::star(random_regex(rng, names, depth - 1));
    default:
      return Regex::plus(random_regex(rng, names, depth - 1));
  }
}

Model random_model(std::mt19937& rng, const RandomModelOptions& opt) {
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t classes = uniform(1, opt.max_classes);
  std::vector<Rule> level0;
  std::set<Token> terminals(opt.alphabet.begin(), opt.alphabet.end());
  std::vector<std::string> names0;
  for (std::size_t c = 0; c < classes; ++c) {
    ObjectSet set;
    const std::size_t target = uniform(1, opt.max_set_size);
    for (int guard = 0; set.size() < target && guard < 100; ++guard) {
      Word w;
      // Short strings are likelier so sets overlap and similarities vary.
      const std::size_t len = uniform(0, 5) == 0 ? 0 : uniform(1, opt.max_string_length);
      for (std::size_t i = 0; i < len; ++i) {
        w.push_back(opt.alphabet[uniform(0, opt.alphabet.size() - 1)]);
      }
      set.insert(std::move(w));
    }
    std::string name = "C" + std::to_string(c);
    names0.push_back(name);
    level0.push_back(Rule{ObjectName{0, name}, set});
  }

  std::vector<std::vector<Rule>> levels{level0};
  std::vector<std::string> lower = names0;
  if (uniform(0, 1) == 1) {
    std::vector<Rule> level1;
    const std::size_t n = uniform(1, 2);
    for (std::size_t i = 0; i < n; ++i) {
      std::string name = "M" + std::to_string(i);
      level1.push_back(Rule{ObjectName{1, name}, random_regex(rng, names0, 2)});
    }
    for (const auto& r : level1) lower.push_back(r.lhs.label);
    levels.push_back(std::move(level1));
  }
  const int top = static_cast<int>(levels.size());
  levels.push_back({Rule{ObjectName{top, "Top"}, random_regex(rng, lower, 3)}});
  return Model("random", std::move(terminals), std::move(levels));
}

std::vector<Word> all_words(const std::vector<Token>& alphabet, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (const auto& t : alphabet) {
        Word x = w;
        x.push_back(t);
        next.push_back(std::move(x));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace ofs::testing
