#include "ofs/instantiate.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

#include "ofs/errors.hpp"

namespace ofs {

ValidationReport validate_prototype(const PrototypeModel& proto) {
  ValidationReport report = validate_model(proto.skeleton);
  const auto& levels = proto.skeleton.levels();
  const std::size_t n0 = levels.empty() ? 0 : levels[0].size();
  if (proto.formers.size() != n0) {
    report.push_back({"former-count", proto.skeleton.name(),
                      std::to_string(n0) + " level-0 rules but " +
                          std::to_string(proto.formers.size()) + " set formers"});
    return report;
  }
  for (std::size_t i = 0; i < n0; ++i) {
    const auto& label = levels[0][i].lhs.label;
    const auto& former = proto.formers[i];
    if (former.alternatives.empty()) {
      report.push_back({"former", label, "set former has no alternatives"});
    }
    std::set<std::string> classes;
    for (const auto& alt : former.alternatives) {
      std::size_t captures = 0;
      for (const auto& el : alt.elements) {
        if (el.capture) {
          ++captures;
          classes.insert(el.class_name);
        }
      }
      if (captures != 1) {
        report.push_back({"former", label,
                          "alternative has " + std::to_string(captures) + " captures"});
      }
    }
    if (classes.size() > 1) {
      report.push_back({"former", label, "alternatives capture over different classes"});
    }
  }
  return report;
}

Model instantiate(const PrototypeModel& proto, const std::vector<Word>& corpus,
                  const TokenClassTable& table) {
  auto report = validate_prototype(proto);
  if (!report.empty()) throw InvalidModel("invalid prototype: " + report.front().message);
  if (corpus.empty()) throw EmptyCorpus();

  std::set<Token> terminals;
  for (const auto& datum : corpus) {
    for (const auto& t : datum) {
      if (!table.knows(t)) throw UnknownToken(t);
      if (!is_reserved(t)) terminals.insert(t);
    }
  }
  // Resolve classes up front so a bad prototype fails even on data it never matches.
  for (const auto& former : proto.formers) {
    for (const auto& alt : former.alternatives) {
      for (const auto& el : alt.elements) {
        if (el.kind == PatternElement::Kind::kVar) table.members(el.class_name);
      }
    }
  }

  auto levels = proto.skeleton.levels();
  for (std::size_t i = 0; i < levels[0].size(); ++i) {
    ObjectSet set;
    for (const auto& datum : corpus) {
      for (auto& w : match_captures(proto.formers[i], datum, table)) {
        // A capture spanning a marker is not a syllable.
        if (std::none_of(w.begin(), w.end(), [](const Token& t) { return is_reserved(t); })) {
          set.insert(std::move(w));
        }
      }
    }
    levels[0][i].rhs = std::move(set);
  }
  return prune(Model(proto.skeleton.name(), std::move(terminals), std::move(levels)));
}

namespace {

// nullopt when the expression can derive nothing.
std::optional<Regex> prune_expr(const Regex& e, const std::set<std::string>& dead) {
  using K = Regex::Kind;
  switch (e.kind()) {
    case K::kEpsilon:
      return e;
    case K::kRef:
      if (dead.count(e.label())) return std::nullopt;
      return e;
    case K::kConcat: {
      std::vector<Regex> kids;
      for (const auto& c : e.children()) {
        auto p = prune_expr(c, dead);
        if (!p) return std::nullopt;
        if (!p->is_epsilon()) kids.push_back(std::move(*p));
      }
      if (kids.empty()) return Regex::epsilon();
      if (kids.size() == 1) return kids.front();
      return Regex::concat(std::move(kids));
    }
    case K::kAlt: {
      std::vector<Regex> kids;
      for (const auto& c : e.children()) {
        if (auto p = prune_expr(c, dead)) kids.push_back(std::move(*p));
      }
      if (kids.empty()) return std::nullopt;
      if (kids.size() == 1) return kids.front();
      return Regex::alt(std::move(kids));
    }
    case K::kStar: {
      auto p = prune_expr(e.inner(), dead);
      return p ? Regex::star(std::move(*p)) : Regex::epsilon();
    }
    case K::kPlus: {
      auto p = prune_expr(e.inner(), dead);
      if (!p) return std::nullopt;
      return Regex::plus(std::move(*p));
    }
  }
  return std::nullopt;
}

}  // namespace

Model prune(const Model& model) {
  if (model.is_empty()) return model;
  auto levels = model.levels();
  std::set<std::string> dead;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      std::vector<Rule> kept;
      for (auto& rule : levels[i]) {
        if (!rule.has_regex()) {
          if (rule.set().empty()) {
            dead.insert(rule.lhs.label);
            changed = true;
            continue;
          }
        } else {
          auto p = prune_expr(rule.regex(), dead);
          if (!p) {
            dead.insert(rule.lhs.label);
            changed = true;
            continue;
          }
          if (!(*p == rule.regex())) {
            rule.rhs = std::move(*p);
            changed = true;
          }
        }
        kept.push_back(std::move(rule));
      }
      levels[i] = std::move(kept);
    }
  }
  if (levels.back().empty()) return Model::empty_model(model.name(), model.level_count());
  return Model(model.name(), model.terminals(), std::move(levels));
}

}  // namespace ofs
