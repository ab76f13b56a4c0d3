#include "ofs/model.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace ofs {

Model Model::empty_model(std::string name, std::size_t level_count) {
  return Model(std::move(name), {}, std::vector<std::vector<Rule>>(level_count));
}

bool Model::is_empty() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const auto& l) { return l.empty(); });
}

const Rule* Model::find(const std::string& label) const {
  for (const auto& level : levels_) {
    for (const auto& rule : level) {
      if (rule.lhs.label == label) return &rule;
    }
  }
  return nullptr;
}

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

ValidationReport validate_model(const Model& model) {
  ValidationReport report;
  auto add = [&](std::string kind, std::string subject, std::string message) {
    report.push_back({std::move(kind), std::move(subject), std::move(message)});
  };

  if (model.level_count() == 0) {
    add("no-levels", model.name(), "model has no levels");
    return report;
  }
  if (model.is_empty()) {
    add("empty-model", model.name(), "model has no rules");
    return report;
  }
  if (model.levels().back().size() != 1) {
    add("top-level", model.name(),
        "top level must hold exactly one rule, found " + std::to_string(model.levels().back().size()));
  }

  for (const auto& t : model.terminals()) {
    if (!is_valid_token(t)) add("invalid-token", t, "terminal is empty or contains whitespace");
    if (is_reserved(t)) add("reserved-token", t, "reserved marker declared as a terminal");
  }

  // label -> level of first definition
  std::map<std::string, int> defined;
  std::map<std::string, int> count;
  for (std::size_t i = 0; i < model.levels().size(); ++i) {
    for (const auto& rule : model.levels()[i]) {
      if (++count[rule.lhs.label] == 1) defined[rule.lhs.label] = static_cast<int>(i);
    }
  }
  for (const auto& [label, n] : count) {
    if (n > 1) add("duplicate-lhs", label, label + " is defined by " + std::to_string(n) + " rules");
  }

  for (std::size_t i = 0; i < model.levels().size(); ++i) {
    const int level = static_cast<int>(i);
    for (const auto& rule : model.levels()[i]) {
      const auto& label = rule.lhs.label;
      if (!is_identifier(label)) add("invalid-name", label, "object name is not an identifier");
      if (rule.lhs.level != level) {
        add("level-mismatch", label,
            "rule stored at level " + std::to_string(level) + " names level " +
                std::to_string(rule.lhs.level));
      }
      if (level == 0) {
        if (rule.has_regex()) {
          add("rhs-kind", label, "level-0 rule must have a string set");
          continue;
        }
        for (const auto& s : rule.set().strings()) {
          for (const auto& t : s) {
            if (is_reserved(t)) {
              add("reserved-token", label, "string '" + join_spaced(s) + "' contains marker " + t);
            } else if (!model.terminals().count(t)) {
              add("unknown-terminal", label, "token '" + t + "' is not a declared terminal");
            }
          }
        }
        continue;
      }
      if (!rule.has_regex()) {
        add("rhs-kind", label, "rule above level 0 must have a regular expression");
        continue;
      }
      auto refs = rule.regex().refs();
      std::sort(refs.begin(), refs.end());
      refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
      for (const auto& r : refs) {
        auto it = defined.find(r);
        if (it == defined.end()) {
          add("undefined-ref", label, label + " references undefined object " + r);
        } else if (it->second >= level) {
          add("level-ordering", label,
              label + " (level " + std::to_string(level) + ") references " + r + " (level " +
                  std::to_string(it->second) + ")");
        }
      }
    }
  }
  return report;
}

Model canonicalize_model(const Model& model) {
  auto levels = model.levels();
  for (std::size_t i = 1; i < levels.size(); ++i) {
    for (auto& rule : levels[i]) {
      if (rule.has_regex()) rule.rhs = canonicalize(rule.regex());
    }
  }
  return Model(model.name(), model.terminals(), std::move(levels));
}

Word Derivation::yield() const {
  if (is_leaf()) return leaf;
  Word out;
  for (const auto& c : children) {
    Word w = c.yield();
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

std::size_t Derivation::depth() const {
  std::size_t d = 0;
  for (const auto& c : children) d = std::max(d, c.depth());
  return d + 1;
}

std::string to_string(const Derivation& d) {
  std::string out = "(" + d.object.label;
  if (d.is_leaf()) {
    out += " " + join_compact(d.leaf);
  } else {
    for (const auto& c : d.children) out += " " + to_string(c);
  }
  return out + ")";
}

}  // namespace ofs
