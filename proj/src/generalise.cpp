#include "ofs/generalise.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "ofs/errors.hpp"

namespace ofs {

Rational similarity(const ObjectSet& a, const ObjectSet& b) {
  if (a.empty() && b.empty()) throw UndefinedSimilarity();
  std::int64_t common = 0;
  auto ia = a.strings().begin();
  auto ib = b.strings().begin();
  while (ia != a.strings().end() && ib != b.strings().end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const auto total = static_cast<std::int64_t>(a.size() + b.size()) - common;
  return Rational(common, total);
}

SimilarityMatrix similarity_matrix(const Model& model) {
  SimilarityMatrix m;
  if (model.is_empty()) return m;
  const auto& rules = model.levels()[0];
  for (const auto& r : rules) {
    if (r.has_regex()) throw InvalidModel("level-0 rule " + r.lhs.label + " has no string set");
    if (r.set().empty()) throw UnprunedModel(r.lhs.label);
    m.names.push_back(r.lhs);
  }
  const std::size_t n = rules.size();
  m.values.assign(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m.values[i][j] = m.values[j][i] = similarity(rules[i].set(), rules[j].set());
    }
  }
  return m;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // Smaller index becomes the representative.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

Partition blocks_of(DisjointSets& ds, std::size_t n) {
  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t i = 0; i < n; ++i) by_root[ds.find(i)].push_back(i);
  Partition p;
  for (auto& [root, block] : by_root) p.push_back(std::move(block));
  std::sort(p.begin(), p.end());
  return p;
}

void check_tau(const Rational& tau) {
  if (tau <= Rational(0) || tau > Rational(1)) {
    throw FormatError("tau must lie in (0, 1], got " + to_fraction_string(tau));
  }
}

std::string join_labels(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += '_';
    out += l;
  }
  return out;
}

}  // namespace

Partition cluster_partition(const SimilarityMatrix& matrix, const Rational& tau) {
  check_tau(tau);
  const std::size_t n = matrix.size();
  DisjointSets ds(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix.at(i, j) >= tau) ds.unite(i, j);
    }
  }
  return blocks_of(ds, n);
}

std::string to_string(const Partition& partition, const SimilarityMatrix& matrix) {
  std::string out;
  for (const auto& block : partition) {
    if (!out.empty()) out += ' ';
    out += '{';
    std::vector<std::string> labels;
    for (auto i : block) labels.push_back(matrix.names[i].label);
    std::sort(labels.begin(), labels.end());
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (k) out += ',';
      out += labels[k];
    }
    out += '}';
  }
  return out;
}

Generalisation generalise(const Model& model, const Rational& tau) {
  auto report = validate_model(model);
  if (!report.empty()) throw InvalidModel("cannot generalise invalid model: " + report.front().message);
  const SimilarityMatrix matrix = similarity_matrix(model);
  const Partition partition = cluster_partition(matrix, tau);

  auto levels = model.levels();
  std::vector<MergeRecord> merges;

  std::set<std::string> taken;
  for (const auto& level : levels) {
    for (const auto& r : level) taken.insert(r.lhs.label);
  }

  // Merges the given rules of one level; returns old label -> new label.
  auto merge_groups = [&](int level, const std::vector<std::vector<std::size_t>>& groups,
                          auto&& combine) {
    std::map<std::string, std::string> renamed;
    auto& rules = levels[static_cast<std::size_t>(level)];
    std::vector<char> drop(rules.size(), 0);
    for (const auto& group : groups) {
      if (group.size() < 2) continue;
      std::vector<std::string> labels;
      std::set<ObjectName> members;
      for (auto i : group) {
        labels.push_back(rules[i].lhs.label);
        members.insert(rules[i].lhs);
      }
      for (const auto& l : labels) taken.erase(l);
      std::string name = join_labels(labels);
      while (taken.count(name)) name += "_" + std::to_string(level);
      taken.insert(name);

      Rule merged{ObjectName{level, name}, combine(group)};
      rules[group.front()] = std::move(merged);
      for (std::size_t k = 1; k < group.size(); ++k) drop[group[k]] = 1;
      for (const auto& l : labels) renamed[l] = name;
      merges.push_back({ObjectName{level, name}, std::move(members), tau});
    }
    std::vector<Rule> kept;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (!drop[i]) kept.push_back(std::move(rules[i]));
    }
    rules = std::move(kept);
    if (renamed.empty()) return;
    auto fn = [&](const std::string& l) {
      auto it = renamed.find(l);
      return it == renamed.end() ? l : it->second;
    };
    for (std::size_t i = static_cast<std::size_t>(level) + 1; i < levels.size(); ++i) {
      for (auto& r : levels[i]) r.rhs = r.regex().rename(fn);
    }
  };

  // Partition indices coincide with level-0 rule positions.
  merge_groups(0, partition, [&](const std::vector<std::size_t>& group) {
    ObjectSet set;
    for (auto i : group) set.merge(levels[0][i].set());
    return std::variant<Regex, ObjectSet>(std::move(set));
  });

  // The top level holds a single rule, so percolation stops below it.
  for (std::size_t level = 1; level + 1 < levels.size(); ++level) {
    const auto& rules = levels[level];
    std::map<Regex, std::vector<std::size_t>> by_rhs;
    for (std::size_t i = 0; i < rules.size(); ++i) by_rhs[canonicalize(rules[i].regex())].push_back(i);
    std::vector<std::vector<std::size_t>> groups;
    for (auto& [rhs, idx] : by_rhs) groups.push_back(idx);
    std::sort(groups.begin(), groups.end());
    merge_groups(static_cast<int>(level), groups, [&](const std::vector<std::size_t>& group) {
      return std::variant<Regex, ObjectSet>(canonicalize(levels[level][group.front()].regex()));
    });
  }

  Model out(model.name(), model.terminals(), std::move(levels));
  if (auto r = validate_model(out); !r.empty()) {
    throw InternalError("generalised model is invalid: " + r.front().message);
  }
  return {std::move(out), std::move(merges)};
}

Dendrogram::Dendrogram(const SimilarityMatrix& matrix) : matrix_(matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw FormatError("dendrogram needs at least one class");
  std::vector<std::size_t> node_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    Node leaf;
    leaf.leaf = i;
    leaf.members = {i};
    node_of[i] = nodes_.size();
    nodes_.push_back(std::move(leaf));
  }

  struct Edge {
    Rational sim;
    std::size_t a, b;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({matrix.at(i, j), i, j});
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.sim > y.sim; });

  DisjointSets ds(n);
  for (std::size_t e = 0; e < edges.size();) {
    const Rational h = edges[e].sim;
    // Clusters (by representative) before this height, then unite everything at h.
    std::map<std::size_t, std::size_t> before;
    std::size_t f = e;
    for (; f < edges.size() && edges[f].sim == h; ++f) {
      for (auto v : {edges[f].a, edges[f].b}) before.emplace(ds.find(v), node_of[ds.find(v)]);
    }
    for (std::size_t k = e; k < f; ++k) ds.unite(edges[k].a, edges[k].b);
    std::map<std::size_t, std::vector<std::size_t>> joined;
    for (const auto& [rep, node] : before) joined[ds.find(rep)].push_back(node);
    for (auto& [rep, kids] : joined) {
      if (kids.size() < 2) continue;
      Node inner;
      inner.height = h;
      std::sort(kids.begin(), kids.end(), [&](std::size_t x, std::size_t y) {
        return nodes_[x].members.front() < nodes_[y].members.front();
      });
      for (auto k : kids) {
        inner.members.insert(inner.members.end(), nodes_[k].members.begin(), nodes_[k].members.end());
      }
      std::sort(inner.members.begin(), inner.members.end());
      inner.children = std::move(kids);
      node_of[rep] = nodes_.size();
      nodes_.push_back(std::move(inner));
    }
    e = f;
  }
  root_ = node_of[ds.find(0)];
}

Partition Dendrogram::cut(const Rational& tau) const {
  check_tau(tau);
  Partition p;
  std::vector<std::size_t> stack{root_};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (node.is_leaf() || node.height >= tau) {
      p.push_back(node.members);
    } else {
      for (auto c : node.children) stack.push_back(c);
    }
  }
  std::sort(p.begin(), p.end());
  return p;
}

std::vector<Partition> Dendrogram::sweep(const std::vector<Rational>& taus) const {
  std::vector<Partition> out;
  out.reserve(taus.size());
  for (const auto& t : taus) out.push_back(cut(t));
  return out;
}

namespace {

std::string height_label(const Rational& h, int digits) {
  return to_fraction_string(h) + " (" + to_decimal_string(h, digits) + ")";
}

}  // namespace

std::string Dendrogram::to_text(int digits) const {
  std::ostringstream out;
  auto walk = [&](auto&& self, std::size_t id, int indent) -> void {
    const Node& node = nodes_[id];
    out << std::string(static_cast<std::size_t>(indent) * 2, ' ');
    if (node.is_leaf()) {
      out << matrix_.names[node.leaf].label << '\n';
      return;
    }
    out << "+ " << height_label(node.height, digits) << '\n';
    for (auto c : node.children) self(self, c, indent + 1);
  };
  walk(walk, root_, 0);
  return out.str();
}

std::string Dendrogram::to_dot(int digits) const {
  std::ostringstream out;
  out << "digraph dendrogram {\n  rankdir=BT;\n";
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const Node& node = nodes_[id];
    out << "  n" << id << " [";
    if (node.is_leaf()) {
      out << "shape=box, label=\"" << matrix_.names[node.leaf].label << "\"";
    } else {
      out << "shape=ellipse, label=\"" << height_label(node.height, digits) << "\"";
    }
    out << "];\n";
  }
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    for (auto c : nodes_[id].children) out << "  n" << c << " -> n" << id << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::vector<Rational> tau_grid(const Rational& lo, const Rational& hi, const Rational& step) {
  if (step <= Rational(0)) throw FormatError("tau grid step must be positive");
  std::vector<Rational> out;
  for (Rational t = lo; t <= hi; t += step) out.push_back(t);
  return out;
}

std::string sweep_tsv(const Dendrogram& tree, const std::vector<Rational>& taus) {
  std::string out = "tau\ttau_decimal\tclusters\tpartition\n";
  for (const auto& t : taus) {
    Partition p = tree.cut(t);
    out += to_fraction_string(t) + "\t" + to_decimal_string(t, 2) + "\t" + std::to_string(p.size()) +
           "\t" + to_string(p, tree.matrix()) + "\n";
  }
  return out;
}

}  // namespace ofs
