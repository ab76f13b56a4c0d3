#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "ofs/model.hpp"
#include "ofs/rational.hpp"

namespace ofs {

// |a ∩ b| / |a ∪ b|. Throws UndefinedSimilarity when both are empty.
Rational similarity(const ObjectSet& a, const ObjectSet& b);

struct SimilarityMatrix {
  std::vector<ObjectName> names;  // level-0 objects in model order
  std::vector<std::vector<Rational>> values;

  std::size_t size() const { return names.size(); }
  const Rational& at(std::size_t i, std::size_t j) const { return values[i][j]; }
};

// Throws UnprunedModel if a level-0 set is empty.
SimilarityMatrix similarity_matrix(const Model& model);

// Blocks of matrix indices. Each block is ascending and blocks are ordered by
// their smallest index, so equal partitions compare equal.
using Partition = std::vector<std::vector<std::size_t>>;

// Connected components of the graph with an edge wherever sim >= tau.
// Throws FormatError unless 0 < tau <= 1.
Partition cluster_partition(const SimilarityMatrix& matrix, const Rational& tau);

// "{Coda,Onset} {Peak}"-style rendering using matrix labels.
std::string to_string(const Partition& partition, const SimilarityMatrix& matrix);

struct MergeRecord {
  ObjectName new_name;
  std::set<ObjectName> members;
  Rational tau;

  bool operator==(const MergeRecord&) const = default;
};

struct Generalisation {
  Model model;
  std::vector<MergeRecord> merges;  // level 0 first, then upward
};

// Merges every block of cluster_partition into one level-0 rule named by
// its sorted labels joined with `_`, rewrites references, then merges rules
// with identical canonical rhs level by level upward. A name that is already
// taken gets `_<level>` appended. Throws UnprunedModel, InvalidModel.
Generalisation generalise(const Model& model, const Rational& tau);

// Single-linkage merge tree with exact merge heights. Nodes with equal
// heights that touch are fused, so the tree may be multiway.
class Dendrogram {
 public:
  struct Node {
    std::vector<std::size_t> children;  // node ids; empty for leaves
    std::size_t leaf = 0;               // matrix index, leaves only
    Rational height{1};                 // leaves sit at 1
    std::vector<std::size_t> members;   // ascending matrix indices

    bool is_leaf() const { return children.empty(); }
  };

  explicit Dendrogram(const SimilarityMatrix& matrix);

  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t root() const { return root_; }
  const SimilarityMatrix& matrix() const { return matrix_; }

  // Partition obtained by cutting at tau (same contract as cluster_partition).
  Partition cut(const Rational& tau) const;

  // Cuts at each tau, in the given order.
  std::vector<Partition> sweep(const std::vector<Rational>& taus) const;

  // Indented tree, internal nodes labelled "7/37 (0.19)".
  std::string to_text(int digits) const;
  std::string to_dot(int digits) const;

 private:
  SimilarityMatrix matrix_;
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
};

// Free-function form of the constructor.
inline Dendrogram dendrogram(const SimilarityMatrix& matrix) { return Dendrogram(matrix); }

// Grid lo, lo+step, ..., up to and including hi.
std::vector<Rational> tau_grid(const Rational& lo, const Rational& hi, const Rational& step);

// Header "tau\ttau_decimal\tclusters\tpartition", one row per tau.
std::string sweep_tsv(const Dendrogram& tree, const std::vector<Rational>& taus);

}  // namespace ofs
