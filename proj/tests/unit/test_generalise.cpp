#include <gtest/gtest.h>

#include <random>

#include "common.hpp"
#include "ofs/errors.hpp"
#include "ofs/generalise.hpp"
#include "oracle.hpp"

using namespace ofs;
using ofs::testing::words;

namespace {

Rule set_rule(const std::string& name, std::initializer_list<Word> strings) {
  return Rule{ObjectName{0, name}, ObjectSet(strings)};
}

Rational Q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

// Components of the sim >= tau graph by repeated relaxation.
Partition reference_partition(const SimilarityMatrix& m, const Rational& tau) {
  const std::size_t n = m.size();
  std::vector<std::size_t> comp(n);
  for (std::size_t i = 0; i < n; ++i) comp[i] = i;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (m.at(i, j) >= tau && comp[j] < comp[i]) {
          comp[i] = comp[j];
          changed = true;
        }
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks[comp[i]].push_back(i);
  Partition out;
  for (auto& [_, b] : blocks) out.push_back(b);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Similarity, Examples) {
  EXPECT_EQ(similarity(ObjectSet{words("a")}, ObjectSet{words("a"), words("b")}), Q(1, 2));
  EXPECT_EQ(similarity(ObjectSet{words("a")}, ObjectSet{words("b")}), Q(0));
  EXPECT_EQ(similarity(ObjectSet{Word{}}, ObjectSet{Word{}}), Q(1));
  EXPECT_EQ(similarity(ObjectSet{}, ObjectSet{words("b")}), Q(0));
  EXPECT_THROW(similarity(ObjectSet{}, ObjectSet{}), UndefinedSimilarity);
}

TEST(Similarity, Fig4Matrix) {
  auto m = similarity_matrix(ofs::testing::fig4());
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m.names[0].label, "Onset");
  EXPECT_EQ(m.at(0, 2), Q(7, 37));
  EXPECT_EQ(m.at(2, 0), Q(7, 37));
  EXPECT_EQ(m.at(0, 1), Q(0));
  EXPECT_EQ(m.at(1, 1), Q(1));
}

TEST(Cluster, Fig4Partitions) {
  auto m = similarity_matrix(ofs::testing::fig4());
  EXPECT_EQ(to_string(cluster_partition(m, Q(9, 50)), m), "{Coda,Onset} {Peak}");
  EXPECT_EQ(to_string(cluster_partition(m, Q(7, 37)), m), "{Coda,Onset} {Peak}");
  EXPECT_EQ(to_string(cluster_partition(m, Q(19, 100)), m), "{Onset} {Peak} {Coda}");
  EXPECT_THROW(cluster_partition(m, Q(0)), FormatError);
  EXPECT_THROW(cluster_partition(m, Q(11, 10)), FormatError);
}

TEST(Generalise, Fig4ToFig5) {
  auto g = generalise(ofs::testing::fig4(), Q(9, 50));
  EXPECT_EQ(serialize_model(g.model), serialize_model(ofs::testing::fig5()));
  ASSERT_EQ(g.merges.size(), 1u);
  EXPECT_EQ(g.merges[0].new_name, (ObjectName{0, "Coda_Onset"}));
  EXPECT_EQ(g.merges[0].members.size(), 2u);
  EXPECT_EQ(g.merges[0].tau, Q(9, 50));
}

TEST(Generalise, NothingToMergeLeavesModelAlone) {
  auto g = generalise(ofs::testing::fig4(), Q(19, 100));
  EXPECT_TRUE(g.merges.empty());
  EXPECT_EQ(g.model, ofs::testing::fig4());
}

TEST(Generalise, MergesPercolateUpward) {
  Model m("m", {"a", "b"},
          {{set_rule("A", {words("a")}), set_rule("B", {words("a")}), set_rule("C", {words("b")})},
           {Rule{ObjectName{1, "P"}, parse_regex("A C")}, Rule{ObjectName{1, "Q"}, parse_regex("B C")}},
           {Rule{ObjectName{2, "S"}, parse_regex("P Q")}}});
  auto g = generalise(m, Q(1));
  EXPECT_EQ(to_string(g.model.start().regex()), "P_Q P_Q");
  ASSERT_EQ(g.merges.size(), 2u);
  EXPECT_EQ(g.merges[0].new_name.label, "A_B");
  EXPECT_EQ(g.merges[1].new_name, (ObjectName{1, "P_Q"}));
  EXPECT_TRUE(validate_model(g.model).empty());
}

TEST(Generalise, TakenNameGetsLevelSuffix) {
  Model m("m", {"a", "c"},
          {{set_rule("A", {words("a")}), set_rule("B", {words("a")}), set_rule("A_B", {words("c")})},
           {Rule{ObjectName{1, "S"}, parse_regex("A B A_B")}}});
  auto g = generalise(m, Q(1));
  EXPECT_EQ(to_string(g.model.start().regex()), "A_B_0 A_B_0 A_B");
}

TEST(Generalise, Errors) {
  Model unpruned("m", {"a"}, {{set_rule("A", {words("a")}), set_rule("B", {})},
                              {Rule{ObjectName{1, "S"}, parse_regex("A | B")}}});
  EXPECT_THROW(generalise(unpruned, Q(1, 2)), UnprunedModel);
  EXPECT_THROW(generalise(ofs::testing::fig4(), Q(0)), FormatError);
}

TEST(Dendrogram, Fig4Tree) {
  auto tree = dendrogram(similarity_matrix(ofs::testing::fig4()));
  const auto& root = tree.nodes()[tree.root()];
  EXPECT_EQ(root.height, Q(0));
  EXPECT_EQ(root.members, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_NE(tree.to_text(2).find("7/37 (0.19)"), std::string::npos);
  EXPECT_EQ(tree.to_dot(2).rfind("digraph", 0), 0u);
}

TEST(Dendrogram, GridAndSweep) {
  auto grid = tau_grid(Q(1, 10), Q(1), Q(1, 10));
  ASSERT_EQ(grid.size(), 10u);
  EXPECT_EQ(grid.front(), Q(1, 10));
  EXPECT_EQ(grid.back(), Q(1));
  auto tree = dendrogram(similarity_matrix(ofs::testing::fig4()));
  auto tsv = sweep_tsv(tree, grid);
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')), "tau\ttau_decimal\tclusters\tpartition");
  EXPECT_NE(tsv.find("1/10\t0.10\t2\t{Coda,Onset} {Peak}"), std::string::npos) << tsv;
  EXPECT_THROW(tau_grid(Q(1, 10), Q(1), Q(0)), FormatError);
}

TEST(GeneraliseProperty, PartitionsAgreeWithReference) {
  std::mt19937 rng(40);
  ofs::testing::RandomModelOptions opts;
  opts.max_classes = 6;
  for (int i = 0; i < 200; ++i) {
    Model model = ofs::testing::random_model(rng, opts);
    auto m = similarity_matrix(model);
    auto tree = dendrogram(m);
    std::set<Rational> cuts{Q(1)};
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m.size(); ++b)
        if (m.at(a, b) > Q(0)) cuts.insert(m.at(a, b));
    for (int k = 1; k <= 20; ++k) cuts.insert(Q(k, 20));
    Partition prev;
    for (const auto& tau : cuts) {
      auto p = cluster_partition(m, tau);
      EXPECT_EQ(p, reference_partition(m, tau));
      EXPECT_EQ(tree.cut(tau), p);
      // Raising tau only splits blocks.
      for (const auto& block : p) {
        bool inside = prev.empty();
        for (const auto& pb : prev)
          inside = inside || std::includes(pb.begin(), pb.end(), block.begin(), block.end());
        EXPECT_TRUE(inside);
      }
      prev = p;
    }
  }
}

TEST(GeneraliseProperty, LanguageOnlyGrows) {
  std::mt19937 rng(41);
  for (int i = 0; i < 80; ++i) {
    Model m = ofs::testing::random_model(rng);
    const Rational tau = Q(1 + static_cast<std::int64_t>(rng() % 10), 10);
    auto g = generalise(m, tau);
    EXPECT_TRUE(validate_model(g.model).empty());
    auto before = ofs::testing::language_upto(m, 4);
    auto after = ofs::testing::language_upto(g.model, 4);
    EXPECT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    EXPECT_EQ(g.model.levels()[0].size(), cluster_partition(similarity_matrix(m), tau).size());
  }
}
