#include <gtest/gtest.h>

#include <set>

#include "searchlab/corpus.h"

using namespace searchlab;

TEST(Corpus, IsomorphismClassCounts) {
  // Known counts of unlabeled graphs (all / connected) on n nodes.
  const std::vector<std::size_t> all{1, 2, 4, 11, 34, 156, 1044};
  const std::vector<std::size_t> connected{1, 1, 2, 6, 21, 112, 853};
  for (int n = 1; n <= 7; ++n) {
    EXPECT_EQ(graphs_on(n, false).size(), all[n - 1]) << n;
    EXPECT_EQ(graphs_on(n, true).size(), connected[n - 1]) << n;
  }
  EXPECT_EQ(connected_graphs_up_to(5).size(), 1u + 1 + 2 + 6 + 21);
}

TEST(Corpus, RepresentativesAreDistinctAndConnected) {
  const auto graphs = graphs_on(6, true);
  std::set<std::uint64_t> codes;
  for (const Graph &g : graphs) {
    EXPECT_TRUE(g.is_connected());
    EXPECT_EQ(g.num_nodes(), 6);
    codes.insert(canonical_code(g));
  }
  EXPECT_EQ(codes.size(), graphs.size());
}

TEST(CanonicalCode, InvariantUnderRelabelling) {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng.below(9));
    const Graph g = random_connected_graph(n, 0.4, rng);
    const Graph h = relabel(g, random_permutation(n, rng));
    EXPECT_EQ(canonical_code(g), canonical_code(h));
    EXPECT_TRUE(isomorphic_small(g, h));
  }
  EXPECT_FALSE(isomorphic_small(path_graph(4), star_graph(4)));
  EXPECT_TRUE(isomorphic_small(path_graph(3), star_graph(3)));
  EXPECT_FALSE(isomorphic_small(disjoint_union(cycle_graph(3), cycle_graph(3)),
                                cycle_graph(6)));
}

TEST(RandomSparseGraph, RespectsCaps) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(59));
    const Graph g = random_sparse_graph(n, 4, 1.5, rng);
    EXPECT_TRUE(g.is_connected());
    EXPECT_LE(degree_stats(g).d_max, 4);
    EXPECT_LE(static_cast<double>(g.num_edges()), 1.5 * n);
  }
}

TEST(RandomPermutation, IsBijection) {
  Rng rng(3);
  for (int n = 0; n < 20; ++n) {
    const Permutation p = random_permutation(n, rng);
    EXPECT_TRUE(is_permutation(p, n));
  }
}
