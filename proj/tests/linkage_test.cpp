#include <gtest/gtest.h>

#include <set>

#include "clv/errors.hpp"
#include "clv/linkage.hpp"
#include "clv/random.hpp"
#include "oracles/oracles.hpp"

namespace clv {
namespace {

// Correlation distances of a random matrix with `vars` columns.
DistanceMatrix random_distances(std::size_t vars, std::uint64_t seed) {
  RandomStream rng(seed);
  Matrix x(15, static_cast<Eigen::Index>(vars));
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c) x(r, c) = rng.normal();
  return correlation_distance_matrix(x);
}

TEST(WardLinkage, FirstMergeIsClosestPair) {
  Matrix d(3, 3);
  d << 0.0, 0.1, 1.0,
       0.1, 0.0, 1.0,
       1.0, 1.0, 0.0;
  const Dendrogram t = ward_linkage(make_distance_matrix(d));
  ASSERT_EQ(t.merges.size(), 2u);
  EXPECT_EQ(t.merges[0].left, 1u);
  EXPECT_EQ(t.merges[0].right, 2u);
  EXPECT_DOUBLE_EQ(t.merges[0].height, 0.1);
  EXPECT_EQ(t.merges[1].left, 3u);
  EXPECT_EQ(t.merges[1].right, 4u);
  EXPECT_EQ(t.merges[1].size, 3u);
  // (2*1 + 2*1 - 1*0.01) / 3
  EXPECT_NEAR(t.merges[1].height, std::sqrt((2.0 + 2.0 - 0.01) / 3.0), 1e-15);
}

TEST(WardLinkage, TwoLeaves) {
  Matrix d(2, 2);
  d << 0.0, 0.7, 0.7, 0.0;
  const Dendrogram t = ward_linkage(make_distance_matrix(d));
  ASSERT_EQ(t.merges.size(), 1u);
  EXPECT_DOUBLE_EQ(t.merges[0].height, 0.7);
  EXPECT_EQ(t.merges[0].size, 2u);
}

TEST(WardLinkage, TiesGoToSmallestIdPair) {
  Matrix d = Matrix::Constant(4, 4, 1.0);
  d.diagonal().setZero();
  const Dendrogram t = ward_linkage(make_distance_matrix(d));
  EXPECT_EQ(t.merges[0].left, 1u);
  EXPECT_EQ(t.merges[0].right, 2u);
  // (3,4) at height 1 beats ({1,2},3) at sqrt((2+2-1)/3) = 1; tie on height,
  // smallest low id wins: cluster 3 with 4 (key (3,4)) vs 3 with 5 (key (3,5)).
  EXPECT_EQ(t.merges[1].left, 3u);
  EXPECT_EQ(t.merges[1].right, 4u);
}

TEST(WardLinkage, MatchesNaiveOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 2 + seed % 11;
    const DistanceMatrix d = random_distances(n, seed);
    const Dendrogram fast = ward_linkage(d);
    const auto slow = oracle::naive_ward(d.values);
    ASSERT_EQ(fast.merges.size(), slow.size());
    for (std::size_t t = 0; t < slow.size(); ++t) {
      ASSERT_EQ(fast.merges[t].left, slow[t].left) << "seed " << seed << " step " << t;
      ASSERT_EQ(fast.merges[t].right, slow[t].right) << "seed " << seed << " step " << t;
      ASSERT_EQ(fast.merges[t].size, slow[t].size);
      ASSERT_NEAR(fast.merges[t].height, slow[t].height, 1e-9);
    }
  }
}

TEST(WardLinkage, StructuralInvariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 40;
    const Dendrogram t = ward_linkage(random_distances(n, 500 + seed));
    ASSERT_EQ(t.merges.size(), n - 1);
    std::vector<std::size_t> size(2 * n, 1);
    std::set<std::size_t> used;
    for (std::size_t i = 0; i < t.merges.size(); ++i) {
      const Merge& m = t.merges[i];
      ASSERT_LT(m.left, m.right);
      ASSERT_LE(m.right, n + i);
      ASSERT_TRUE(used.insert(m.left).second);
      ASSERT_TRUE(used.insert(m.right).second);
      ASSERT_EQ(m.size, size[m.left] + size[m.right]);
      size[n + i + 1] = m.size;
      if (i > 0) ASSERT_GE(m.height, t.merges[i - 1].height);
    }
    EXPECT_EQ(t.merges.back().size, n);
  }
}

TEST(CutTree, TwoClustersFollowRoot) {
  const Dendrogram t = ward_linkage(random_distances(12, 3));
  const ClusterCut cut = cut_tree(t, 2);
  // Leaves under the root's left child share a label.
  std::vector<std::size_t> parent(24, 0);
  for (std::size_t i = 0; i + 1 < t.merges.size(); ++i) {
    parent[t.merges[i].left] = 12 + i + 1;
    parent[t.merges[i].right] = 12 + i + 1;
  }
  auto root_child = [&](std::size_t leaf) {
    while (parent[leaf] != 0) leaf = parent[leaf];
    return leaf;
  };
  for (std::size_t a = 1; a <= 12; ++a)
    for (std::size_t b = 1; b <= 12; ++b)
      EXPECT_EQ(cut.assignment[a - 1] == cut.assignment[b - 1], root_child(a) == root_child(b));
  EXPECT_EQ(cut.assignment[0], 1);
}

TEST(CutTree, FullCutOfChain) {
  // Chain: ((((1,2),3),4),5),6
  Dendrogram chain;
  chain.num_leaves = 6;
  chain.merges = {{1, 2, 0.1, 2}, {3, 7, 0.2, 3}, {4, 8, 0.3, 4}, {5, 9, 0.4, 5}, {6, 10, 0.5, 6}};
  const ClusterCut full = cut_tree(chain, 6);
  EXPECT_EQ(full.assignment, (std::vector<int>{1, 2, 3, 4, 5, 6}));
  const ClusterCut two = cut_tree(chain, 2);
  EXPECT_EQ(two.assignment, (std::vector<int>{1, 1, 1, 1, 1, 2}));
  EXPECT_THROW(cut_tree(chain, 7), InvalidArgument);
  EXPECT_THROW(cut_tree(chain, 0), InvalidArgument);
}

TEST(CutTree, CutsAreNested) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Dendrogram t = ward_linkage(random_distances(12, 900 + seed));
    for (int c = 2; c <= 5; ++c) {
      const ClusterCut coarse = cut_tree(t, c);
      const ClusterCut fine = cut_tree(t, c + 1);
      std::set<int> used(fine.assignment.begin(), fine.assignment.end());
      ASSERT_EQ(static_cast<int>(used.size()), c + 1);
      // Same fine cluster implies same coarse cluster.
      for (std::size_t a = 0; a < 12; ++a)
        for (std::size_t b = 0; b < 12; ++b)
          if (fine.assignment[a] == fine.assignment[b])
            ASSERT_EQ(coarse.assignment[a], coarse.assignment[b]);
    }
  }
}

}  // namespace
}  // namespace clv
