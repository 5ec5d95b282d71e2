#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "clv/random.hpp"

namespace clv {
namespace {

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next(), b.next());
    ASSERT_EQ(a.uniform(), b.uniform());
    ASSERT_EQ(a.normal(), b.normal());
  }
}

TEST(RandomStream, UniformStaysInHalfOpenInterval) {
  RandomStream rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform(-2.0, 2.0);
    ASSERT_GE(v, -2.0);
    ASSERT_LT(v, 2.0);
  }
}

TEST(RandomStream, NormalMomentsAreStandard) {
  RandomStream rng(7);
  const int n = 200000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sum_sq / n - mean * mean, 1.0, 0.01);
}

TEST(RandomStream, IndexCoversRangeUniformly) {
  RandomStream rng(3);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.index(7)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

TEST(Substreams, DistinctStreamsDiffer) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 1000; ++s) seeds.insert(substream_seed(42, s));
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_NE(substream_seed(1, 2), substream_seed(2, 1));
}

}  // namespace
}  // namespace clv
