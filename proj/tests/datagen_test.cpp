#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "clv/datagen.hpp"
#include "clv/errors.hpp"
#include "clv/stats.hpp"

namespace clv {
namespace {

GeneratorParams small_params(double k, std::uint64_t seed) {
  GeneratorParams p;
  p.num_variables = 50;
  p.num_factors = 4;
  p.factor_strength = k;
  p.seed = seed;
  return p;
}

TEST(SeparatedFactor, OffsetIsElevenTenthsOfRange) {
  const std::vector<double> a{-1.0, 0.0, 1.0};
  const auto b = separated_factor(a);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_DOUBLE_EQ(b[0], 1.2);
  EXPECT_DOUBLE_EQ(b[1], 2.2);
  EXPECT_DOUBLE_EQ(b[2], 3.2);

  const auto c = separated_factor(std::vector<double>{0.0, 0.5});
  EXPECT_DOUBLE_EQ(c[0], 0.55);
  EXPECT_DOUBLE_EQ(c[1], 1.05);
}

TEST(SampleFactorPair, RejectsGroupsSmallerThanTwo) {
  RandomStream rng(1);
  EXPECT_THROW(sample_factor_pair(rng, 1), InvalidArgument);
  EXPECT_THROW(sample_factor_pair(rng, 0), InvalidArgument);
}

TEST(SampleFactorPair, GroupsNeverOverlap) {
  RandomStream rng(2024);
  for (int draw = 0; draw < 10000; ++draw) {
    const FactorPair p = sample_factor_pair(rng, 20);
    ASSERT_EQ(p.group1.size(), p.group2.size());
    const double max1 = *std::max_element(p.group1.begin(), p.group1.end());
    const double min2 = *std::min_element(p.group2.begin(), p.group2.end());
    ASSERT_GT(min2, max1);
    const double offset = p.group2[0] - p.group1[0];
    for (std::size_t i = 1; i < p.group1.size(); ++i)
      ASSERT_NEAR(p.group2[i] - p.group1[i], offset, 1e-12);
  }
}

TEST(Loadings, BoundaryDrawsMapToInterval) {
  Matrix draws(1, 3);
  draws << 0.0, 1.0, 0.5;
  const Matrix l = loadings_from_uniform(draws, 0.25);
  EXPECT_DOUBLE_EQ(l(0, 0), 0.75);
  EXPECT_DOUBLE_EQ(l(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(l(0, 2), 0.875);
  const Matrix ones = loadings_from_uniform(draws, 0.0);
  EXPECT_TRUE((ones.array() == 1.0).all());
  EXPECT_THROW(loadings_from_uniform(draws, 1.5), InvalidArgument);
}

TEST(Loadings, SampledEntriesRespectFloor) {
  RandomStream rng(5);
  const LoadingMatrix l = build_loadings(rng, 300, 8, 0.25);
  EXPECT_GE(l.values.minCoeff(), 0.75);
  EXPECT_LE(l.values.maxCoeff(), 1.0);
}

TEST(NoiseProfile, MeanIsSquareOfM) {
  EXPECT_DOUBLE_EQ(noise_mean(3.0), 9.0);
  EXPECT_DOUBLE_EQ(noise_mean(1.0), 1.0);
  EXPECT_DOUBLE_EQ(noise_mean(10.0), 100.0);
}

TEST(NoiseProfile, SampledMeansWithinBounds) {
  for (auto dist : {MeanDistribution::uniform, MeanDistribution::clamped_normal}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      RandomStream rng(seed);
      const NoiseProfile p = build_noise_profile(rng, 300, dist);
      ASSERT_GE(p.means.minCoeff(), 1.0);
      ASSERT_LE(p.means.maxCoeff(), 100.0);
    }
  }
}

TEST(Params, ValidationNamesConstraint) {
  GeneratorParams p;
  p.factor_strength = 1.5;
  try {
    p.validate();
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("k must be in [0,1]"), std::string::npos);
  }
  p = {};
  p.num_subjects = 41;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = {};
  p.num_factors = p.num_variables;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = {};
  p.loading_floor = -0.1;
  EXPECT_THROW(p.validate(), InvalidArgument);
  EXPECT_THROW(generate_dataset(p), InvalidArgument);
}

TEST(ComposeObservations, DegenerateParametersIsolateFactor) {
  FactorSet f;
  f.group1.resize(1, 3);
  f.group1 << -0.5, 0.1, 0.7;
  f.group2 = Matrix(1, 3);
  f.group2 << 1.0, 1.6, 2.2;
  LoadingMatrix l{Matrix::Ones(4, 1)};
  NoiseProfile noise{Vector::Zero(4)};
  const Matrix eps = Matrix::Zero(6, 4);
  const Matrix x = compose_observations(f, l, noise, eps, 1.0);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index s = 0; s < 3; ++s) EXPECT_EQ(x(s, i), f.group1(0, s));
    for (Eigen::Index s = 0; s < 3; ++s) EXPECT_EQ(x(s + 3, i), f.group2(0, s));
  }
}

TEST(ComposeObservations, ZeroStrengthLeavesOnlyNoise) {
  const GeneratedData d = generate_dataset(small_params(0.0, 11));
  const Matrix& x = d.dataset.observations;
  // x = mu (1 + eps) exactly, so eps is recoverable and lies in [-2, 2].
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    const double mu = d.noise.means[i];
    for (Eigen::Index s = 0; s < x.rows(); ++s) {
      const double eps = x(s, i) / mu - 1.0;
      ASSERT_GE(eps, -2.0 - 1e-12);
      ASSERT_LE(eps, 2.0 + 1e-12);
    }
  }
}

TEST(GenerateDataset, ShapeAndLabels) {
  const GeneratedData d = generate_dataset(small_params(0.5, 3));
  EXPECT_EQ(d.dataset.observations.rows(), 40);
  EXPECT_EQ(d.dataset.observations.cols(), 50);
  ASSERT_EQ(d.dataset.true_labels.size(), 40u);
  EXPECT_EQ(std::count(d.dataset.true_labels.begin(), d.dataset.true_labels.end(), 1), 20);
  EXPECT_EQ(d.dataset.true_labels.front(), 1);
  EXPECT_EQ(d.dataset.true_labels.back(), 2);
  EXPECT_EQ(d.dataset.variable_names.front(), "v0001");
  EXPECT_EQ(d.dataset.variable_names.back(), "v0050");
  EXPECT_EQ(d.factors.group1.rows(), 4);
  EXPECT_EQ(d.factors.group1.cols(), 20);
  for (Eigen::Index j = 0; j < 4; ++j)
    EXPECT_GT(d.factors.group2.row(j).minCoeff(), d.factors.group1.row(j).maxCoeff());
}

TEST(GenerateDataset, DeterministicPerSeed) {
  const GeneratedData a = generate_dataset(small_params(0.7, 123));
  const GeneratedData b = generate_dataset(small_params(0.7, 123));
  const GeneratedData c = generate_dataset(small_params(0.7, 124));
  EXPECT_TRUE(a.dataset.observations == b.dataset.observations);
  EXPECT_FALSE(a.dataset.observations == c.dataset.observations);
}

TEST(GenerateDataset, RowsSeparableWithoutNoise) {
  // With mu = 0 (so eps drops out) every variable is a positive mix of
  // factors, and group 2 dominates group 1 factor by factor.
  GeneratedData d = generate_dataset(small_params(0.3, 8));
  NoiseProfile zero{Vector::Zero(50)};
  const Matrix x = compose_observations(d.factors, d.loadings, zero, Matrix::Zero(40, 50), 0.3);
  for (Eigen::Index i = 0; i < 50; ++i)
    EXPECT_GT(x.col(i).tail(20).minCoeff(), x.col(i).head(20).maxCoeff());
}

TEST(GenerateDataset, NullRejectionRateNearNominal) {
  // At k = 0 the groups are identically distributed.
  double total = 0;
  const int datasets = 20;
  for (int r = 0; r < datasets; ++r) {
    GeneratorParams p;
    p.factor_strength = 0.0;
    p.seed = 1000 + static_cast<std::uint64_t>(r);
    const Dataset ds = generate_dataset(p).dataset;
    int hits = 0;
    for (Eigen::Index i = 0; i < ds.observations.cols(); ++i) {
      std::vector<double> a(20), b(20);
      for (int s = 0; s < 20; ++s) {
        a[static_cast<std::size_t>(s)] = ds.observations(s, i);
        b[static_cast<std::size_t>(s)] = ds.observations(s + 20, i);
      }
      if (stats::mann_whitney_u(a, b).p_value < 0.05) ++hits;
    }
    total += static_cast<double>(hits) / static_cast<double>(ds.observations.cols());
  }
  const double rate = total / datasets;
  EXPECT_GE(rate, 0.02);
  EXPECT_LE(rate, 0.09);
}

TEST(Distributions, ParseNames) {
  EXPECT_EQ(parse_mean_distribution("uniform"), MeanDistribution::uniform);
  EXPECT_EQ(parse_mean_distribution("clamped_normal"), MeanDistribution::clamped_normal);
  EXPECT_EQ(parse_noise_distribution("clamped_normal"), NoiseDistribution::clamped_normal);
  EXPECT_THROW(parse_mean_distribution("normal"), InvalidArgument);
}

}  // namespace
}  // namespace clv
