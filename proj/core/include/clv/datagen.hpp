#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "clv/dataset.hpp"
#include "clv/random.hpp"

namespace clv {

// Distribution of m in mu_i = m_i^2.
enum class MeanDistribution {
  uniform,         // U[1, 10]
  clamped_normal,  // N(5.5, 1.5^2) clamped to [1, 10]
};

// Distribution of the multiplicative noise epsilon.
enum class NoiseDistribution {
  uniform,         // U[-2, 2]
  clamped_normal,  // N(0, 1) clamped to [-2, 2]
};

MeanDistribution parse_mean_distribution(std::string_view name);
NoiseDistribution parse_noise_distribution(std::string_view name);
std::string_view to_string(MeanDistribution d);
std::string_view to_string(NoiseDistribution d);

struct GeneratorParams {
  int num_variables = 300;
  int num_subjects = 40;
  int num_factors = 6;
  double factor_strength = 1.0;  // k
  double loading_floor = 0.25;   // q
  std::uint64_t seed = 0;
  MeanDistribution m_distribution = MeanDistribution::uniform;
  NoiseDistribution epsilon_distribution = NoiseDistribution::uniform;

  // Throws InvalidArgument naming the first violated constraint.
  void validate() const;
  int group_size() const { return num_subjects / 2; }
};

// Latent factors, one row per factor, one column per subject within the group.
struct FactorSet {
  Matrix group1;
  Matrix group2;
};

struct LoadingMatrix {
  Matrix values;  // I x J
};

struct NoiseProfile {
  Vector means;  // mu_i, length I
};

struct FactorPair {
  std::vector<double> group1;
  std::vector<double> group2;
};

// f2 = f1 + 1.1 * (max(f1) - min(f1)).
std::vector<double> separated_factor(std::span<const double> group1);

/// Draws f1 from N(0,1) and derives the group-2 factor from it. Every group-2
/// value exceeds every group-1 value because the offset is 1.1x the range.
FactorPair sample_factor_pair(RandomStream& rng, std::size_t group_size);

// L = M*q + (1-q) applied to a matrix of U[0,1] draws.
Matrix loadings_from_uniform(const Matrix& draws, double loading_floor);
LoadingMatrix build_loadings(RandomStream& rng, std::size_t num_variables,
                             std::size_t num_factors, double loading_floor);

double noise_mean(double m) noexcept;
NoiseProfile build_noise_profile(RandomStream& rng, std::size_t num_variables,
                                 MeanDistribution distribution = MeanDistribution::uniform);

// x[s][i] = (1/J) sum_j k f[g(s)][j][pos(s)] l[i][j] + mu_i + mu_i * eps[s][i]
// `epsilon` is S x I. Subjects 0..S/2-1 are group 1, the rest group 2.
Matrix compose_observations(const FactorSet& factors, const LoadingMatrix& loadings,
                            const NoiseProfile& noise, const Matrix& epsilon,
                            double factor_strength);

struct GeneratedData {
  Dataset dataset;
  FactorSet factors;
  LoadingMatrix loadings;
  NoiseProfile noise;
};

/// Draws a complete two-group dataset. Factors, loadings, noise means and
/// epsilon each come from their own substream of params.seed, so equal seeds
/// give bit-identical output.
GeneratedData generate_dataset(const GeneratorParams& params);

}  // namespace clv
