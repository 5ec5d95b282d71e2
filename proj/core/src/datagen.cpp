#include "clv/datagen.hpp"

#include <algorithm>
#include <string>

#include "clv/errors.hpp"

namespace clv {
namespace {

enum Substream : std::uint64_t { kFactors = 1, kLoadings = 2, kNoiseMeans = 3, kEpsilon = 4 };

double draw_epsilon(RandomStream& rng, NoiseDistribution d) {
  switch (d) {
    case NoiseDistribution::uniform:
      return rng.uniform(-2.0, 2.0);
    case NoiseDistribution::clamped_normal:
      return std::clamp(rng.normal(), -2.0, 2.0);
  }
  return 0.0;
}

}  // namespace

MeanDistribution parse_mean_distribution(std::string_view name) {
  if (name == "uniform") return MeanDistribution::uniform;
  if (name == "clamped_normal") return MeanDistribution::clamped_normal;
  throw InvalidArgument("unknown m_distribution '" + std::string(name) +
                        "' (expected uniform or clamped_normal)");
}

NoiseDistribution parse_noise_distribution(std::string_view name) {
  if (name == "uniform") return NoiseDistribution::uniform;
  if (name == "clamped_normal") return NoiseDistribution::clamped_normal;
  throw InvalidArgument("unknown epsilon_distribution '" + std::string(name) +
                        "' (expected uniform or clamped_normal)");
}

std::string_view to_string(MeanDistribution d) {
  return d == MeanDistribution::uniform ? "uniform" : "clamped_normal";
}

std::string_view to_string(NoiseDistribution d) {
  return d == NoiseDistribution::uniform ? "uniform" : "clamped_normal";
}

void GeneratorParams::validate() const {
  if (num_variables < 2) throw InvalidArgument("variables must be >= 2");
  if (num_subjects < 4) throw InvalidArgument("subjects must be >= 4");
  if (num_subjects % 2 != 0) throw InvalidArgument("subjects must be even");
  if (num_factors < 1) throw InvalidArgument("factors must be >= 1");
  if (num_factors >= num_variables) throw InvalidArgument("factors must be < variables");
  if (!(factor_strength >= 0.0 && factor_strength <= 1.0))
    throw InvalidArgument("k must be in [0,1]");
  if (!(loading_floor >= 0.0 && loading_floor <= 1.0))
    throw InvalidArgument("q must be in [0,1]");
}

std::vector<double> separated_factor(std::span<const double> group1) {
  if (group1.empty()) throw InvalidArgument("separated_factor: empty factor");
  const auto [lo, hi] = std::minmax_element(group1.begin(), group1.end());
  const double offset = (*hi - *lo) * 1.1;
  std::vector<double> group2(group1.begin(), group1.end());
  for (double& v : group2) v += offset;
  return group2;
}

FactorPair sample_factor_pair(RandomStream& rng, std::size_t group_size) {
  if (group_size < 2) throw InvalidArgument("sample_factor_pair: group_size must be >= 2");
  FactorPair pair;
  pair.group1.resize(group_size);
  for (double& v : pair.group1) v = rng.normal();
  pair.group2 = separated_factor(pair.group1);
  return pair;
}

Matrix loadings_from_uniform(const Matrix& draws, double loading_floor) {
  if (!(loading_floor >= 0.0 && loading_floor <= 1.0))
    throw InvalidArgument("loading floor q must be in [0,1]");
  return (draws.array() * loading_floor + (1.0 - loading_floor)).matrix();
}

LoadingMatrix build_loadings(RandomStream& rng, std::size_t num_variables,
                             std::size_t num_factors, double loading_floor) {
  Matrix draws(num_variables, num_factors);
  for (std::size_t i = 0; i < num_variables; ++i)
    for (std::size_t j = 0; j < num_factors; ++j) draws(i, j) = rng.uniform();
  return {loadings_from_uniform(draws, loading_floor)};
}

double noise_mean(double m) noexcept { return m * m; }

NoiseProfile build_noise_profile(RandomStream& rng, std::size_t num_variables,
                                 MeanDistribution distribution) {
  if (num_variables < 1) throw InvalidArgument("build_noise_profile: no variables");
  NoiseProfile profile{Vector(num_variables)};
  for (std::size_t i = 0; i < num_variables; ++i) {
    double m = distribution == MeanDistribution::uniform
                   ? rng.uniform(1.0, 10.0)
                   : std::clamp(rng.normal(5.5, 1.5), 1.0, 10.0);
    profile.means[i] = noise_mean(m);
  }
  return profile;
}

Matrix compose_observations(const FactorSet& factors, const LoadingMatrix& loadings,
                            const NoiseProfile& noise, const Matrix& epsilon,
                            double factor_strength) {
  const Eigen::Index num_factors = factors.group1.rows();
  const Eigen::Index group_size = factors.group1.cols();
  const Eigen::Index num_subjects = 2 * group_size;
  const Eigen::Index num_variables = loadings.values.rows();
  if (factors.group2.rows() != num_factors || factors.group2.cols() != group_size ||
      loadings.values.cols() != num_factors || noise.means.size() != num_variables ||
      epsilon.rows() != num_subjects || epsilon.cols() != num_variables) {
    throw InvalidArgument("compose_observations: inconsistent shapes");
  }

  Matrix x(num_subjects, num_variables);
  for (Eigen::Index s = 0; s < num_subjects; ++s) {
    const bool second = s >= group_size;
    const Matrix& f = second ? factors.group2 : factors.group1;
    const Eigen::Index pos = second ? s - group_size : s;
    for (Eigen::Index i = 0; i < num_variables; ++i) {
      double latent = 0.0;
      for (Eigen::Index j = 0; j < num_factors; ++j)
        latent += factor_strength * f(j, pos) * loadings.values(i, j);
      latent /= static_cast<double>(num_factors);
      const double mu = noise.means[i];
      x(s, i) = latent + mu + mu * epsilon(s, i);
    }
  }
  return x;
}

GeneratedData generate_dataset(const GeneratorParams& params) {
  params.validate();
  const auto num_variables = static_cast<std::size_t>(params.num_variables);
  const auto num_factors = static_cast<std::size_t>(params.num_factors);
  const auto num_subjects = static_cast<std::size_t>(params.num_subjects);
  const auto group_size = static_cast<std::size_t>(params.group_size());

  GeneratedData out;

  RandomStream factor_rng(substream_seed(params.seed, kFactors));
  out.factors.group1.resize(num_factors, group_size);
  out.factors.group2.resize(num_factors, group_size);
  for (std::size_t j = 0; j < num_factors; ++j) {
    FactorPair pair = sample_factor_pair(factor_rng, group_size);
    for (std::size_t p = 0; p < group_size; ++p) {
      out.factors.group1(j, p) = pair.group1[p];
      out.factors.group2(j, p) = pair.group2[p];
    }
  }

  RandomStream loading_rng(substream_seed(params.seed, kLoadings));
  out.loadings = build_loadings(loading_rng, num_variables, num_factors, params.loading_floor);

  RandomStream mean_rng(substream_seed(params.seed, kNoiseMeans));
  out.noise = build_noise_profile(mean_rng, num_variables, params.m_distribution);

  RandomStream eps_rng(substream_seed(params.seed, kEpsilon));
  Matrix epsilon(num_subjects, num_variables);
  for (std::size_t s = 0; s < num_subjects; ++s)
    for (std::size_t i = 0; i < num_variables; ++i)
      epsilon(s, i) = draw_epsilon(eps_rng, params.epsilon_distribution);

  Dataset& ds = out.dataset;
  ds.observations = compose_observations(out.factors, out.loadings, out.noise, epsilon,
                                         params.factor_strength);
  ds.true_labels.resize(num_subjects);
  ds.subject_ids.resize(num_subjects);
  for (std::size_t s = 0; s < num_subjects; ++s) {
    ds.true_labels[s] = s < group_size ? 1 : 2;
    ds.subject_ids[s] = std::to_string(s + 1);
  }
  ds.variable_names.resize(num_variables);
  for (std::size_t i = 0; i < num_variables; ++i)
    ds.variable_names[i] = variable_name(i, num_variables);
  return out;
}

}  // namespace clv
