#include "clv/classify.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "clv/errors.hpp"
#include "clv/random.hpp"

namespace clv {
namespace {

struct LloydRun {
  std::vector<int> labels;  // 0 or 1
  double sse;
  bool converged;
};

double squared_distance(const Matrix& points, Eigen::Index row, const Vector& centroid) {
  return (points.row(row).transpose() - centroid).squaredNorm();
}

std::array<Vector, 2> centroids_of(const Matrix& points, const std::vector<int>& labels) {
  std::array<Vector, 2> c{Vector::Zero(points.cols()), Vector::Zero(points.cols())};
  std::array<int, 2> counts{0, 0};
  for (Eigen::Index s = 0; s < points.rows(); ++s) {
    const int l = labels[static_cast<std::size_t>(s)];
    c[static_cast<std::size_t>(l)] += points.row(s).transpose();
    ++counts[static_cast<std::size_t>(l)];
  }
  for (std::size_t l = 0; l < 2; ++l)
    if (counts[l] > 0) c[l] /= static_cast<double>(counts[l]);
  return c;
}

// Lloyd iterations from the given centroids. Returns false if the cap is hit.
bool lloyd(const Matrix& points, std::array<Vector, 2> centroids, std::vector<int>& labels, int max_iterations) {
  const Eigen::Index n = points.rows();
  for (int iter = 0; iter < max_iterations; ++iter) {
    std::vector<int> next(static_cast<std::size_t>(n));
    std::array<int, 2> counts{0, 0};
    for (Eigen::Index s = 0; s < n; ++s) {
      const double d0 = squared_distance(points, s, centroids[0]);
      const double d1 = squared_distance(points, s, centroids[1]);
      const int l = d1 < d0 ? 1 : 0;
      next[static_cast<std::size_t>(s)] = l;
      ++counts[static_cast<std::size_t>(l)];
    }
    for (int empty = 0; empty < 2; ++empty) {
      if (counts[static_cast<std::size_t>(empty)] != 0) continue;
      const Vector& other = centroids[static_cast<std::size_t>(1 - empty)];
      Eigen::Index far = 0;
      double far_d = -1.0;
      for (Eigen::Index s = 0; s < n; ++s) {
        const double d = squared_distance(points, s, other);
        if (d > far_d) {
          far_d = d;
          far = s;
        }
      }
      next[static_cast<std::size_t>(far)] = empty;
    }
    if (next == labels) return true;
    labels = std::move(next);
    centroids = centroids_of(points, labels);
  }
  return false;
}

// Applies the single-point move that lowers SSE the most, if any.
// Moving x from A to B changes SSE by nB/(nB+1)|x-cB|^2 - nA/(nA-1)|x-cA|^2.
bool best_transfer(const Matrix& points, std::vector<int>& labels, double scale) {
  const auto centroids = centroids_of(points, labels);
  std::array<double, 2> counts{0.0, 0.0};
  for (int l : labels) counts[static_cast<std::size_t>(l)] += 1.0;
  Eigen::Index best = -1;
  double best_delta = -1e-12 * (1.0 + scale);
  for (Eigen::Index s = 0; s < points.rows(); ++s) {
    const auto a = static_cast<std::size_t>(labels[static_cast<std::size_t>(s)]);
    const std::size_t b = 1 - a;
    if (counts[a] < 2.0) continue;
    const double delta = counts[b] / (counts[b] + 1.0) * squared_distance(points, s, centroids[b]) -
                         counts[a] / (counts[a] - 1.0) * squared_distance(points, s, centroids[a]);
    if (delta < best_delta) {
      best_delta = delta;
      best = s;
    }
  }
  if (best < 0) return false;
  labels[static_cast<std::size_t>(best)] = 1 - labels[static_cast<std::size_t>(best)];
  return true;
}

double sse_of(const Matrix& points, const std::vector<int>& labels) {
  std::vector<int> one_based(labels.size());
  for (std::size_t s = 0; s < labels.size(); ++s) one_based[s] = labels[s] + 1;
  return within_cluster_sse(points, one_based);
}

// Lloyd to a fixpoint, then alternate single-point transfers with Lloyd
// until neither changes the labelling.
LloydRun refine(const Matrix& points, Eigen::Index first, Eigen::Index second, int max_iterations) {
  std::vector<int> labels(static_cast<std::size_t>(points.rows()), -1);
  bool converged =
      lloyd(points, {points.row(first).transpose(), points.row(second).transpose()}, labels, max_iterations);
  const double scale = sse_of(points, labels);
  for (int round = 0; converged && round < max_iterations; ++round) {
    if (!best_transfer(points, labels, scale)) break;
    converged = lloyd(points, centroids_of(points, labels), labels, max_iterations);
  }
  return {labels, sse_of(points, labels), converged};
}

}  // namespace

double within_cluster_sse(const Matrix& points, std::span<const int> labels) {
  if (static_cast<Eigen::Index>(labels.size()) != points.rows())
    throw InvalidArgument("within_cluster_sse: label count does not match rows");
  std::vector<int> zero_based(labels.size());
  for (std::size_t s = 0; s < labels.size(); ++s) {
    if (labels[s] != 1 && labels[s] != 2) throw InvalidArgument("labels must be 1 or 2");
    zero_based[s] = labels[s] - 1;
  }
  const auto centroids = centroids_of(points, zero_based);
  double sse = 0.0;
  for (Eigen::Index s = 0; s < points.rows(); ++s)
    sse += squared_distance(points, s, centroids[static_cast<std::size_t>(zero_based[static_cast<std::size_t>(s)])]);
  return sse;
}

KMeansResult kmeans_two(const Matrix& points, const KMeansOptions& options) {
  const Eigen::Index n = points.rows();
  if (n < 2) throw InvalidArgument("kmeans_two: need at least 2 points");
  if (points.cols() < 1) throw InvalidArgument("kmeans_two: points have no coordinates");
  if (options.restarts < 1) throw InvalidArgument("kmeans_two: restarts must be >= 1");
  if (options.max_iterations < 1) throw InvalidArgument("kmeans_two: max_iterations must be >= 1");
  if (!points.allFinite()) throw InvalidArgument("kmeans_two: non-finite coordinates");

  bool all_same = true;
  for (Eigen::Index s = 1; s < n && all_same; ++s)
    all_same = points.row(s) == points.row(0);
  if (all_same) throw DegenerateInput("kmeans_two: all points are identical");

  KMeansResult best;
  best.sse = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r) {
    RandomStream rng(substream_seed(options.seed, static_cast<std::uint64_t>(r)));
    const auto first = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
    auto second = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n - 1)));
    if (second >= first) ++second;

    LloydRun run = refine(points, first, second, options.max_iterations);
    if (run.sse < best.sse) {
      // Canonical labelling: subject 0 is in cluster 1.
      const bool flip = run.labels[0] == 1;
      best.labels.resize(run.labels.size());
      for (std::size_t s = 0; s < run.labels.size(); ++s)
        best.labels[s] = (flip ? 1 - run.labels[s] : run.labels[s]) + 1;
      best.sse = run.sse;
      best.restart = r;
      best.converged = run.converged;
    }
  }
  return best;
}

Congruence congruence(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size())
    throw InvalidArgument("congruence: " + std::to_string(predicted.size()) +
                          " predicted labels vs " + std::to_string(truth.size()) + " true labels");
  if (predicted.empty()) throw InvalidArgument("congruence: empty labelling");
  int matches = 0;
  for (std::size_t s = 0; s < predicted.size(); ++s) {
    if ((predicted[s] != 1 && predicted[s] != 2) || (truth[s] != 1 && truth[s] != 2))
      throw InvalidArgument("congruence: labels must be 1 or 2");
    if (predicted[s] == truth[s]) ++matches;
  }
  const int total = static_cast<int>(predicted.size());
  const int count = std::max(matches, total - matches);
  return {count, static_cast<double>(count) / static_cast<double>(total)};
}

}  // namespace clv
