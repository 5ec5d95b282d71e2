#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "clv/dataset.hpp"

namespace clv {

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 300;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<int> labels;  // 1 or 2; subject 0 always carries label 1
  double sse = 0.0;         // within-cluster sum of squared Euclidean distances
  int restart = 0;          // restart that produced the result
  bool converged = false;
};

/// Two-cluster Lloyd k-means over the rows of `points`.
///
/// Each restart starts from two distinct rows drawn from substream `r` of
/// options.seed and iterates until the assignment stops changing (or
/// max_iterations). A cluster emptied during iteration is reseeded with the
/// point farthest from the other centroid. Each fixpoint is then polished by
/// single-point transfers that lower the SSE, re-running Lloyd after each one,
/// so the result is both a Lloyd fixpoint and single-move optimal. The lowest-SSE restart wins; ties
/// go to the lower restart index. Throws DegenerateInput when every row is
/// identical.
KMeansResult kmeans_two(const Matrix& points, const KMeansOptions& options = {});

double within_cluster_sse(const Matrix& points, std::span<const int> labels);

struct Congruence {
  int count = 0;
  double fraction = 0.0;
};

// Matches under the better of the identity and swapped label mappings.
// Both labelings must have equal length and values in {1, 2}.
Congruence congruence(std::span<const int> predicted, std::span<const int> truth);

struct Classification {
  std::vector<int> predicted_labels;
  Congruence score;  // meaningful only when truth was available
};

}  // namespace clv
