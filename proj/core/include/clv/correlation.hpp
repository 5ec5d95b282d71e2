#pragma once

#include <cstddef>

#include "clv/dataset.hpp"

namespace clv {

// d[a][b] = 1 - pearson(a, b); symmetric, zero diagonal, entries in [0, 2].
struct DistanceMatrix {
  Matrix values;

  std::size_t dimension() const { return static_cast<std::size_t>(values.rows()); }
  double operator()(std::size_t a, std::size_t b) const {
    return values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }
};

/// Correlation distance between every pair of columns of `observations`.
/// Throws DegenerateVariable for a constant column.
DistanceMatrix correlation_distance_matrix(const Matrix& observations);
inline DistanceMatrix correlation_distance_matrix(const Dataset& dataset) {
  return correlation_distance_matrix(dataset.observations);
}

// Builds a DistanceMatrix from explicit values after checking symmetry,
// zero diagonal and the [0, 2] range.
DistanceMatrix make_distance_matrix(Matrix values);

}  // namespace clv
