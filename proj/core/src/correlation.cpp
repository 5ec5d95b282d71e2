#include "clv/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "clv/errors.hpp"

namespace clv {

DistanceMatrix correlation_distance_matrix(const Matrix& observations) {
  const Eigen::Index rows = observations.rows();
  const Eigen::Index cols = observations.cols();
  if (rows < 2) throw InvalidArgument("correlation_distance_matrix: need at least 2 subjects");

  // Unit-norm centered columns; their Gram matrix is the correlation matrix.
  Matrix z(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    const auto col = observations.col(c);
    if (col.maxCoeff() == col.minCoeff())
      throw DegenerateVariable(static_cast<std::size_t>(c), "correlation_distance_matrix");
    const double mean = col.mean();
    z.col(c) = col.array() - mean;
    const double norm = z.col(c).norm();
    if (!(norm > 0.0))
      throw DegenerateVariable(static_cast<std::size_t>(c), "correlation_distance_matrix");
    z.col(c) /= norm;
  }

  const Matrix r = z.transpose() * z;
  Matrix d(cols, cols);
  for (Eigen::Index a = 0; a < cols; ++a) {
    d(a, a) = 0.0;
    for (Eigen::Index b = a + 1; b < cols; ++b) {
      const double v = std::clamp(1.0 - r(a, b), 0.0, 2.0);
      d(a, b) = v;
      d(b, a) = v;
    }
  }
  return {std::move(d)};
}

DistanceMatrix make_distance_matrix(Matrix values) {
  if (values.rows() != values.cols())
    throw InvalidArgument("distance matrix must be square");
  for (Eigen::Index a = 0; a < values.rows(); ++a) {
    if (values(a, a) != 0.0) throw InvalidArgument("distance matrix diagonal must be 0");
    for (Eigen::Index b = a + 1; b < values.cols(); ++b) {
      const double v = values(a, b);
      if (v != values(b, a)) throw InvalidArgument("distance matrix must be symmetric");
      if (!(v >= 0.0 && v <= 2.0)) throw InvalidArgument("distance entries must lie in [0,2]");
    }
  }
  return {std::move(values)};
}

}  // namespace clv
