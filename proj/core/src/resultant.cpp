#include "clv/resultant.hpp"

#include <cmath>
#include <string>

#include "clv/errors.hpp"

namespace clv {

RVMatrix extract_rvs(const Matrix& observations, const ClusterCut& cut,
                     StdConvention convention) {
  const Eigen::Index subjects = observations.rows();
  const Eigen::Index variables = observations.cols();
  if (static_cast<Eigen::Index>(cut.assignment.size()) != variables)
    throw InvalidArgument("extract_rvs: cut covers " + std::to_string(cut.assignment.size()) +
                          " variables, dataset has " + std::to_string(variables));
  if (cut.num_clusters < 1) throw InvalidArgument("extract_rvs: empty cut");
  if (subjects < 2) throw InvalidArgument("extract_rvs: need at least 2 subjects");

  std::vector<int> members(static_cast<std::size_t>(cut.num_clusters), 0);
  for (int c : cut.assignment) {
    if (c < 1 || c > cut.num_clusters) throw InvalidArgument("extract_rvs: cluster index out of range");
    ++members[static_cast<std::size_t>(c - 1)];
  }
  for (int count : members)
    if (count == 0) throw InvalidArgument("extract_rvs: empty cluster");

  const double denom = convention == StdConvention::population
                           ? static_cast<double>(subjects)
                           : static_cast<double>(subjects - 1);

  RVMatrix rv{Matrix::Zero(subjects, cut.num_clusters)};
  for (Eigen::Index i = 0; i < variables; ++i) {
    const auto col = observations.col(i);
    if (col.maxCoeff() == col.minCoeff())
      throw DegenerateVariable(static_cast<std::size_t>(i), "extract_rvs");
    const double mean = col.mean();
    const Vector centered = col.array() - mean;
    const double sd = std::sqrt(centered.squaredNorm() / denom);
    const auto c = static_cast<std::size_t>(cut.assignment[static_cast<std::size_t>(i)] - 1);
    rv.values.col(static_cast<Eigen::Index>(c)) += centered / sd;
  }
  for (Eigen::Index c = 0; c < cut.num_clusters; ++c)
    rv.values.col(c) /= static_cast<double>(members[static_cast<std::size_t>(c)]);
  return rv;
}

}  // namespace clv
