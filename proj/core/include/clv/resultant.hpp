#pragma once

#include "clv/dataset.hpp"
#include "clv/linkage.hpp"

namespace clv {

enum class StdConvention { population, sample };

// S x R; column r is the latent summary of cluster r + 1.
struct RVMatrix {
  Matrix values;
  int num_rvs() const { return static_cast<int>(values.cols()); }
};

/// Resultant vectors: each column is the mean over the cluster's member
/// variables of (x - mean(x)) / sd(x). Population sd by default.
RVMatrix extract_rvs(const Matrix& observations, const ClusterCut& cut,
                     StdConvention convention = StdConvention::population);
inline RVMatrix extract_rvs(const Dataset& dataset, const ClusterCut& cut,
                            StdConvention convention = StdConvention::population) {
  return extract_rvs(dataset.observations, cut, convention);
}

}  // namespace clv
