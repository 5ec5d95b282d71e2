#pragma once

#include <cstddef>
#include <vector>

#include "clv/correlation.hpp"

namespace clv {

// Cluster ids: leaves are 1..I, merge t (1-based) creates cluster I + t.
struct Merge {
  std::size_t left;   // smaller child id
  std::size_t right;  // larger child id
  double height;
  std::size_t size;
};

struct Dendrogram {
  std::size_t num_leaves = 0;
  std::vector<Merge> merges;  // I - 1 records, heights nondecreasing
};

/// Ward agglomeration over a correlation distance matrix.
///
/// Squared distances are updated with the Lance-Williams recurrence
///   d(A,b)^2 = [(na+nb) d(a,b)^2 + (na'+nb) d(a',b)^2 - nb d(a,a')^2] / (na+na'+nb)
/// where A = a + a'. The pair with the smallest distance is merged first;
/// equal distances go to the lexicographically smallest (low id, high id)
/// pair. Runs in O(I^2) memory with a cached nearest neighbour per cluster.
Dendrogram ward_linkage(const DistanceMatrix& dist);

// Partition of the leaves; cluster indices are 1..C, numbered by the order
// in which each cluster's first leaf appears.
struct ClusterCut {
  std::vector<int> assignment;
  int num_clusters = 0;
};

/// Undoes the last num_clusters - 1 merges. Cuts at 2..6 clusters are the
/// first through fifth levels of the tree. Throws InvalidArgument when
/// num_clusters is outside 1..I.
ClusterCut cut_tree(const Dendrogram& tree, int num_clusters);

}  // namespace clv
