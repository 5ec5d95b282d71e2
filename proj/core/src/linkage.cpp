#include "clv/linkage.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "clv/errors.hpp"

namespace clv {
namespace {

class WardState {
 public:
  explicit WardState(const DistanceMatrix& dist)
      : n_(dist.dimension()),
        d2_(dist.values.array().square().matrix()),
        id_(n_),
        size_(n_, 1),
        active_(n_, true),
        nn_(n_, 0) {
    std::iota(id_.begin(), id_.end(), std::size_t{1});
    for (std::size_t i = 0; i < n_; ++i) refresh_neighbour(i);
  }

  Dendrogram run() {
    Dendrogram tree;
    tree.num_leaves = n_;
    tree.merges.reserve(n_ > 0 ? n_ - 1 : 0);
    for (std::size_t step = 0; step + 1 < n_; ++step) {
      std::size_t best = n_;
      for (std::size_t i = 0; i < n_; ++i) {
        if (!active_[i]) continue;
        if (best == n_ || before(i, nn_[i], best, nn_[best])) best = i;
      }
      std::size_t a = std::min(best, nn_[best]);
      std::size_t b = std::max(best, nn_[best]);
      tree.merges.push_back(merge(a, b, n_ + step + 1));
    }
    return tree;
  }

 private:
  double d2(std::size_t i, std::size_t j) const {
    return d2_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double& d2(std::size_t i, std::size_t j) {
    return d2_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  auto key(std::size_t i, std::size_t j) const {
    return std::make_tuple(d2(i, j), std::min(id_[i], id_[j]), std::max(id_[i], id_[j]));
  }

  // Pair (i, j) is merged before pair (k, l).
  bool before(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return key(i, j) < key(k, l);
  }

  void refresh_neighbour(std::size_t i) {
    std::size_t best = n_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == i || !active_[j]) continue;
      if (best == n_ || before(i, j, i, best)) best = j;
    }
    nn_[i] = best;
  }

  Merge merge(std::size_t a, std::size_t b, std::size_t new_id) {
    const double na = static_cast<double>(size_[a]);
    const double nb = static_cast<double>(size_[b]);
    const double dab2 = d2(a, b);
    Merge m{std::min(id_[a], id_[b]), std::max(id_[a], id_[b]), std::sqrt(dab2),
            size_[a] + size_[b]};

    for (std::size_t x = 0; x < n_; ++x) {
      if (!active_[x] || x == a || x == b) continue;
      const double nx = static_cast<double>(size_[x]);
      const double v = ((na + nx) * d2(a, x) + (nb + nx) * d2(b, x) - nx * dab2) /
                       (na + nb + nx);
      d2(a, x) = v;
      d2(x, a) = v;
    }
    active_[b] = false;
    id_[a] = new_id;
    size_[a] = m.size;

    refresh_neighbour(a);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!active_[i] || i == a) continue;
      if (nn_[i] == a || nn_[i] == b) {
        refresh_neighbour(i);
      } else if (before(i, a, i, nn_[i])) {
        nn_[i] = a;
      }
    }
    return m;
  }

  std::size_t n_;
  Matrix d2_;
  std::vector<std::size_t> id_;
  std::vector<std::size_t> size_;
  std::vector<bool> active_;
  std::vector<std::size_t> nn_;
};

}  // namespace

Dendrogram ward_linkage(const DistanceMatrix& dist) {
  if (dist.values.rows() != dist.values.cols())
    throw InvalidArgument("ward_linkage: distance matrix must be square");
  if (dist.dimension() == 0) throw InvalidArgument("ward_linkage: no variables");
  return WardState(dist).run();
}

ClusterCut cut_tree(const Dendrogram& tree, int num_clusters) {
  const std::size_t n = tree.num_leaves;
  if (num_clusters < 1 || static_cast<std::size_t>(num_clusters) > n)
    throw InvalidArgument("cut_tree: num_clusters " + std::to_string(num_clusters) +
                          " outside 1.." + std::to_string(n));
  if (tree.merges.size() + 1 != n) throw InvalidArgument("cut_tree: malformed dendrogram");

  // parent[id] for ids 1..2n-1; 0 = root of its current cluster.
  std::vector<std::size_t> parent(2 * n, 0);
  const std::size_t replay = n - static_cast<std::size_t>(num_clusters);
  for (std::size_t t = 0; t < replay; ++t) {
    const Merge& m = tree.merges[t];
    parent[m.left] = n + t + 1;
    parent[m.right] = n + t + 1;
  }

  ClusterCut cut;
  cut.num_clusters = num_clusters;
  cut.assignment.resize(n);
  std::vector<int> label(2 * n, 0);
  int next = 0;
  for (std::size_t leaf = 1; leaf <= n; ++leaf) {
    std::size_t root = leaf;
    while (parent[root] != 0) root = parent[root];
    if (label[root] == 0) label[root] = ++next;
    cut.assignment[leaf - 1] = label[root];
  }
  return cut;
}

}  // namespace clv
