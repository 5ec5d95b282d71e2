#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <tuple>
#include <vector>

#include <Eigen/Core>

namespace clv::oracle {

// Textbook sum formula, extended precision.
inline double pearson_sum_formula(const std::vector<double>& x, const std::vector<double>& y) {
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  const long double n = static_cast<long double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    syy += static_cast<long double>(y[i]) * y[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double num = n * sxy - sx * sy;
  const long double den = std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  return static_cast<double>(num / den);
}

struct OracleMerge {
  std::size_t left, right;
  double height;
  std::size_t size;
};

/// Ward agglomeration recomputing every cluster-pair distance from the
/// member-level squared distances at each step:
///   D(A,B)^2 = 2 nA nB / (nA + nB) * [S_AB/(nA nB) - S_AA/(2 nA^2) - S_BB/(2 nB^2)]
/// with S_XY the sum of squared distances between members of X and Y.
/// Ties resolve on the (low id, high id) cluster key.
inline std::vector<OracleMerge> naive_ward(const Eigen::MatrixXd& dist) {
  const std::size_t n = static_cast<std::size_t>(dist.rows());
  struct Cluster {
    std::size_t id;
    std::vector<std::size_t> members;
  };
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({i + 1, {i}});

  auto sum_sq = [&](const Cluster& a, const Cluster& b) {
    long double s = 0;
    for (std::size_t i : a.members)
      for (std::size_t j : b.members) {
        const long double d = dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        s += d * d;
      }
    return s;
  };
  auto ward2 = [&](const Cluster& a, const Cluster& b) {
    const long double na = a.members.size(), nb = b.members.size();
    const long double centroid_gap =
        sum_sq(a, b) / (na * nb) - sum_sq(a, a) / (2 * na * na) - sum_sq(b, b) / (2 * nb * nb);
    return static_cast<double>(2 * na * nb / (na + nb) * centroid_gap);
  };

  std::vector<OracleMerge> merges;
  std::size_t next_id = n + 1;
  while (clusters.size() > 1) {
    auto best = std::make_tuple(std::numeric_limits<double>::infinity(), std::size_t{0}, std::size_t{0});
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const std::size_t lo = std::min(clusters[i].id, clusters[j].id);
        const std::size_t hi = std::max(clusters[i].id, clusters[j].id);
        auto key = std::make_tuple(ward2(clusters[i], clusters[j]), lo, hi);
        if (key < best) {
          best = key;
          bi = i;
          bj = j;
        }
      }
    Cluster merged{next_id++, clusters[bi].members};
    merged.members.insert(merged.members.end(), clusters[bj].members.begin(), clusters[bj].members.end());
    merges.push_back({std::get<1>(best), std::get<2>(best), std::sqrt(std::max(0.0, std::get<0>(best))),
                      merged.members.size()});
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bi));
    clusters.push_back(std::move(merged));
  }
  return merges;
}

/// Exact two-sided Mann-Whitney p-value for samples without ties: enumerate
/// every assignment of the pooled ranks to sample a and count those at least
/// as far from n_a n_b / 2 as the observed U.
inline double mann_whitney_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t na = a.size(), nb = b.size(), n = na + nb;
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double observed_ranks = 0;
  for (double v : a)
    observed_ranks += static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin() + 1);
  const double mean = static_cast<double>(na * nb) / 2.0;
  const double offset = static_cast<double>(na * (na + 1)) / 2.0;
  const double observed_gap = std::abs(observed_ranks - offset - mean);

  std::size_t extreme = 0, total = 0;
  std::vector<std::size_t> pick(na);
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t depth, std::size_t start,
                                                                    double rank_sum) {
    if (depth == na) {
      ++total;
      if (std::abs(rank_sum - offset - mean) >= observed_gap - 1e-9) ++extreme;
      return;
    }
    for (std::size_t r = start; r + (na - depth) <= n; ++r) walk(depth + 1, r + 1, rank_sum + double(r + 1));
  };
  walk(0, 0, 0.0);
  return static_cast<double>(extreme) / static_cast<double>(total);
}

// Composite Simpson rule with `intervals` (even) panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int intervals) {
  const double h = (hi - lo) / intervals;
  long double s = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(lo + i * h);
  return static_cast<double>(s * h / 3.0L);
}

inline double student_t_density(double t, double df) {
  const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) /
                   std::sqrt(df * std::numbers::pi);
  return c * std::pow(1 + t * t / df, -(df + 1) / 2);
}

// Two-sided tail of Student's t by integrating the density over [0, |t|].
inline double student_t_two_sided_by_integration(double t, double df) {
  const double inner = simpson([&](double x) { return student_t_density(x, df); }, 0.0, std::abs(t), 200000);
  return std::clamp(1.0 - 2.0 * inner, 0.0, 1.0);
}

inline double f_density(double x, double d1, double d2) {
  if (x <= 0) return 0;
  const double log_c = std::lgamma((d1 + d2) / 2) - std::lgamma(d1 / 2) - std::lgamma(d2 / 2) +
                       (d1 / 2) * std::log(d1 / d2);
  return std::exp(log_c + (d1 / 2 - 1) * std::log(x) - ((d1 + d2) / 2) * std::log1p(d1 * x / d2));
}

// Upper tail of F(d1, d2) by integrating the density; x = u^2 removes the
// x^(-1/2) singularity when d1 = 1.
inline double f_upper_tail_by_integration(double f, double d1, double d2) {
  auto integrand = [&](double u) {
    if (u > 0.0) return f_density(u * u, d1, d2) * 2 * u;
    if (d1 != 1) return 0.0;
    // limit of 2u f(u^2) as u -> 0 for d1 = 1
    return 2 * std::exp(std::lgamma((1 + d2) / 2) - std::lgamma(0.5) - std::lgamma(d2 / 2)) / std::sqrt(d2);
  };
  const double inner = simpson(integrand, 0.0, std::sqrt(f), 400000);
  return std::clamp(1.0 - inner, 0.0, 1.0);
}

struct AnovaOracle {
  double f;
  double df_between;
  double df_within;
};

// Two-pass sums of squares in extended precision.
inline AnovaOracle anova_two_pass(const std::vector<std::vector<double>>& groups) {
  long double total = 0;
  std::size_t count = 0;
  for (const auto& g : groups)
    for (double v : g) {
      total += v;
      ++count;
    }
  const long double grand = total / count;
  long double ssb = 0, ssw = 0;
  for (const auto& g : groups) {
    long double s = 0;
    for (double v : g) s += v;
    const long double m = s / g.size();
    ssb += g.size() * (m - grand) * (m - grand);
    for (double v : g) ssw += (v - m) * (v - m);
  }
  const double dfb = static_cast<double>(groups.size() - 1);
  const double dfw = static_cast<double>(count - groups.size());
  return {static_cast<double>((ssb / dfb) / (ssw / dfw)), dfb, dfw};
}

// Squared-error cost of a two-part labelling (labels 0/1).
inline double partition_sse(const Eigen::MatrixXd& pts, const std::vector<int>& labels) {
  double sse = 0;
  for (int c = 0; c < 2; ++c) {
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(pts.cols());
    int n = 0;
    for (Eigen::Index s = 0; s < pts.rows(); ++s)
      if (labels[static_cast<std::size_t>(s)] == c) {
        centroid += pts.row(s).transpose();
        ++n;
      }
    if (n == 0) continue;
    centroid /= n;
    for (Eigen::Index s = 0; s < pts.rows(); ++s)
      if (labels[static_cast<std::size_t>(s)] == c) sse += (pts.row(s).transpose() - centroid).squaredNorm();
  }
  return sse;
}

// Minimum-SSE split into two nonempty parts by exhaustive enumeration.
inline std::vector<int> best_two_partition(const Eigen::MatrixXd& pts) {
  const std::size_t n = static_cast<std::size_t>(pts.rows());
  std::vector<int> best;
  double best_sse = std::numeric_limits<double>::infinity();
  // Subject 0 fixed in part 0; every nonempty complement enumerated once.
  for (std::size_t mask = 1; mask < (std::size_t{1} << (n - 1)); ++mask) {
    std::vector<int> labels(n, 0);
    for (std::size_t s = 1; s < n; ++s) labels[s] = (mask >> (s - 1)) & 1;
    const double sse = partition_sse(pts, labels);
    if (sse < best_sse) {
      best_sse = sse;
      best = labels;
    }
  }
  return best;
}

}  // namespace clv::oracle
