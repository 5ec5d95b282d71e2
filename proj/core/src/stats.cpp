#include "clv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "clv/errors.hpp"
#include "clv/special.hpp"

namespace clv::stats {

std::string_view to_string(TestMethod m) {
  switch (m) {
    case TestMethod::mann_whitney_u:
      return "mann_whitney_u";
    case TestMethod::pearson_r:
      return "pearson_r";
    case TestMethod::anova_f:
      return "anova_f";
  }
  return "unknown";
}

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("mann_whitney_u: empty sample");
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t total = na + nb;

  std::vector<std::pair<double, bool>> pooled;  // (value, from a)
  pooled.reserve(total);
  for (double v : a) pooled.emplace_back(v, true);
  for (double v : b) pooled.emplace_back(v, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });

  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < total;) {
    std::size_t j = i;
    while (j < total && pooled[j].first == pooled[i].first) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    const auto t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    for (std::size_t k = i; k < j; ++k)
      if (pooled[k].second) rank_sum_a += midrank;
    i = j;
  }

  const double n1 = static_cast<double>(na);
  const double n2 = static_cast<double>(nb);
  const double n = static_cast<double>(total);
  const double u_a = rank_sum_a - n1 * (n1 + 1.0) / 2.0;
  const double u_b = n1 * n2 - u_a;
  const double u = std::min(u_a, u_b);

  const double mean = n1 * n2 / 2.0;
  double var = n1 * n2 / 12.0 * (n + 1.0);
  if (total > 1) var -= n1 * n2 / 12.0 * tie_term / (n * (n - 1.0));

  TestResult result{u, 1.0, TestMethod::mann_whitney_u};
  if (var > 0.0) {
    const double z = std::max(std::abs(u - mean) - 0.5, 0.0) / std::sqrt(var);
    result.p_value = std::min(1.0, 2.0 * normal_sf(z));
  }
  return result;
}

TestResult pearson_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("pearson_test: samples differ in length");
  if (a.size() < 3) throw InvalidArgument("pearson_test: need at least 3 pairs");
  const auto n = static_cast<double>(a.size());
  const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
  const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
  if (*amin == *amax || !(saa > 0.0)) throw DegenerateVariable(0, "pearson_test");
  if (*bmin == *bmax || !(sbb > 0.0)) throw DegenerateVariable(1, "pearson_test");

  const double r = std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
  const double df = n - 2.0;
  const double one_minus = 1.0 - r * r;
  const double p = one_minus <= 0.0 ? 0.0 : student_t_two_sided(r * std::sqrt(df / one_minus), df);
  return {r, p, TestMethod::pearson_r};
}

TestResult anova_oneway(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw InvalidArgument("anova_oneway: need at least 2 groups");
  double grand_sum = 0.0;
  std::size_t total = 0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw InvalidArgument("anova_oneway: every group needs at least 2 values");
    grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
    total += g.size();
  }
  const double grand_mean = grand_sum / static_cast<double>(total);

  double between = 0.0;
  double within = 0.0;
  for (const auto& g : groups) {
    const auto size = static_cast<double>(g.size());
    const double mean = std::accumulate(g.begin(), g.end(), 0.0) / size;
    between += size * (mean - grand_mean) * (mean - grand_mean);
    for (double v : g) within += (v - mean) * (v - mean);
  }
  if (!(within > 0.0)) throw DegenerateInput("anova_oneway: zero within-group variance");

  const double df_between = static_cast<double>(groups.size() - 1);
  const double df_within = static_cast<double>(total - groups.size());
  const double f = (between / df_between) / (within / df_within);
  return {f, f_sf(f, df_between, df_within), TestMethod::anova_f};
}

}  // namespace clv::stats
