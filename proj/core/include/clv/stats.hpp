#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace clv::stats {

enum class TestMethod { mann_whitney_u, pearson_r, anova_f };

std::string_view to_string(TestMethod m);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  TestMethod method = TestMethod::mann_whitney_u;
};

/// Two-sided Mann-Whitney U test.
///
/// Ranks the pooled sample with midranks for ties and reports
/// U = min(U_a, U_b). The p-value uses the normal approximation with the
/// tie-corrected variance
///   var = n_a n_b / 12 * ((N + 1) - sum(t^3 - t) / (N (N - 1)))
/// and a 0.5 continuity correction. Throws InvalidArgument on an empty sample.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

// Pearson r with a two-sided t-test on n - 2 degrees of freedom.
TestResult pearson_test(std::span<const double> a, std::span<const double> b);

// One-way ANOVA F test over >= 2 groups of >= 2 values each.
TestResult anova_oneway(const std::vector<std::vector<double>>& groups);

}  // namespace clv::stats
