#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clv/classify.hpp"
#include "clv/datagen.hpp"
#include "clv/stats.hpp"

namespace clv {

struct GridConfig {
  std::vector<int> variables_list{50, 100, 300};
  std::vector<int> factors_list{4, 6, 8};
  std::vector<double> k_list{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  int replicates = 50;
  std::vector<int> rv_counts{2, 3, 4, 5, 6};
  std::uint64_t base_seed = 12345;
  int restarts = 10;
  int subjects = 40;
  double loading_floor = 0.25;
  MeanDistribution m_distribution = MeanDistribution::uniform;
  NoiseDistribution epsilon_distribution = NoiseDistribution::uniform;
  // (I, J) cells that also get the per-dataset descriptive scan.
  std::vector<std::pair<int, int>> descriptive_cells{{300, 6}};

  // Throws InvalidArgument naming the offending field.
  void validate() const;
  bool wants_descriptive(int variables, int factors) const;
};

struct CellKey {
  int variables = 0;
  int factors = 0;
  double k = 0.0;

  auto operator<=>(const CellKey&) const = default;
};

struct DescriptiveStats {
  double u_sig_fraction = 0.0;         // share of variables with U-test p < 0.05
  std::optional<double> r_sig_fraction;  // share of pairs (i, i + I/2) with p < 0.01
  std::optional<double> mean_r;          // mean |r| over those pairs
};

struct ReplicateResult {
  CellKey cell;
  int replicate = 0;
  std::uint64_t seed = 0;
  std::map<int, Congruence> congruence_by_rv;
  std::optional<DescriptiveStats> descriptive;
  std::string error;  // non-empty when the replicate failed

  bool ok() const { return error.empty(); }
};

struct CellSummary {
  CellKey cell;
  int rv_count = 0;
  int n = 0;  // replicates that completed
  double mean_congruence = 0.0;
  double sd_congruence = 0.0;  // n - 1 denominator; 0 when n < 2
};

// Failure inside run_replicate, tagged with the cell and replicate.
class ReplicateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-dataset descriptive scan. Every variable is compared between the two
/// true groups with a Mann-Whitney U test (p < 0.05 counts as significant).
/// Variable i is then correlated with variable i + I/2 (p < 0.01 counts as
/// significant); that part is skipped, leaving the optionals empty, when I
/// is odd. Requires ground-truth labels.
DescriptiveStats descriptive_scan(const Dataset& dataset);

// base_seed XOR hash(I, J, k, replicate).
std::uint64_t replicate_seed(std::uint64_t base_seed, const CellKey& cell, int replicate);

/// One dataset through the whole pipeline: generate, correlation distance,
/// Ward tree, then for each RV count cut, extract RVs, k-means and score.
ReplicateResult run_replicate(const GeneratorParams& params, std::span<const int> rv_counts,
                              int restarts, bool with_descriptive = false, int replicate = 0);

struct GridResult {
  std::vector<ReplicateResult> replicates;  // sorted by (I, J, k, replicate)
  std::vector<CellSummary> cells;           // sorted by (I, J, k, rv_count)
};

struct CellProgress {
  CellKey cell;
  int completed = 0;
  int failed = 0;
};

GeneratorParams replicate_params(const GridConfig& config, const CellKey& cell, int replicate);

/// Runs every (I, J, k) cell x replicate on `workers` threads. Output does not
/// depend on the worker count. Failed replicates are kept as error rows and
/// excluded from the summaries. `on_cell_done` is called once per finished
/// cell, serialized.
GridResult run_grid(const GridConfig& config, unsigned workers = 1,
                    const std::function<void(const CellProgress&)>& on_cell_done = {});

std::vector<CellSummary> summarize(std::span<const ReplicateResult> results,
                                   std::span<const int> rv_counts);

enum class AnovaAxis { k_values, rv_counts, factor_counts, variable_counts };

std::string_view to_string(AnovaAxis axis);
AnovaAxis parse_anova_axis(std::string_view name);

// Which congruence values enter the ANOVA. Unset coordinates are not
// filtered; rv_count must be set unless the axis is rv_counts.
struct AnovaSelection {
  AnovaAxis axis = AnovaAxis::k_values;
  std::optional<int> variables;
  std::optional<int> factors;
  std::optional<double> k;
  std::optional<int> rv_count;
  bool positive_k_only = false;

  std::string describe_fixed() const;
};

/// Groups congruence counts along the selection's axis and runs a one-way
/// ANOVA over the groups. Throws InvalidArgument if fewer than two groups,
/// or a group with fewer than two values, remain.
stats::TestResult compare_anova(std::span<const ReplicateResult> results,
                                const AnovaSelection& selection);

struct AnovaRow {
  AnovaSelection selection;
  std::optional<stats::TestResult> result;  // empty when the ANOVA was degenerate
};

/// ANOVA along every axis, for every combination of the other coordinates
/// that has at least two groups. The k axis excludes k = 0.
std::vector<AnovaRow> anova_table(std::span<const ReplicateResult> results,
                                  const GridConfig& config);

}  // namespace clv
