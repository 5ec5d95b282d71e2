#include "clv/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "clv/correlation.hpp"
#include "clv/errors.hpp"
#include "clv/io.hpp"
#include "clv/linkage.hpp"
#include "clv/resultant.hpp"

namespace clv {
namespace {

constexpr double kUSignificance = 0.05;
constexpr double kRSignificance = 0.01;
constexpr std::uint64_t kKMeansStream = 1000;

std::string cell_label(const CellKey& cell, int replicate) {
  std::ostringstream os;
  os << "cell (I=" << cell.variables << ", J=" << cell.factors << ", k=" << format_double(cell.k)
     << ") replicate " << replicate;
  return os.str();
}

template <typename T>
bool has_duplicates(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

}  // namespace

void GridConfig::validate() const {
  if (variables_list.empty()) throw InvalidArgument("variables list is empty");
  if (factors_list.empty()) throw InvalidArgument("factors list is empty");
  if (k_list.empty()) throw InvalidArgument("k list is empty");
  if (rv_counts.empty()) throw InvalidArgument("rv_counts list is empty");
  if (replicates < 1) throw InvalidArgument("replicates must be >= 1");
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (has_duplicates(variables_list)) throw InvalidArgument("variables list has duplicates");
  if (has_duplicates(factors_list)) throw InvalidArgument("factors list has duplicates");
  if (has_duplicates(k_list)) throw InvalidArgument("k list has duplicates");
  if (has_duplicates(rv_counts)) throw InvalidArgument("rv_counts list has duplicates");
  for (int rv : rv_counts)
    if (rv < 2 || rv > 6) throw InvalidArgument("rv_counts entries must be in 2..6");
  // Every cell must be a valid generator configuration.
  for (int i : variables_list)
    for (int j : factors_list)
      for (double k : k_list) {
        GeneratorParams p;
        p.num_variables = i;
        p.num_factors = j;
        p.num_subjects = subjects;
        p.factor_strength = k;
        p.loading_floor = loading_floor;
        p.validate();
        for (int rv : rv_counts)
          if (rv > i) throw InvalidArgument("rv count exceeds the number of variables");
      }
}

bool GridConfig::wants_descriptive(int variables, int factors) const {
  return std::find(descriptive_cells.begin(), descriptive_cells.end(),
                   std::make_pair(variables, factors)) != descriptive_cells.end();
}

DescriptiveStats descriptive_scan(const Dataset& dataset) {
  if (!dataset.has_labels()) throw InvalidArgument("descriptive_scan: dataset has no group labels");
  const Matrix& x = dataset.observations;
  const Eigen::Index subjects = x.rows();
  const Eigen::Index variables = x.cols();
  if (static_cast<Eigen::Index>(dataset.true_labels.size()) != subjects)
    throw InvalidArgument("descriptive_scan: label count does not match subjects");
  if (variables < 1) throw InvalidArgument("descriptive_scan: no variables");

  DescriptiveStats out;
  std::vector<double> g1, g2;
  int u_hits = 0;
  for (Eigen::Index i = 0; i < variables; ++i) {
    g1.clear();
    g2.clear();
    for (Eigen::Index s = 0; s < subjects; ++s)
      (dataset.true_labels[static_cast<std::size_t>(s)] == 1 ? g1 : g2).push_back(x(s, i));
    if (stats::mann_whitney_u(g1, g2).p_value < kUSignificance) ++u_hits;
  }
  out.u_sig_fraction = static_cast<double>(u_hits) / static_cast<double>(variables);

  if (variables % 2 == 0) {
    const Eigen::Index half = variables / 2;
    int r_hits = 0;
    double abs_r_sum = 0.0;
    std::vector<double> a(static_cast<std::size_t>(subjects)), b(a.size());
    for (Eigen::Index i = 0; i < half; ++i) {
      for (Eigen::Index s = 0; s < subjects; ++s) {
        a[static_cast<std::size_t>(s)] = x(s, i);
        b[static_cast<std::size_t>(s)] = x(s, i + half);
      }
      const stats::TestResult r = stats::pearson_test(a, b);
      if (r.p_value < kRSignificance) ++r_hits;
      abs_r_sum += std::abs(r.statistic);
    }
    out.r_sig_fraction = static_cast<double>(r_hits) / static_cast<double>(half);
    out.mean_r = abs_r_sum / static_cast<double>(half);
  }
  return out;
}

std::uint64_t replicate_seed(std::uint64_t base_seed, const CellKey& cell, int replicate) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(cell.variables));
  h = mix64(h ^ static_cast<std::uint64_t>(cell.factors));
  h = mix64(h ^ std::bit_cast<std::uint64_t>(cell.k + 0.0));  // +0.0 folds -0 into 0
  h = mix64(h ^ static_cast<std::uint64_t>(replicate));
  return base_seed ^ h;
}

ReplicateResult run_replicate(const GeneratorParams& params, std::span<const int> rv_counts,
                              int restarts, bool with_descriptive, int replicate) {
  ReplicateResult result;
  result.cell = {params.num_variables, params.num_factors, params.factor_strength};
  result.replicate = replicate;
  result.seed = params.seed;
  try {
    const GeneratedData data = generate_dataset(params);
    const Dataset& ds = data.dataset;
    const Dendrogram tree = ward_linkage(correlation_distance_matrix(ds));
    for (int rv : rv_counts) {
      const RVMatrix rvs = extract_rvs(ds, cut_tree(tree, rv));
      KMeansOptions opts;
      opts.restarts = restarts;
      opts.seed = substream_seed(params.seed, kKMeansStream + static_cast<std::uint64_t>(rv));
      const KMeansResult km = kmeans_two(rvs.values, opts);
      result.congruence_by_rv[rv] = congruence(km.labels, ds.true_labels);
    }
    if (with_descriptive) result.descriptive = descriptive_scan(ds);
  } catch (const std::exception& e) {
    throw ReplicateError(cell_label(result.cell, replicate) + ": " + e.what());
  }
  return result;
}

GeneratorParams replicate_params(const GridConfig& config, const CellKey& cell, int replicate) {
  GeneratorParams p;
  p.num_variables = cell.variables;
  p.num_factors = cell.factors;
  p.num_subjects = config.subjects;
  p.factor_strength = cell.k;
  p.loading_floor = config.loading_floor;
  p.m_distribution = config.m_distribution;
  p.epsilon_distribution = config.epsilon_distribution;
  p.seed = replicate_seed(config.base_seed, cell, replicate);
  return p;
}

GridResult run_grid(const GridConfig& config, unsigned workers,
                    const std::function<void(const CellProgress&)>& on_cell_done) {
  config.validate();

  std::vector<CellKey> cells;
  for (int i : config.variables_list)
    for (int j : config.factors_list)
      for (double k : config.k_list) cells.push_back({i, j, k});
  std::sort(cells.begin(), cells.end());

  struct Job {
    std::size_t cell;
    int replicate;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (int r = 0; r < config.replicates; ++r) jobs.push_back({c, r});

  GridResult out;
  out.replicates.resize(jobs.size());
  std::vector<std::atomic<int>> done(cells.size());
  std::vector<std::atomic<int>> failed(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex callback_mutex;

  auto worker = [&] {
    for (std::size_t idx = next.fetch_add(1); idx < jobs.size(); idx = next.fetch_add(1)) {
      const Job& job = jobs[idx];
      const CellKey& cell = cells[job.cell];
      const GeneratorParams params = replicate_params(config, cell, job.replicate);
      ReplicateResult& slot = out.replicates[idx];
      try {
        slot = run_replicate(params, config.rv_counts, config.restarts,
                             config.wants_descriptive(cell.variables, cell.factors), job.replicate);
      } catch (const std::exception& e) {
        slot = ReplicateResult{};
        slot.cell = cell;
        slot.replicate = job.replicate;
        slot.seed = params.seed;
        slot.error = e.what();
        failed[job.cell].fetch_add(1);
      }
      if (done[job.cell].fetch_add(1) + 1 == config.replicates && on_cell_done) {
        std::lock_guard lock(callback_mutex);
        on_cell_done({cell, config.replicates, failed[job.cell].load()});
      }
    }
  };

  const unsigned count = std::max(1u, workers);
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
  }

  out.cells = summarize(out.replicates, config.rv_counts);
  return out;
}

std::vector<CellSummary> summarize(std::span<const ReplicateResult> results,
                                   std::span<const int> rv_counts) {
  std::map<std::pair<CellKey, int>, std::vector<double>> groups;
  std::set<CellKey> seen;
  for (const ReplicateResult& r : results) {
    seen.insert(r.cell);
    if (!r.ok()) continue;
    for (const auto& [rv, c] : r.congruence_by_rv)
      groups[{r.cell, rv}].push_back(static_cast<double>(c.count));
  }

  std::vector<int> rvs(rv_counts.begin(), rv_counts.end());
  std::sort(rvs.begin(), rvs.end());
  std::vector<CellSummary> out;
  for (const CellKey& cell : seen) {
    for (int rv : rvs) {
      CellSummary s;
      s.cell = cell;
      s.rv_count = rv;
      auto it = groups.find({cell, rv});
      if (it != groups.end()) {
        const std::vector<double>& v = it->second;
        s.n = static_cast<int>(v.size());
        double sum = 0.0;
        for (double x : v) sum += x;
        s.mean_congruence = sum / static_cast<double>(v.size());
        if (v.size() > 1) {
          double ss = 0.0;
          for (double x : v) ss += (x - s.mean_congruence) * (x - s.mean_congruence);
          s.sd_congruence = std::sqrt(ss / static_cast<double>(v.size() - 1));
        }
      } else {
        s.mean_congruence = std::nan("");
      }
      out.push_back(s);
    }
  }
  return out;
}

std::string_view to_string(AnovaAxis axis) {
  switch (axis) {
    case AnovaAxis::k_values:
      return "k_values";
    case AnovaAxis::rv_counts:
      return "rv_counts";
    case AnovaAxis::factor_counts:
      return "factor_counts";
    case AnovaAxis::variable_counts:
      return "variable_counts";
  }
  return "unknown";
}

AnovaAxis parse_anova_axis(std::string_view name) {
  for (AnovaAxis a : {AnovaAxis::k_values, AnovaAxis::rv_counts, AnovaAxis::factor_counts,
                      AnovaAxis::variable_counts})
    if (to_string(a) == name) return a;
  throw InvalidArgument("unknown ANOVA axis '" + std::string(name) + "'");
}

std::string AnovaSelection::describe_fixed() const {
  std::vector<std::string> parts;
  if (variables) parts.push_back("I=" + std::to_string(*variables));
  if (factors) parts.push_back("J=" + std::to_string(*factors));
  if (k) parts.push_back("k=" + format_double(*k));
  if (rv_count) parts.push_back("rv=" + std::to_string(*rv_count));
  if (positive_k_only) parts.push_back("k>0");
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ";" : "") + parts[i];
  return s;
}

stats::TestResult compare_anova(std::span<const ReplicateResult> results,
                                const AnovaSelection& sel) {
  if (sel.axis != AnovaAxis::rv_counts && !sel.rv_count)
    throw InvalidArgument("compare_anova: rv_count must be fixed for axis " +
                          std::string(to_string(sel.axis)));

  std::map<double, std::vector<double>> groups;
  for (const ReplicateResult& r : results) {
    if (!r.ok()) continue;
    if (sel.variables && r.cell.variables != *sel.variables) continue;
    if (sel.factors && r.cell.factors != *sel.factors) continue;
    if (sel.k && r.cell.k != *sel.k) continue;
    if (sel.positive_k_only && !(r.cell.k > 0.0)) continue;
    for (const auto& [rv, c] : r.congruence_by_rv) {
      if (sel.rv_count && rv != *sel.rv_count) continue;
      double key = 0.0;
      switch (sel.axis) {
        case AnovaAxis::k_values:
          key = r.cell.k;
          break;
        case AnovaAxis::rv_counts:
          key = rv;
          break;
        case AnovaAxis::factor_counts:
          key = r.cell.factors;
          break;
        case AnovaAxis::variable_counts:
          key = r.cell.variables;
          break;
      }
      groups[key].push_back(static_cast<double>(c.count));
    }
  }
  if (groups.size() < 2)
    throw InvalidArgument("compare_anova: fewer than 2 groups along " +
                          std::string(to_string(sel.axis)));
  std::vector<std::vector<double>> values;
  for (auto& [key, v] : groups) {
    if (v.size() < 2) throw InvalidArgument("compare_anova: a group has fewer than 2 replicates");
    values.push_back(std::move(v));
  }
  return stats::anova_oneway(values);
}

std::vector<AnovaRow> anova_table(std::span<const ReplicateResult> results,
                                  const GridConfig& config) {
  auto sorted = [](auto v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto is = sorted(config.variables_list);
  const auto js = sorted(config.factors_list);
  const auto ks = sorted(config.k_list);
  const auto rvs = sorted(config.rv_counts);

  std::vector<AnovaSelection> selections;
  for (int i : is)
    for (int j : js)
      for (int rv : rvs) {
        AnovaSelection s{AnovaAxis::k_values, i, j, std::nullopt, rv, true};
        selections.push_back(s);
      }
  for (int i : is)
    for (int j : js)
      for (double k : ks) selections.push_back({AnovaAxis::rv_counts, i, j, k, std::nullopt, false});
  if (js.size() > 1)
    for (int i : is)
      for (double k : ks)
        for (int rv : rvs) selections.push_back({AnovaAxis::factor_counts, i, std::nullopt, k, rv, false});
  if (is.size() > 1)
    for (int j : js)
      for (double k : ks)
        for (int rv : rvs) selections.push_back({AnovaAxis::variable_counts, std::nullopt, j, k, rv, false});

  std::vector<AnovaRow> rows;
  for (const AnovaSelection& s : selections) {
    AnovaRow row{s, std::nullopt};
    try {
      row.result = compare_anova(results, s);
    } catch (const InvalidArgument&) {
      continue;  // not enough groups along this axis
    } catch (const DegenerateInput&) {
      // zero within-group spread; keep the row, report no statistic
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace clv
