#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "clv/classify.hpp"
#include "clv/config.hpp"
#include "clv/correlation.hpp"
#include "clv/datagen.hpp"
#include "clv/errors.hpp"
#include "clv/experiment.hpp"
#include "clv/io.hpp"
#include "clv/linkage.hpp"
#include "clv/resultant.hpp"

namespace clv::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Writes through a temporary file so a failed run leaves no partial output.
void write_file(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
    os << content;
    if (!os.flush()) throw std::runtime_error("write failed for '" + path.string() + "'");
  }
  fs::rename(tmp, path);
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input '" + path + "'");
  try {
    return read_dataset_csv(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

struct GenerateArgs {
  std::optional<int> variables, subjects, factors;
  std::optional<double> k, q;
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  GeneratorParams params;
  if (!a.config.empty()) params = generator_params_from(KeyValueConfig::load(a.config), params);
  if (a.variables) params.num_variables = *a.variables;
  if (a.subjects) params.num_subjects = *a.subjects;
  if (a.factors) params.num_factors = *a.factors;
  if (a.k) params.factor_strength = *a.k;
  if (a.q) params.loading_floor = *a.q;
  const bool seeded = a.seed || (!a.config.empty() && KeyValueConfig::load(a.config).has("seed"));
  if (a.seed) params.seed = *a.seed;
  if (!seeded) params.seed = entropy_seed();
  params.validate();

  const GeneratedData data = generate_dataset(params);
  write_file(a.out, render([&](std::ostream& os) { write_dataset_csv(os, data.dataset); }));
  out << "seed: " << params.seed << '\n';
  return 0;
}

struct ClassifyArgs {
  std::string input;
  int rv = 6;
  int restarts = 10;
  std::optional<std::uint64_t> seed;
  std::string out, dendrogram, clusters;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  const Dataset ds = load_dataset(a.input);
  if (static_cast<std::size_t>(a.rv) > ds.num_variables())
    throw UsageError("--rv " + std::to_string(a.rv) + " exceeds the number of variables");
  const std::uint64_t seed = a.seed ? *a.seed : entropy_seed();

  const Dendrogram tree = ward_linkage(correlation_distance_matrix(ds));
  const ClusterCut cut = cut_tree(tree, a.rv);
  const RVMatrix rvs = extract_rvs(ds, cut);
  KMeansOptions opts;
  opts.restarts = a.restarts;
  opts.seed = seed;
  const KMeansResult km = kmeans_two(rvs.values, opts);

  std::optional<Congruence> score;
  if (ds.has_labels()) score = congruence(km.labels, ds.true_labels);

  if (!a.out.empty())
    write_file(a.out, render([&](std::ostream& os) { write_classification_csv(os, ds, km.labels, score); }));
  if (!a.dendrogram.empty())
    write_file(a.dendrogram, render([&](std::ostream& os) { write_dendrogram_csv(os, tree); }));
  if (!a.clusters.empty())
    write_file(a.clusters, render([&](std::ostream& os) { write_cut_csv(os, cut, ds.variable_names); }));

  out << "seed: " << seed << '\n';
  if (score) {
    out << "congruence_count: " << score->count << '\n'
        << "congruence_fraction: " << format_double(score->fraction) << '\n';
  } else {
    for (std::size_t s = 0; s < km.labels.size(); ++s)
      out << ds.subject_ids[s] << ',' << km.labels[s] << '\n';
  }
  return 0;
}

struct ExperimentArgs {
  std::string config;
  std::string out;
  unsigned workers = 0;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
};

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  GridConfig grid;
  if (!a.config.empty()) grid = grid_config_from(KeyValueConfig::load(a.config));
  if (a.seed) grid.base_seed = *a.seed;
  if (a.restarts) grid.restarts = *a.restarts;
  grid.validate();

  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw std::runtime_error("cannot create output directory '" + a.out + "'");

  const unsigned workers = a.workers > 0 ? a.workers : std::max(1u, std::thread::hardware_concurrency());
  out << "base_seed: " << grid.base_seed << '\n' << "restarts: " << grid.restarts << '\n';
  const GridResult result = run_grid(grid, workers, [&](const CellProgress& p) {
    out << "cell I=" << p.cell.variables << " J=" << p.cell.factors
        << " k=" << format_double(p.cell.k) << " done (" << p.completed - p.failed << '/'
        << p.completed << " ok)\n"
        << std::flush;
  });

  const std::vector<AnovaRow> anova = anova_table(result.replicates, grid);
  write_file(dir / "replicates.csv",
             render([&](std::ostream& os) { write_replicates_csv(os, result.replicates); }));
  write_file(dir / "cells.csv", render([&](std::ostream& os) { write_cells_csv(os, result.cells); }));
  write_file(dir / "descriptive.csv",
             render([&](std::ostream& os) { write_descriptive_csv(os, result.replicates); }));
  write_file(dir / "anova.csv", render([&](std::ostream& os) { write_anova_csv(os, anova); }));

  int failures = 0;
  for (const ReplicateResult& r : result.replicates)
    if (!r.ok()) {
      ++failures;
      out << "failed: " << r.error << '\n';
    }
  return failures == 0 ? 0 : 3;
}

struct ScanArgs {
  std::string input;
  std::string out;
};

int cmd_scan(const ScanArgs& a, std::ostream& out) {
  const Dataset ds = load_dataset(a.input);
  const DescriptiveStats d = descriptive_scan(ds);
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  out << "u_sig_fraction: " << format_double(d.u_sig_fraction) << '\n';
  if (d.r_sig_fraction)
    out << "r_sig_fraction: " << opt(d.r_sig_fraction) << '\n' << "mean_r: " << opt(d.mean_r) << '\n';
  else
    out << "correlation scan skipped: odd number of variables\n";
  if (!a.out.empty())
    write_file(a.out, render([&](std::ostream& os) {
                 os << "u_sig_fraction,r_sig_fraction,mean_r\n"
                    << format_double(d.u_sig_fraction) << ',' << opt(d.r_sig_fraction) << ','
                    << opt(d.mean_r) << '\n';
               }));
  return 0;
}

std::string one_line(std::string msg) {
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  return msg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subject classification by clustering variables around latent components", "clvtool"};
  app.require_subcommand(1, 1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic two-group dataset");
  generate->add_option("--variables", gen.variables, "Number of variables I");
  generate->add_option("--subjects", gen.subjects, "Number of subjects S (even)");
  generate->add_option("--factors", gen.factors, "Number of latent factors J");
  generate->add_option("--k", gen.k, "Factor strength in [0,1]");
  generate->add_option("--q", gen.q, "Loading floor in [0,1]");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--config", gen.config, "Generator key = value config file");
  generate->add_option("--out", gen.out, "Output CSV path")->required();

  ClassifyArgs cls;
  auto* classify = app.add_subcommand("classify", "Classify subjects of a dataset CSV into two groups");
  classify->add_option("input", cls.input, "Dataset CSV")->required();
  classify->add_option("--rv", cls.rv, "Number of resultant vectors (2..6)")->check(CLI::Range(2, 6));
  classify->add_option("--restarts", cls.restarts, "k-means restarts")->check(CLI::PositiveNumber);
  classify->add_option("--seed", cls.seed, "Random seed");
  classify->add_option("--out", cls.out, "Classification CSV path");
  classify->add_option("--dendrogram", cls.dendrogram, "Dendrogram CSV path");
  classify->add_option("--clusters", cls.clusters, "Variable cluster CSV path");

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "Run the Monte-Carlo parameter grid");
  experiment->add_option("--config", exp.config, "Grid key = value config file");
  experiment->add_option("--out", exp.out, "Output directory")->required();
  experiment->add_option("--workers", exp.workers, "Worker threads (default: all cores)");
  experiment->add_option("--seed", exp.seed, "Base seed (overrides the config)");
  experiment->add_option("--restarts", exp.restarts, "k-means restarts (overrides the config)")
      ->check(CLI::PositiveNumber);

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Descriptive group and correlation scan of a dataset CSV");
  scan->add_option("input", scan_args.input, "Dataset CSV with a group column")->required();
  scan->add_option("--out", scan_args.out, "Output CSV path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "clvtool: usage error: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (classify->parsed()) return cmd_classify(cls, out);
    if (experiment->parsed()) return cmd_experiment(exp, out);
    if (scan->parsed()) return cmd_scan(scan_args, out);
  } catch (const UsageError& e) {
    err << "clvtool: usage error: " << one_line(e.what()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "clvtool: error: " << one_line(e.what()) << '\n';
    return 1;
  }
  return 2;
}

}  // namespace clv::cli
