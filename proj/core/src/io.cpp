#include "clv/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "clv/errors.hpp"

namespace clv {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string line_error(std::size_t line, const std::string& msg) {
  return "line " + std::to_string(line) + ": " + msg;
}

}  // namespace

std::string variable_name(std::size_t index, std::size_t count) {
  const std::size_t width = std::max<std::size_t>(4, std::to_string(count).size());
  std::string digits = std::to_string(index + 1);
  return "v" + std::string(width - digits.size(), '0') + digits;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v))
    throw InvalidArgument(std::string(what) + ": '" + std::string(text) + "' is not a finite number");
  return v;
}

long long parse_integer(std::string_view text, std::string_view what) {
  text = trim(text);
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw InvalidArgument(std::string(what) + ": '" + std::string(text) + "' is not an integer");
  return v;
}

void write_dataset_csv(std::ostream& os, const Dataset& ds) {
  const bool labels = ds.has_labels();
  os << "subject_id";
  if (labels) os << ",group";
  for (std::size_t i = 0; i < ds.num_variables(); ++i)
    os << ',' << (i < ds.variable_names.size() ? ds.variable_names[i] : variable_name(i, ds.num_variables()));
  os << '\n';
  for (std::size_t s = 0; s < ds.num_subjects(); ++s) {
    os << (s < ds.subject_ids.size() ? ds.subject_ids[s] : std::to_string(s + 1));
    if (labels) os << ',' << ds.true_labels[s];
    for (std::size_t i = 0; i < ds.num_variables(); ++i)
      os << ',' << format_double(ds.observations(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)));
    os << '\n';
  }
}

Dataset read_dataset_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      if (!trim(line).empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw InvalidArgument("dataset CSV is empty");

  const auto header = split_csv(line);
  if (header.empty() || header[0] != "subject_id")
    throw InvalidArgument(line_error(line_no, "first column must be subject_id"));
  const bool labels = header.size() > 1 && header[1] == "group";
  const std::size_t first_var = labels ? 2 : 1;
  if (header.size() <= first_var) throw InvalidArgument(line_error(line_no, "no variable columns"));

  Dataset ds;
  for (std::size_t c = first_var; c < header.size(); ++c) {
    if (header[c].empty()) throw InvalidArgument(line_error(line_no, "empty column name"));
    ds.variable_names.emplace_back(header[c]);
  }
  const std::size_t num_vars = ds.variable_names.size();

  std::vector<std::vector<double>> rows;
  while (next_line()) {
    const auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw InvalidArgument(line_error(line_no, "expected " + std::to_string(header.size()) +
                                                    " fields, found " + std::to_string(cells.size())));
    ds.subject_ids.emplace_back(cells[0]);
    if (labels) {
      const long long g = parse_integer(cells[1], line_error(line_no, "group"));
      if (g != 1 && g != 2) throw InvalidArgument(line_error(line_no, "group must be 1 or 2"));
      ds.true_labels.push_back(static_cast<int>(g));
    }
    std::vector<double> row(num_vars);
    for (std::size_t c = 0; c < num_vars; ++c)
      row[c] = parse_double(cells[first_var + c],
                            line_error(line_no, "column " + ds.variable_names[c]));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidArgument("dataset CSV has no subject rows");

  ds.observations.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(num_vars));
  for (std::size_t s = 0; s < rows.size(); ++s)
    for (std::size_t c = 0; c < num_vars; ++c)
      ds.observations(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(c)) = rows[s][c];
  return ds;
}

void write_dendrogram_csv(std::ostream& os, const Dendrogram& tree) {
  os << "merge_index,left_id,right_id,height,size\n";
  for (std::size_t t = 0; t < tree.merges.size(); ++t) {
    const Merge& m = tree.merges[t];
    os << t + 1 << ',' << m.left << ',' << m.right << ',' << format_double(m.height) << ','
       << m.size << '\n';
  }
}

void write_cut_csv(std::ostream& os, const ClusterCut& cut, std::span<const std::string> names) {
  os << "variable_name,cluster_index\n";
  for (std::size_t i = 0; i < cut.assignment.size(); ++i)
    os << (i < names.size() ? names[i] : variable_name(i, cut.assignment.size())) << ','
       << cut.assignment[i] << '\n';
}

void write_classification_csv(std::ostream& os, const Dataset& ds, std::span<const int> predicted,
                              const std::optional<Congruence>& score) {
  const bool truth = ds.has_labels();
  if (truth && score)
    os << "# congruence_count=" << score->count
       << ",congruence_fraction=" << format_double(score->fraction) << '\n';
  os << (truth ? "subject_id,true_group,predicted_group\n" : "subject_id,predicted_group\n");
  for (std::size_t s = 0; s < predicted.size(); ++s) {
    os << (s < ds.subject_ids.size() ? ds.subject_ids[s] : std::to_string(s + 1));
    if (truth) os << ',' << ds.true_labels[s];
    os << ',' << predicted[s] << '\n';
  }
}

void write_replicates_csv(std::ostream& os, std::span<const ReplicateResult> results) {
  os << "I,J,k,replicate,rv_count,congruence_count,congruence_fraction\n";
  for (const ReplicateResult& r : results) {
    if (!r.ok()) continue;
    for (const auto& [rv, c] : r.congruence_by_rv)
      os << r.cell.variables << ',' << r.cell.factors << ',' << format_double(r.cell.k) << ','
         << r.replicate << ',' << rv << ',' << c.count << ',' << format_double(c.fraction) << '\n';
  }
}

void write_cells_csv(std::ostream& os, std::span<const CellSummary> cells) {
  os << "I,J,k,rv_count,n,mean_congruence,sd_congruence\n";
  for (const CellSummary& c : cells)
    os << c.cell.variables << ',' << c.cell.factors << ',' << format_double(c.cell.k) << ','
       << c.rv_count << ',' << c.n << ',' << format_double(c.mean_congruence) << ','
       << format_double(c.sd_congruence) << '\n';
}

void write_descriptive_csv(std::ostream& os, std::span<const ReplicateResult> results) {
  os << "I,J,k,replicate,u_sig_fraction,r_sig_fraction,mean_r\n";
  for (const ReplicateResult& r : results) {
    if (!r.ok() || !r.descriptive) continue;
    const DescriptiveStats& d = *r.descriptive;
    os << r.cell.variables << ',' << r.cell.factors << ',' << format_double(r.cell.k) << ','
       << r.replicate << ',' << format_double(d.u_sig_fraction) << ','
       << (d.r_sig_fraction ? format_double(*d.r_sig_fraction) : "") << ','
       << (d.mean_r ? format_double(*d.mean_r) : "") << '\n';
  }
}

void write_anova_csv(std::ostream& os, std::span<const AnovaRow> rows) {
  os << "axis,fixed_coordinates,F,p\n";
  for (const AnovaRow& row : rows) {
    os << to_string(row.selection.axis) << ',' << row.selection.describe_fixed() << ',';
    if (row.result)
      os << format_double(row.result->statistic) << ',' << format_double(row.result->p_value);
    else
      os << "nan,nan";
    os << '\n';
  }
}

}  // namespace clv
