#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace clv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Observations for S subjects (rows) over I variables (columns). Group labels
// are 1 or 2; an empty label vector means ground truth is unknown.
struct Dataset {
  Matrix observations;
  std::vector<int> true_labels;
  std::vector<std::string> subject_ids;
  std::vector<std::string> variable_names;

  std::size_t num_subjects() const { return static_cast<std::size_t>(observations.rows()); }
  std::size_t num_variables() const { return static_cast<std::size_t>(observations.cols()); }
  bool has_labels() const { return !true_labels.empty(); }
};

// "v0001", "v0002", ...; widened past four digits when needed.
std::string variable_name(std::size_t index, std::size_t count);

}  // namespace clv
