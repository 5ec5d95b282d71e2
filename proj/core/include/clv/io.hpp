#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clv/classify.hpp"
#include "clv/dataset.hpp"
#include "clv/experiment.hpp"
#include "clv/linkage.hpp"

namespace clv {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text, std::string_view what);
long long parse_integer(std::string_view text, std::string_view what);

// subject_id,group,v0001,...; the group column is optional on input.
void write_dataset_csv(std::ostream& os, const Dataset& dataset);
Dataset read_dataset_csv(std::istream& is);

void write_dendrogram_csv(std::ostream& os, const Dendrogram& tree);
void write_cut_csv(std::ostream& os, const ClusterCut& cut,
                   std::span<const std::string> variable_names);

// With truth: a "# congruence_count=..,congruence_fraction=.." line, then
// subject_id,true_group,predicted_group. Without: subject_id,predicted_group.
void write_classification_csv(std::ostream& os, const Dataset& dataset,
                              std::span<const int> predicted,
                              const std::optional<Congruence>& score);

void write_replicates_csv(std::ostream& os, std::span<const ReplicateResult> results);
void write_cells_csv(std::ostream& os, std::span<const CellSummary> cells);
void write_descriptive_csv(std::ostream& os, std::span<const ReplicateResult> results);
void write_anova_csv(std::ostream& os, std::span<const AnovaRow> rows);

}  // namespace clv
