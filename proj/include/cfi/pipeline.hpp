#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfi/aggregate.hpp"
#include "cfi/dataset.hpp"
#include "cfi/ssm.hpp"
#include "cfi/transform.hpp"

namespace cfi {

enum class Normalization { Ln, Vn, Maut };
enum class Weighting { Cv, Equal };
enum class SsmInput { Raw, Normalized };

std::string_view normalization_name(Normalization n);
Normalization normalization_from_string(std::string_view name);
std::string_view weighting_name(Weighting w);
Weighting weighting_from_string(std::string_view name);
std::string_view ssm_input_name(SsmInput s);
SsmInput ssm_input_from_string(std::string_view name);

struct PipelineOptions {
    Normalization normalization = Normalization::Maut;
    Weighting weighting = Weighting::Cv;
    SsmInput ssm_input = SsmInput::Raw;  // matrix feeding the SSM shares
    bool renormalize_top = false;        // min-max the group scores again at the top level
    std::optional<Eigen::VectorXd> reference_ranks;  // default (m, m-1, ..., 1)
};

/// Composite scores for one index over the full entity x year grid.
struct IndexSeries {
    std::string name;
    std::vector<std::string> entities;
    std::vector<int> years;
    Eigen::MatrixXd values;  // entities x years
    AggregationMethod method = AggregationMethod::Saw;
};

/// Row/column summaries in the layout of the result tables: per-entity
/// means over years, per-year means and sample standard deviations over
/// entities, plus the grand mean.
struct SummaryTable {
    Eigen::VectorXd regional_average;  // per entity
    Eigen::VectorXd period_average;    // per year
    Eigen::VectorXd period_std;        // per year, divisor m-1
    double grand_mean = 0.0;
};

/// Builds one group's index: per year, normalize the group's columns,
/// weight them, aggregate with the given method. `ds` must be prepped.
IndexSeries build_group_index(const PanelDataset& ds, const HierarchySpec& hierarchy,
                              const std::string& group_id, AggregationMethod method,
                              const PipelineOptions& options = {},
                              WarningLog* warnings = nullptr);

/// Scores the candidates on this group alone, picks the minimum-mean-loss
/// method, and returns the index built under it together with the report.
std::pair<IndexSeries, SsmReport> select_and_build(const PanelDataset& ds,
                                                   const HierarchySpec& hierarchy,
                                                   const std::string& group_id,
                                                   const std::vector<AggregationMethod>& candidates,
                                                   const PipelineOptions& options = {},
                                                   WarningLog* warnings = nullptr);

/// Second aggregation level: per year, the group scores form an m x k
/// matrix treated as already-normalized benefit indicators, re-weighted and
/// aggregated with the same method.
IndexSeries build_top_index(const std::vector<IndexSeries>& groups, AggregationMethod method,
                            const std::string& name, const PipelineOptions& options = {},
                            WarningLog* warnings = nullptr);

SummaryTable summarize(const IndexSeries& series);

struct BuildResult {
    std::vector<IndexSeries> group_series;
    IndexSeries top;
    SsmReport ssm;
};

/// Full run: prep, method selection pooled over every group's yearly
/// losses, group indices under the selected method, then the top index.
/// `ds` is the validated (un-prepped) dataset.
BuildResult build_index(const PanelDataset& ds, const HierarchySpec& hierarchy,
                        const std::vector<AggregationMethod>& candidates,
                        const PipelineOptions& options = {}, WarningLog* warnings = nullptr);

}  // namespace cfi
