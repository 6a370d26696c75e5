#pragma once

#include <string>
#include <vector>

#include "cfi/panel_reg.hpp"
#include "cfi/pipeline.hpp"
#include "cfi/ssm.hpp"

namespace cfi {

/// "%.Nf" with the C locale ('.' decimal separator).
std::string format_fixed(double value, int decimals);

/// Index table in the layout of the result tables: one row per entity plus
/// "Period average" / "Standard deviation" rows and a "Regional average"
/// column (the period-average row carries the grand mean there).
std::string index_table_csv(const IndexSeries& series, const SummaryTable& summary,
                            int decimals = 3);

/// Methods x per-year losses plus their mean, 4 decimals by default.
std::string ssm_csv(const SsmReport& report, int decimals = 4);

/// variable,mean,std_dev,minimum,median,maximum rows.
std::string describe_csv(const std::vector<DescriptiveRow>& rows, int decimals = 6);

std::string hausman_text(const HausmanResult& result, const std::string& test_label);

/// Side-by-side estimator columns; each coefficient cell reads like
/// "0.775972*** (4.489495)" with the t-value in parentheses.
std::string regression_text(const std::vector<RegressionResult>& results,
                            const HausmanResult* hausman = nullptr, int decimals = 6);
std::string regression_csv(const std::vector<RegressionResult>& results, int decimals = 6);

/// One serialized coefficient cell: value, stars, parenthesized t-value.
std::string coefficient_cell(const Coefficient& coef, int decimals = 6);

/// Renders CSV text as an aligned plain-text table (for the report command).
std::string align_csv(const std::string& csv_text);

}  // namespace cfi
