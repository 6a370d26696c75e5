#include "cfi/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace cfi {

std::string_view normalization_name(Normalization n) {
    switch (n) {
        case Normalization::Ln: return "ln";
        case Normalization::Vn: return "vn";
        case Normalization::Maut: return "maut";
    }
    return "?";
}

Normalization normalization_from_string(std::string_view name) {
    std::string key;
    for (char c : name) key.push_back(static_cast<char>(std::tolower(c)));
    if (key == "ln") return Normalization::Ln;
    if (key == "vn") return Normalization::Vn;
    if (key == "maut") return Normalization::Maut;
    throw Error(ErrorCode::InvalidConfig, "unknown normalization '" + std::string(name) + "'");
}

std::string_view weighting_name(Weighting w) {
    return w == Weighting::Cv ? "cv" : "equal";
}

Weighting weighting_from_string(std::string_view name) {
    std::string key;
    for (char c : name) key.push_back(static_cast<char>(std::tolower(c)));
    if (key == "cv") return Weighting::Cv;
    if (key == "equal") return Weighting::Equal;
    throw Error(ErrorCode::InvalidConfig, "unknown weighting '" + std::string(name) + "'");
}

std::string_view ssm_input_name(SsmInput s) {
    return s == SsmInput::Raw ? "raw" : "normalized";
}

SsmInput ssm_input_from_string(std::string_view name) {
    std::string key;
    for (char c : name) key.push_back(static_cast<char>(std::tolower(c)));
    if (key == "raw") return SsmInput::Raw;
    if (key == "normalized") return SsmInput::Normalized;
    throw Error(ErrorCode::InvalidConfig, "unknown ssm input '" + std::string(name) + "'");
}

namespace {

DecisionMatrix select_columns(const DecisionMatrix& mat, const std::vector<std::string>& ids) {
    DecisionMatrix out;
    out.entities = mat.entities;
    out.indicators = ids;
    out.stage = mat.stage;
    out.cells.resize(mat.cells.rows(), static_cast<Eigen::Index>(ids.size()));
    for (std::size_t j = 0; j < ids.size(); ++j) {
        const auto it = std::find(mat.indicators.begin(), mat.indicators.end(), ids[j]);
        if (it == mat.indicators.end())
            throw Error(ErrorCode::UnknownIndicator, "indicator '" + ids[j] + "' not in matrix");
        out.cells.col(static_cast<Eigen::Index>(j)) =
            mat.cells.col(it - mat.indicators.begin());
    }
    return out;
}

Eigen::VectorXd reference_ranks(const PipelineOptions& options, Eigen::Index m) {
    if (!options.reference_ranks.has_value()) return default_reference_ranks(m);
    if (options.reference_ranks->size() != m)
        throw Error(ErrorCode::DimensionMismatch,
                    "reference rank sequence does not match the entity count");
    return *options.reference_ranks;
}

DecisionMatrix normalize(const DecisionMatrix& raw, const GlobalExtrema& ext,
                         const std::vector<Polarity>& polarity, const PipelineOptions& options,
                         WarningLog* warnings) {
    switch (options.normalization) {
        case Normalization::Ln: return normalize_ln(raw);
        case Normalization::Vn: return normalize_vn(raw);
        case Normalization::Maut: return normalize_maut(raw, ext, polarity, warnings);
    }
    throw Error(ErrorCode::InvalidConfig, "unhandled normalization");
}

WeightVector weigh(const DecisionMatrix& normalized, const PipelineOptions& options,
                   WarningLog* warnings) {
    return options.weighting == Weighting::Cv ? cv_weights(normalized, warnings)
                                              : equal_weights(normalized.cells.cols());
}

// Everything needed to score and assemble one group's index.
struct GroupComputation {
    std::string group_id;
    std::vector<DecisionMatrix> raw;
    std::vector<DecisionMatrix> normalized;
    std::vector<WeightVector> weights;
    std::map<AggregationMethod, Eigen::MatrixXd> scores;  // entities x years
};

GroupComputation compute_group(const PanelDataset& ds, const HierarchySpec& hierarchy,
                               const std::string& group_id,
                               const std::vector<AggregationMethod>& methods,
                               const PipelineOptions& options, WarningLog* warnings) {
    const GroupSpec& group = hierarchy.group(group_id);
    const GlobalExtrema ext = global_extrema(ds);
    std::vector<Polarity> polarity;
    for (const auto& id : group.members) polarity.push_back(hierarchy.indicator(id).polarity);

    GroupComputation comp;
    comp.group_id = group_id;
    for (AggregationMethod method : methods)
        comp.scores[method] =
            Eigen::MatrixXd::Zero(ds.entity_count(), ds.year_count());

    for (Eigen::Index t = 0; t < ds.year_count(); ++t) {
        const DecisionMatrix raw =
            select_columns(slice_year(ds, ds.years[static_cast<std::size_t>(t)]), group.members);
        const DecisionMatrix normalized = normalize(raw, ext, polarity, options, warnings);
        const WeightVector weights = weigh(normalized, options, warnings);
        for (AggregationMethod method : methods)
            comp.scores[method].col(t) = aggregate(method, normalized, weights, warnings).scores;
        comp.raw.push_back(raw);
        comp.normalized.push_back(normalized);
        comp.weights.push_back(weights);
    }
    return comp;
}

std::vector<SsmYearInput> ssm_inputs(const PanelDataset& ds, const GroupComputation& comp,
                                     const std::vector<AggregationMethod>& methods,
                                     const PipelineOptions& options) {
    std::vector<SsmYearInput> inputs;
    for (Eigen::Index t = 0; t < ds.year_count(); ++t) {
        SsmYearInput input;
        input.year = ds.years[static_cast<std::size_t>(t)];
        input.basis = options.ssm_input == SsmInput::Raw
                          ? comp.raw[static_cast<std::size_t>(t)].cells
                          : comp.normalized[static_cast<std::size_t>(t)].cells;
        input.weights = comp.weights[static_cast<std::size_t>(t)];
        for (AggregationMethod method : methods)
            input.ci[method] = comp.scores.at(method).col(t);
        inputs.push_back(std::move(input));
    }
    return inputs;
}

IndexSeries series_from_grid(std::string name, const PanelDataset& ds,
                             AggregationMethod method, const Eigen::MatrixXd& grid) {
    IndexSeries series;
    series.name = std::move(name);
    series.entities = ds.entities;
    series.years = ds.years;
    series.method = method;
    series.values = grid;
    return series;
}

}  // namespace

IndexSeries build_group_index(const PanelDataset& ds, const HierarchySpec& hierarchy,
                              const std::string& group_id, AggregationMethod method,
                              const PipelineOptions& options, WarningLog* warnings) {
    const GroupComputation comp =
        compute_group(ds, hierarchy, group_id, {method}, options, warnings);
    return series_from_grid(group_id, ds, method, comp.scores.at(method));
}

std::pair<IndexSeries, SsmReport> select_and_build(const PanelDataset& ds,
                                                   const HierarchySpec& hierarchy,
                                                   const std::string& group_id,
                                                   const std::vector<AggregationMethod>& candidates,
                                                   const PipelineOptions& options,
                                                   WarningLog* warnings) {
    if (candidates.empty()) throw Error(ErrorCode::InvalidConfig, "no candidate methods");
    const GroupComputation comp =
        compute_group(ds, hierarchy, group_id, candidates, options, warnings);
    const SsmReport report =
        evaluate_methods(ssm_inputs(ds, comp, candidates, options), candidates,
                         reference_ranks(options, ds.entity_count()), warnings);
    return {series_from_grid(group_id, ds, report.selected, comp.scores.at(report.selected)),
            report};
}

IndexSeries build_top_index(const std::vector<IndexSeries>& groups, AggregationMethod method,
                            const std::string& name, const PipelineOptions& options,
                            WarningLog* warnings) {
    if (groups.empty()) throw Error(ErrorCode::GridMismatch, "no group series");
    const auto& first = groups.front();
    for (const auto& series : groups)
        if (series.entities != first.entities || series.years != first.years)
            throw Error(ErrorCode::GridMismatch,
                        "group series '" + series.name + "' does not share the entity/year grid");

    const auto m = static_cast<Eigen::Index>(first.entities.size());
    const auto T = static_cast<Eigen::Index>(first.years.size());
    const auto k = static_cast<Eigen::Index>(groups.size());

    // Optional second min-max pass over the group-score grids.
    GlobalExtrema ext;
    if (options.renormalize_top) {
        ext.minimum.resize(k);
        ext.maximum.resize(k);
        for (Eigen::Index g = 0; g < k; ++g) {
            ext.indicators.push_back(groups[static_cast<std::size_t>(g)].name);
            ext.minimum(g) = groups[static_cast<std::size_t>(g)].values.minCoeff();
            ext.maximum(g) = groups[static_cast<std::size_t>(g)].values.maxCoeff();
        }
    }

    IndexSeries top;
    top.name = name;
    top.entities = first.entities;
    top.years = first.years;
    top.method = method;
    top.values.resize(m, T);
    for (Eigen::Index t = 0; t < T; ++t) {
        DecisionMatrix mat;
        mat.entities = first.entities;
        mat.stage = Stage::Normalized;
        mat.cells.resize(m, k);
        for (Eigen::Index g = 0; g < k; ++g) {
            mat.indicators.push_back(groups[static_cast<std::size_t>(g)].name);
            mat.cells.col(g) = groups[static_cast<std::size_t>(g)].values.col(t);
        }
        if (options.renormalize_top)
            mat = normalize_maut(mat, ext, std::vector<Polarity>(static_cast<std::size_t>(k),
                                                                 Polarity::Benefit),
                                 warnings);
        const WeightVector weights = weigh(mat, options, warnings);
        top.values.col(t) = aggregate(method, mat, weights, warnings).scores;
    }
    return top;
}

SummaryTable summarize(const IndexSeries& series) {
    const Eigen::Index m = series.values.rows();
    SummaryTable summary;
    summary.regional_average = series.values.rowwise().mean();
    summary.period_average = series.values.colwise().mean().transpose();
    summary.period_std.resize(series.values.cols());
    for (Eigen::Index t = 0; t < series.values.cols(); ++t) {
        const double mean = summary.period_average(t);
        const double ss = (series.values.col(t).array() - mean).square().sum();
        summary.period_std(t) =
            m > 1 ? std::sqrt(ss / static_cast<double>(m - 1)) : 0.0;
    }
    summary.grand_mean = series.values.mean();
    return summary;
}

BuildResult build_index(const PanelDataset& ds, const HierarchySpec& hierarchy,
                        const std::vector<AggregationMethod>& candidates,
                        const PipelineOptions& options, WarningLog* warnings) {
    if (candidates.empty()) throw Error(ErrorCode::InvalidConfig, "no candidate methods");
    hierarchy.validate();
    const PanelDataset prepped = apply_prep(ds);

    std::vector<GroupComputation> computations;
    std::vector<SsmYearInput> inputs;
    for (const auto& group : hierarchy.groups) {
        computations.push_back(
            compute_group(prepped, hierarchy, group.id, candidates, options, warnings));
        const auto group_inputs = ssm_inputs(prepped, computations.back(), candidates, options);
        inputs.insert(inputs.end(), group_inputs.begin(), group_inputs.end());
    }

    BuildResult result;
    result.ssm = evaluate_methods(inputs, candidates,
                                  reference_ranks(options, prepped.entity_count()), warnings);
    for (const auto& comp : computations)
        result.group_series.push_back(series_from_grid(
            comp.group_id, prepped, result.ssm.selected, comp.scores.at(result.ssm.selected)));
    result.top =
        build_top_index(result.group_series, result.ssm.selected, hierarchy.top, options, warnings);
    return result;
}

}  // namespace cfi
