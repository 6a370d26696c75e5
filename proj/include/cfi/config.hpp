#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cfi/aggregate.hpp"
#include "cfi/pipeline.hpp"
#include "cfi/types.hpp"

namespace cfi {

struct RegressionConfig {
    std::string dataset;                   // regressor CSV path
    std::vector<std::string> regressors;   // empty = all file columns
    bool time_dummies = false;
    std::string effects = "entity";        // entity | time
    double hausman_threshold = 0.05;
};

struct RoundingConfig {
    int index_decimals = 3;
    int ssm_decimals = 4;
    int regression_decimals = 6;
};

/// Resolved run configuration. Every paper-ambiguous switch lives here so
/// each run's choices are explicit and echoed into the manifest.
struct RunConfig {
    std::string dataset;  // long-format indicator CSV path
    HierarchySpec hierarchy;
    Normalization normalization = Normalization::Maut;
    Weighting weighting = Weighting::Cv;
    std::vector<AggregationMethod> methods;  // candidate aggregations
    SsmInput ssm_input = SsmInput::Raw;
    bool renormalize_top = false;
    std::optional<std::vector<double>> reference_ranks;
    RegressionConfig regression;
    std::string output_dir = "out";
    RoundingConfig rounding;

    PipelineOptions pipeline_options() const;
};

/// Parses the JSON run configuration. Relative dataset/output paths are
/// resolved against the config file's directory. Schema problems throw
/// Error(InvalidConfig).
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const nlohmann::json& doc);

/// Resolved-config echo for the run manifest (defaults materialized).
nlohmann::ordered_json config_to_json(const RunConfig& config);

}  // namespace cfi
