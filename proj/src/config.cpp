#include "cfi/config.hpp"

#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>

namespace cfi {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) {
    throw Error(ErrorCode::InvalidConfig, what);
}

const json& require(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) config_error(std::string("missing config key '") + key + "'");
    return *it;
}

std::string get_string(const json& doc, const char* key) {
    const json& value = require(doc, key);
    if (!value.is_string()) config_error(std::string("config key '") + key + "' must be a string");
    return value.get<std::string>();
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

Polarity polarity_from_string(const std::string& name) {
    const std::string key = lower(name);
    if (key == "benefit" || key == "positive") return Polarity::Benefit;
    if (key == "cost" || key == "negative") return Polarity::Cost;
    config_error("unknown polarity '" + name + "' (use benefit|cost)");
}

Prep prep_from_string(const std::string& name) {
    const std::string key = lower(name);
    if (key == "none") return Prep::None;
    if (key == "reciprocal") return Prep::Reciprocal;
    config_error("unknown prep '" + name + "' (use none|reciprocal)");
}

HierarchySpec parse_hierarchy(const json& doc) {
    if (!doc.is_object()) config_error("'hierarchy' must be an object");
    HierarchySpec hierarchy;
    hierarchy.top = get_string(doc, "top");

    const json& groups = require(doc, "groups");
    if (!groups.is_array()) config_error("'hierarchy.groups' must be an array");
    for (const auto& g : groups) {
        GroupSpec group;
        group.id = get_string(g, "id");
        group.label = g.value("label", group.id);
        const json& members = require(g, "members");
        if (!members.is_array()) config_error("group members must be an array");
        for (const auto& m : members) group.members.push_back(m.get<std::string>());
        hierarchy.groups.push_back(std::move(group));
    }

    const json& indicators = require(doc, "indicators");
    if (!indicators.is_array()) config_error("'hierarchy.indicators' must be an array");
    for (const auto& ind : indicators) {
        IndicatorSpec spec;
        spec.id = get_string(ind, "id");
        spec.label = ind.value("label", spec.id);
        spec.polarity = polarity_from_string(ind.value("polarity", "benefit"));
        spec.prep = prep_from_string(ind.value("prep", "none"));
        spec.group = ind.value("group", "");
        hierarchy.indicators.push_back(std::move(spec));
    }
    hierarchy.validate();
    return hierarchy;
}

}  // namespace

PipelineOptions RunConfig::pipeline_options() const {
    PipelineOptions options;
    options.normalization = normalization;
    options.weighting = weighting;
    options.ssm_input = ssm_input;
    options.renormalize_top = renormalize_top;
    if (reference_ranks.has_value()) {
        Eigen::VectorXd r0(static_cast<Eigen::Index>(reference_ranks->size()));
        for (std::size_t i = 0; i < reference_ranks->size(); ++i)
            r0(static_cast<Eigen::Index>(i)) = (*reference_ranks)[i];
        options.reference_ranks = r0;
    }
    return options;
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) config_error("config root must be an object");
    RunConfig config;
    config.dataset = get_string(doc, "dataset");
    config.hierarchy = parse_hierarchy(require(doc, "hierarchy"));

    config.normalization = normalization_from_string(doc.value("normalization", "maut"));
    config.weighting = weighting_from_string(doc.value("weighting", "cv"));
    config.ssm_input = ssm_input_from_string(doc.value("ssm_input", "raw"));
    config.renormalize_top = doc.value("renormalize_top", false);

    if (doc.contains("methods")) {
        const json& methods = doc.at("methods");
        if (!methods.is_array()) config_error("'methods' must be an array");
        for (const auto& m : methods)
            config.methods.push_back(method_from_string(m.get<std::string>()));
        if (config.methods.empty()) config_error("'methods' must not be empty");
    } else {
        config.methods.assign(kMethodOrder.begin(), kMethodOrder.end());
    }

    if (doc.contains("reference_ranks") && !doc.at("reference_ranks").is_null()) {
        const json& ranks = doc.at("reference_ranks");
        if (!ranks.is_array()) config_error("'reference_ranks' must be an array");
        std::vector<double> r0;
        for (const auto& r : ranks) r0.push_back(r.get<double>());
        config.reference_ranks = std::move(r0);
    }

    if (doc.contains("regression")) {
        const json& reg = doc.at("regression");
        if (!reg.is_object()) config_error("'regression' must be an object");
        config.regression.dataset = reg.value("dataset", "");
        if (reg.contains("regressors")) {
            for (const auto& r : reg.at("regressors"))
                config.regression.regressors.push_back(r.get<std::string>());
        }
        config.regression.time_dummies = reg.value("time_dummies", false);
        config.regression.effects = reg.value("effects", "entity");
        if (config.regression.effects != "entity" && config.regression.effects != "time")
            config_error("regression effects must be entity|time");
        config.regression.hausman_threshold = reg.value("hausman_threshold", 0.05);
        if (config.regression.hausman_threshold <= 0.0 ||
            config.regression.hausman_threshold >= 1.0)
            config_error("hausman_threshold must lie in (0, 1)");
    }

    config.output_dir = doc.value("output_dir", "out");
    if (doc.contains("rounding")) {
        const json& rounding = doc.at("rounding");
        config.rounding.index_decimals = rounding.value("index", 3);
        config.rounding.ssm_decimals = rounding.value("ssm", 4);
        config.rounding.regression_decimals = rounding.value("regression", 6);
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open config '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidConfig,
                    "config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    RunConfig config = parse_config(doc);

    const std::filesystem::path base = path.has_parent_path()
                                           ? path.parent_path()
                                           : std::filesystem::path(".");
    const auto resolve = [&base](std::string& p) {
        if (p.empty()) return;
        std::filesystem::path candidate(p);
        if (candidate.is_relative()) p = (base / candidate).string();
    };
    resolve(config.dataset);
    resolve(config.regression.dataset);
    resolve(config.output_dir);
    return config;
}

nlohmann::ordered_json config_to_json(const RunConfig& config) {
    nlohmann::ordered_json doc;
    doc["dataset"] = config.dataset;

    nlohmann::ordered_json hierarchy;
    hierarchy["top"] = config.hierarchy.top;
    hierarchy["groups"] = nlohmann::ordered_json::array();
    for (const auto& g : config.hierarchy.groups) {
        nlohmann::ordered_json group;
        group["id"] = g.id;
        group["label"] = g.label;
        group["members"] = g.members;
        hierarchy["groups"].push_back(group);
    }
    hierarchy["indicators"] = nlohmann::ordered_json::array();
    for (const auto& ind : config.hierarchy.indicators) {
        nlohmann::ordered_json spec;
        spec["id"] = ind.id;
        spec["label"] = ind.label;
        spec["polarity"] = ind.polarity == Polarity::Benefit ? "benefit" : "cost";
        spec["prep"] = ind.prep == Prep::Reciprocal ? "reciprocal" : "none";
        hierarchy["indicators"].push_back(spec);
    }
    doc["hierarchy"] = hierarchy;

    doc["normalization"] = std::string(normalization_name(config.normalization));
    doc["weighting"] = std::string(weighting_name(config.weighting));
    doc["methods"] = nlohmann::ordered_json::array();
    for (auto method : config.methods)
        doc["methods"].push_back(std::string(method_name(method)));
    doc["ssm_input"] = std::string(ssm_input_name(config.ssm_input));
    doc["renormalize_top"] = config.renormalize_top;
    if (config.reference_ranks.has_value())
        doc["reference_ranks"] = *config.reference_ranks;
    else
        doc["reference_ranks"] = nullptr;

    nlohmann::ordered_json regression;
    regression["dataset"] = config.regression.dataset;
    regression["regressors"] = config.regression.regressors;
    regression["time_dummies"] = config.regression.time_dummies;
    regression["effects"] = config.regression.effects;
    regression["hausman_threshold"] = config.regression.hausman_threshold;
    doc["regression"] = regression;

    doc["output_dir"] = config.output_dir;
    nlohmann::ordered_json rounding;
    rounding["index"] = config.rounding.index_decimals;
    rounding["ssm"] = config.rounding.ssm_decimals;
    rounding["regression"] = config.rounding.regression_decimals;
    doc["rounding"] = rounding;
    return doc;
}

}  // namespace cfi
