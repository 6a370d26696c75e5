#include "cfi/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <vector>

#include "cfi/csv.hpp"
#include "cfi/report.hpp"

namespace cfi {
namespace {

namespace fs = std::filesystem;

std::string file_stem(const std::string& label) {
    std::string stem;
    for (char c : label) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            stem.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        else
            stem.push_back('_');
    }
    return stem;
}

RegressionSpec regression_spec(const RunConfig& config) {
    RegressionSpec spec;
    spec.regressors = config.regression.regressors;
    spec.time_dummies = config.regression.time_dummies;
    spec.effects = config.regression.effects == "time" ? RegressionSpec::Effects::Time
                                                       : RegressionSpec::Effects::Entity;
    return spec;
}

// Buffers every output, then writes in one pass; on any write failure the
// files already on disk are unlinked so a failed run leaves nothing behind.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

    void add(const std::string& name, std::string content) {
        files_.emplace_back(name, std::move(content));
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [name, content] : files_) out.push_back(name);
        return out;
    }

    void write() const {
        fs::create_directories(dir_);
        std::vector<fs::path> written;
        try {
            for (const auto& [name, content] : files_) {
                const fs::path path = dir_ / name;
                std::ofstream out(path, std::ios::binary);
                if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
                out << content;
                if (!out) throw Error(ErrorCode::IoError, "short write to '" + path.string() + "'");
                written.push_back(path);
            }
        } catch (...) {
            for (const auto& path : written) {
                std::error_code ec;
                fs::remove(path, ec);
            }
            throw;
        }
    }

private:
    fs::path dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

nlohmann::ordered_json base_manifest(const RunConfig& config, const char* command,
                                     unsigned seed) {
    nlohmann::ordered_json manifest;
    manifest["command"] = command;
    manifest["seed"] = seed;
    manifest["config"] = config_to_json(config);
    return manifest;
}

void print_warnings(const WarningLog& warnings, std::ostream& err) {
    for (const auto& message : warnings.messages) err << "warning: " << message << '\n';
}

int classify(const Error& e) {
    return e.code() == ErrorCode::InvalidConfig ? kExitUsageError : kExitDataError;
}

}  // namespace

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    bool all_ok = true;
    const auto check = [&](const std::string& name, auto&& body) {
        try {
            const std::string detail = body();
            out << "check " << name << ": ok" << (detail.empty() ? "" : " (" + detail + ")")
                << '\n';
        } catch (const Error& e) {
            out << "check " << name << ": FAILED (" << e.what() << ")\n";
            all_ok = false;
        }
    };

    PanelDataset ds;
    check("hierarchy", [&] {
        config.hierarchy.validate();
        return std::to_string(config.hierarchy.groups.size()) + " groups, " +
               std::to_string(config.hierarchy.indicators.size()) + " indicators";
    });
    check("dataset", [&] {
        ds = validate_dataset(read_panel_csv_file(config.dataset), config.hierarchy);
        return std::to_string(ds.entities.size()) + " entities, " +
               std::to_string(ds.indicators.size()) + " indicators, " +
               std::to_string(ds.years.size()) + " years";
    });
    check("prep", [&] {
        if (ds.entities.empty()) throw Error(ErrorCode::MissingCell, "dataset not loaded");
        apply_prep(ds);
        return std::string("reciprocal columns strictly positive");
    });
    if (!config.regression.dataset.empty()) {
        check("regression dataset", [&] {
            const PanelSample sample = read_regressor_csv_file(config.regression.dataset);
            sample.validate();
            return std::to_string(sample.rows.size()) + " rows, " +
                   std::to_string(sample.regressor_names.size()) + " regressors";
        });
    }
    if (!all_ok) err << "validation failed\n";
    return all_ok ? kExitOk : kExitDataError;
}

int cmd_build(const RunConfig& config, const fs::path& out_dir, unsigned seed,
              std::ostream& out, std::ostream& err) {
    WarningLog warnings;
    const PanelDataset ds =
        validate_dataset(read_panel_csv_file(config.dataset), config.hierarchy);
    const BuildResult result =
        build_index(ds, config.hierarchy, config.methods, config.pipeline_options(), &warnings);

    OutputSet outputs(out_dir);
    for (const auto& series : result.group_series)
        outputs.add(file_stem(series.name) + ".csv",
                    index_table_csv(series, summarize(series), config.rounding.index_decimals));
    outputs.add(file_stem(result.top.name) + ".csv",
                index_table_csv(result.top, summarize(result.top),
                                config.rounding.index_decimals));
    outputs.add("ssm.csv", ssm_csv(result.ssm, config.rounding.ssm_decimals));

    nlohmann::ordered_json manifest = base_manifest(config, "build", seed);
    manifest["selected_method"] = std::string(method_name(result.ssm.selected));
    manifest["outputs"] = outputs.names();
    manifest["outputs"].push_back("manifest.json");
    manifest["warnings"] = warnings.messages;
    outputs.add("manifest.json", manifest.dump(2) + "\n");

    outputs.write();
    print_warnings(warnings, err);
    out << "selected method: " << method_name(result.ssm.selected) << '\n';
    out << "wrote " << outputs.names().size() << " files to " << out_dir.string() << '\n';
    return kExitOk;
}

int cmd_regress(const RunConfig& config, const fs::path& out_dir, unsigned seed,
                std::ostream& out, std::ostream& err) {
    if (config.regression.dataset.empty())
        throw Error(ErrorCode::InvalidConfig, "config has no regression.dataset");

    WarningLog warnings;
    const PanelSample sample = read_regressor_csv_file(config.regression.dataset);
    const RegressionSpec spec = regression_spec(config);

    const auto descriptives = describe(sample);
    const RegressionResult pooled = pooled_ols(sample, spec);
    const RegressionResult fe = fixed_effects(sample, spec, &warnings);
    const RegressionResult re = random_effects(sample, spec, &warnings);
    const HausmanResult test =
        hausman(fe, re, config.regression.hausman_threshold, &warnings);

    const std::string test_label = config.regression.effects == "time"
                                       ? "Period random"
                                       : "Cross-section random";
    const std::vector<RegressionResult> results{pooled, fe, re};
    const int decimals = config.rounding.regression_decimals;

    OutputSet outputs(out_dir);
    outputs.add("describe.csv", describe_csv(descriptives, decimals));
    outputs.add("hausman.txt", hausman_text(test, test_label));
    outputs.add("regression.txt", regression_text(results, &test, decimals));
    outputs.add("regression.csv", regression_csv(results, decimals));

    nlohmann::ordered_json manifest = base_manifest(config, "regress", seed);
    manifest["hausman_recommendation"] =
        test.recommendation == Estimator::RandomEffects ? "random_effects" : "fixed_effects";
    manifest["outputs"] = outputs.names();
    manifest["outputs"].push_back("manifest.json");
    manifest["warnings"] = warnings.messages;
    outputs.add("manifest.json", manifest.dump(2) + "\n");

    outputs.write();
    print_warnings(warnings, err);
    out << "hausman: chi-sq " << format_fixed(test.statistic, 6) << ", prob "
        << format_fixed(test.p_value, 4) << " -> "
        << (test.recommendation == Estimator::RandomEffects ? "random effects"
                                                            : "fixed effects")
        << '\n';
    out << "wrote " << outputs.names().size() << " files to " << out_dir.string() << '\n';
    return kExitOk;
}

int cmd_report(const fs::path& out_dir, std::ostream& out, std::ostream& err) {
    const fs::path manifest_path = out_dir / "manifest.json";
    std::ifstream manifest_in(manifest_path);
    if (!manifest_in) {
        err << "no manifest at " << manifest_path.string() << '\n';
        return kExitDataError;
    }
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(manifest_in);
    } catch (const nlohmann::json::parse_error& e) {
        err << "bad manifest: " << e.what() << '\n';
        return kExitDataError;
    }

    out << "run: " << manifest.value("command", "?") << '\n';
    if (manifest.contains("selected_method"))
        out << "selected method: " << manifest["selected_method"].get<std::string>() << '\n';
    if (manifest.contains("hausman_recommendation"))
        out << "hausman recommendation: "
            << manifest["hausman_recommendation"].get<std::string>() << '\n';

    for (const auto& name : manifest.value("outputs", std::vector<std::string>{})) {
        if (name == "manifest.json") continue;
        const fs::path path = out_dir / name;
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            err << "missing output " << path.string() << '\n';
            return kExitDataError;
        }
        std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
        out << '\n' << name << ":\n";
        if (name.size() >= 4 && name.compare(name.size() - 4, 4, ".csv") == 0)
            out << align_csv(content);
        else
            out << content;
    }
    return kExitOk;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Composite carbon-finance index toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    unsigned seed = 0;
    app.add_option("--seed", seed, "Seed echoed into the run manifest");

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("--config", config_path, "Run configuration (JSON)")->required();
        cmd->add_option("--out", out_override, "Output directory (overrides the config)");
    };

    CLI::App* validate = app.add_subcommand("validate", "Check the configured inputs");
    add_common(validate, true);
    CLI::App* build = app.add_subcommand("build", "Construct the index tables and SSM report");
    add_common(build, true);
    CLI::App* regress = app.add_subcommand("regress", "Panel regression of the index drivers");
    add_common(regress, true);
    CLI::App* report = app.add_subcommand("report", "Re-render a previous run's outputs");
    report->add_option("--out", out_override, "Output directory of the run")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsageError;
    }

    try {
        if (report->parsed()) return cmd_report(out_override, std::cout, std::cerr);

        const RunConfig config = load_config(config_path);
        const fs::path out_dir = out_override.empty() ? fs::path(config.output_dir)
                                                      : fs::path(out_override);
        if (validate->parsed()) return cmd_validate(config, std::cout, std::cerr);
        if (build->parsed()) return cmd_build(config, out_dir, seed, std::cout, std::cerr);
        if (regress->parsed()) return cmd_regress(config, out_dir, seed, std::cout, std::cerr);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return classify(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return kExitUsageError;
}

}  // namespace cfi
