#pragma once

#include <filesystem>
#include <iosfwd>

#include "cfi/config.hpp"

namespace cfi {

// Exit codes: 0 success, 1 data/model failure, 2 usage/config failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs dataset (and, when configured, regression-sample) validation and
/// prints one pass/fail line per check.
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Builds the group indices, the SSM report, and the top index; writes the
/// index tables, ssm.csv and manifest.json into `out_dir`. Partial outputs
/// are removed on failure.
int cmd_build(const RunConfig& config, const std::filesystem::path& out_dir, unsigned seed,
              std::ostream& out, std::ostream& err);

/// Descriptive statistics, pooled/FE/RE fits, Hausman test; writes
/// describe.csv, hausman.txt, regression.txt, regression.csv and
/// manifest.json into `out_dir`.
int cmd_regress(const RunConfig& config, const std::filesystem::path& out_dir, unsigned seed,
                std::ostream& out, std::ostream& err);

/// Re-renders the files of a previous run as aligned text.
int cmd_report(const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

/// Full command-line front end (validate | build | regress | report).
int run_cli(int argc, const char* const* argv);

}  // namespace cfi
