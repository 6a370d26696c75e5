#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cfi {

enum class ErrorCode {
    // dataset / ingestion
    MissingCell,
    DuplicateCell,
    NonFiniteValue,
    UnknownIndicator,
    UnknownYear,
    NonPositiveReciprocal,
    BadRecord,
    // transform
    NonPositiveColumnMax,
    ZeroColumn,
    ZeroMeanColumn,
    SingleEntity,
    WrongStage,
    // aggregate / ssm
    DimensionMismatch,
    NotASimplex,
    TooFewEntities,
    TooFewObservations,
    LengthMismatch,
    ZeroRankVariance,
    NegativeCell,
    ZeroColumnSum,
    GridMismatch,
    // panel regression
    EmptySample,
    InvalidSample,
    RankDeficient,
    // emissions
    NegativeQuantity,
    UnknownGridRegion,
    // cli / io
    InvalidConfig,
    IoError,
};

/// Single exception type for the whole toolkit; the code identifies the
/// contract violation, the message carries the offending coordinates.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Collector for non-fatal diagnostics (degenerate columns, tie-breaks,
/// dropped regressors). Callers that pass nullptr discard them.
struct WarningLog {
    std::vector<std::string> messages;

    void add(std::string message) { messages.push_back(std::move(message)); }
    bool empty() const { return messages.empty(); }
};

inline void warn(WarningLog* log, std::string message) {
    if (log != nullptr) log->add(std::move(message));
}

}  // namespace cfi
