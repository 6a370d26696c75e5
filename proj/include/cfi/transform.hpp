#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "cfi/types.hpp"

namespace cfi {

/// Per-indicator extrema pooled over all entities AND all years, so that
/// normalized values rarely sit exactly at 0 or 1 within a single year.
struct GlobalExtrema {
    std::vector<std::string> indicators;
    Eigen::VectorXd minimum;
    Eigen::VectorXd maximum;

    Eigen::Index index_of(const std::string& indicator) const;
};

/// Per-indicator weights for one year, on the unit simplex.
struct WeightVector {
    Eigen::VectorXd values;

    Eigen::Index size() const { return values.size(); }
    double operator[](Eigen::Index j) const { return values(j); }
};

GlobalExtrema global_extrema(const PanelDataset& ds);

/// Global min-max normalization with polarity: Benefit columns map through
/// (x - min)/(max - min), Cost columns through (max - x)/(max - min).
/// A degenerate column (max == min) maps to 0.5 with a warning instead of
/// aborting the run; CV weighting then assigns it zero weight.
/// `polarity` aligns with the matrix columns.
DecisionMatrix normalize_maut(const DecisionMatrix& mat, const GlobalExtrema& ext,
                              const std::vector<Polarity>& polarity,
                              WarningLog* warnings = nullptr);

/// Linear normalization: each cell divided by its column max within this
/// matrix. Requires nonnegative cells and strictly positive column maxima.
DecisionMatrix normalize_ln(const DecisionMatrix& mat);

/// Vector normalization: each column divided by its Euclidean norm.
/// Requires nonnegative cells and at least one nonzero cell per column.
DecisionMatrix normalize_vn(const DecisionMatrix& mat);

/// Coefficient-of-variation weights over a normalized cross-section:
/// V_j = sigma_j / mean_j per column using the sample standard deviation
/// (divisor m-1), normalized to sum 1. Constant columns get weight 0.
/// If every column is constant the weights fall back to 1/n with a warning.
WeightVector cv_weights(const DecisionMatrix& normalized, WarningLog* warnings = nullptr);

WeightVector equal_weights(Eigen::Index n);

}  // namespace cfi
