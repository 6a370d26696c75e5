#pragma once

#include <Eigen/Core>
#include <array>
#include <string>
#include <string_view>

#include "cfi/transform.hpp"
#include "cfi/types.hpp"

namespace cfi {

enum class AggregationMethod { Saw, Wp, Wdi2, WdiInf, Topsis };

/// Canonical order; also the tie-break order during method selection.
inline constexpr std::array<AggregationMethod, 5> kMethodOrder = {
    AggregationMethod::Saw, AggregationMethod::Wp, AggregationMethod::Wdi2,
    AggregationMethod::WdiInf, AggregationMethod::Topsis};

std::string_view method_name(AggregationMethod method);
AggregationMethod method_from_string(std::string_view name);

/// Per-entity composite scores for one year under one method.
struct CiVector {
    Eigen::VectorXd scores;
    AggregationMethod method = AggregationMethod::Saw;
};

/// Aggregates a normalized m x n matrix and a weight vector into per-entity
/// composite scores:
///   SAW     sum_j w_j r_ij
///   WP      prod_j r_ij ^ w_j            (0^0 := 1, so zero weights are inert)
///   WDI2    sqrt(sum_j (w_j r_ij)^2)
///   WDIInf  min_j w_j r_ij
///   TOPSIS  D- / (D- + D+) with ideal / anti-ideal taken column-wise over
///           the weighted values of the entities in R; an entity with
///           D- + D+ == 0 scores 0.5 with a warning.
CiVector aggregate(AggregationMethod method, const DecisionMatrix& R, const WeightVector& w,
                   WarningLog* warnings = nullptr);

}  // namespace cfi
