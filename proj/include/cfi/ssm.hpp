#pragma once

#include <Eigen/Core>
#include <map>
#include <vector>

#include "cfi/aggregate.hpp"
#include "cfi/transform.hpp"

namespace cfi {

/// Column shares p_ij = x_ij / sum_i x_ij. Every column sums to 1.
struct ShareMatrix {
    Eigen::MatrixXd p;
};

ShareMatrix share_matrix(const Eigen::MatrixXd& x);
Eigen::VectorXd share_vector(const Eigen::VectorXd& x);

/// 1 + (1/ln m) * sum_i p_i ln p_i with 0*ln 0 := 0. Zero for the uniform
/// distribution, one for a degenerate one. Requires p on the simplex, m >= 2.
double diversity_factor(const Eigen::VectorXd& p);

/// Average ranks (1-based), ties get the mean of the ranks they span.
Eigen::VectorXd average_ranks(const Eigen::VectorXd& v);

/// Spearman rank correlation, computed as the Pearson correlation of the
/// average-rank vectors. Constant input is an error, not NaN.
double spearman(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Reference rank sequence (m, m-1, ..., 1).
Eigen::VectorXd default_reference_ranks(Eigen::Index m);

/// Shannon-Spearman information loss of aggregating the columns of R (with
/// weights w) into the composite vector ci, against reference ranks r0:
///   d = | sum_j w_j * div_j * r_sj  -  div_ci * r_s |
/// where div is the diversity factor of the column's shares and r_s the
/// Spearman correlation with r0. Requires nonnegative R and ci with
/// positive column sums.
double ssm_loss(const Eigen::MatrixXd& R, const Eigen::VectorXd& w, const Eigen::VectorXd& ci,
                const Eigen::VectorXd& r0);

/// One evaluation unit: a year's share basis, weights, and the candidate
/// composites built from it. Several units may carry the same year (one per
/// group); their losses are averaged into that year's figure.
struct SsmYearInput {
    int year = 0;
    Eigen::MatrixXd basis;
    WeightVector weights;
    std::map<AggregationMethod, Eigen::VectorXd> ci;
};

struct SsmReport {
    std::vector<AggregationMethod> methods;  // canonical order
    std::vector<int> years;                  // ascending
    Eigen::MatrixXd losses;                  // methods x years
    Eigen::VectorXd means;                   // per method, arithmetic over years
    AggregationMethod selected = AggregationMethod::Saw;
};

/// Builds a report from precomputed per-method/per-year losses: means are
/// row averages, selected is the argmin of the means (ties resolved toward
/// the canonical method order, with a warning).
SsmReport make_ssm_report(const std::vector<AggregationMethod>& methods,
                          const std::vector<int>& years, const Eigen::MatrixXd& losses,
                          WarningLog* warnings = nullptr);

/// Scores every candidate method on every input unit and selects the one
/// with the minimum mean loss.
SsmReport evaluate_methods(const std::vector<SsmYearInput>& inputs,
                           const std::vector<AggregationMethod>& methods,
                           const Eigen::VectorXd& r0, WarningLog* warnings = nullptr);

}  // namespace cfi
