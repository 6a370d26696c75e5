#include "cfi/aggregate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace cfi {

std::string_view method_name(AggregationMethod method) {
    switch (method) {
        case AggregationMethod::Saw: return "SAW";
        case AggregationMethod::Wp: return "WP";
        case AggregationMethod::Wdi2: return "WDI2";
        case AggregationMethod::WdiInf: return "WDIInf";
        case AggregationMethod::Topsis: return "TOPSIS";
    }
    return "?";
}

AggregationMethod method_from_string(std::string_view name) {
    std::string key;
    for (char c : name)
        if (c != '_' && c != '-') key.push_back(static_cast<char>(std::tolower(c)));
    if (key == "saw") return AggregationMethod::Saw;
    if (key == "wp") return AggregationMethod::Wp;
    if (key == "wdi2") return AggregationMethod::Wdi2;
    if (key == "wdiinf" || key == "wdiinfinity") return AggregationMethod::WdiInf;
    if (key == "topsis") return AggregationMethod::Topsis;
    throw Error(ErrorCode::InvalidConfig,
                "unknown aggregation method '" + std::string(name) + "'");
}

namespace {

// prod_j r^w with 0^0 := 1.
double weighted_product(const Eigen::VectorXd& row, const Eigen::VectorXd& w) {
    double product = 1.0;
    for (Eigen::Index j = 0; j < row.size(); ++j) {
        if (w(j) == 0.0) continue;
        product *= std::pow(row(j), w(j));
    }
    return product;
}

Eigen::VectorXd topsis_scores(const Eigen::MatrixXd& weighted, WarningLog* warnings) {
    const Eigen::VectorXd ideal = weighted.colwise().maxCoeff();
    const Eigen::VectorXd anti = weighted.colwise().minCoeff();
    Eigen::VectorXd scores(weighted.rows());
    for (Eigen::Index i = 0; i < weighted.rows(); ++i) {
        const double d_plus = (weighted.row(i).transpose() - ideal).norm();
        const double d_minus = (weighted.row(i).transpose() - anti).norm();
        if (d_plus + d_minus == 0.0) {
            warn(warnings, "TOPSIS: entity " + std::to_string(i) +
                               " coincides with both ideals; score set to 0.5");
            scores(i) = 0.5;
        } else {
            scores(i) = d_minus / (d_minus + d_plus);
        }
    }
    return scores;
}

}  // namespace

CiVector aggregate(AggregationMethod method, const DecisionMatrix& R, const WeightVector& w,
                   WarningLog* warnings) {
    const Eigen::Index m = R.cells.rows();
    const Eigen::Index n = R.cells.cols();
    if (w.size() != n)
        throw Error(ErrorCode::DimensionMismatch,
                    "weight vector length " + std::to_string(w.size()) +
                        " does not match " + std::to_string(n) + " columns");

    CiVector ci;
    ci.method = method;
    switch (method) {
        case AggregationMethod::Saw:
            ci.scores = R.cells * w.values;
            break;
        case AggregationMethod::Wp:
            ci.scores.resize(m);
            for (Eigen::Index i = 0; i < m; ++i)
                ci.scores(i) = weighted_product(R.cells.row(i).transpose(), w.values);
            break;
        case AggregationMethod::Wdi2:
            ci.scores = (R.cells.array().rowwise() * w.values.transpose().array())
                            .square()
                            .rowwise()
                            .sum()
                            .sqrt();
            break;
        case AggregationMethod::WdiInf:
            ci.scores = (R.cells.array().rowwise() * w.values.transpose().array())
                            .rowwise()
                            .minCoeff();
            break;
        case AggregationMethod::Topsis: {
            const Eigen::MatrixXd weighted =
                R.cells.array().rowwise() * w.values.transpose().array();
            ci.scores = topsis_scores(weighted, warnings);
            break;
        }
    }
    return ci;
}

}  // namespace cfi
