#include "cfi/transform.hpp"

#include <cmath>
#include <limits>

namespace cfi {

Eigen::Index GlobalExtrema::index_of(const std::string& indicator) const {
    for (std::size_t j = 0; j < indicators.size(); ++j)
        if (indicators[j] == indicator) return static_cast<Eigen::Index>(j);
    throw Error(ErrorCode::UnknownIndicator,
                "indicator '" + indicator + "' not covered by the global extrema");
}

GlobalExtrema global_extrema(const PanelDataset& ds) {
    const Eigen::Index n = ds.indicator_count();
    GlobalExtrema ext;
    for (const auto& ind : ds.indicators) ext.indicators.push_back(ind.id);
    ext.minimum = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    ext.maximum = Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
    for (const auto& year_values : ds.values) {
        ext.minimum = ext.minimum.cwiseMin(year_values.colwise().minCoeff().transpose());
        ext.maximum = ext.maximum.cwiseMax(year_values.colwise().maxCoeff().transpose());
    }
    return ext;
}

DecisionMatrix normalize_maut(const DecisionMatrix& mat, const GlobalExtrema& ext,
                              const std::vector<Polarity>& polarity, WarningLog* warnings) {
    const Eigen::Index n = mat.cells.cols();
    if (static_cast<Eigen::Index>(polarity.size()) != n)
        throw Error(ErrorCode::DimensionMismatch,
                    "polarity list does not match the matrix columns");

    DecisionMatrix out = mat;
    out.stage = Stage::Normalized;
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index k = ext.index_of(mat.indicators[static_cast<std::size_t>(j)]);
        const double lo = ext.minimum(k);
        const double hi = ext.maximum(k);
        const double range = hi - lo;
        if (range == 0.0) {
            // Uninformative column: every cell equals the global extremum.
            warn(warnings, "degenerate range for indicator '" +
                               mat.indicators[static_cast<std::size_t>(j)] +
                               "' (max == min); cells set to 0.5");
            out.cells.col(j).setConstant(0.5);
            continue;
        }
        if (polarity[static_cast<std::size_t>(j)] == Polarity::Benefit)
            out.cells.col(j) = (mat.cells.col(j).array() - lo) / range;
        else
            out.cells.col(j) = (hi - mat.cells.col(j).array()) / range;
    }
    return out;
}

DecisionMatrix normalize_ln(const DecisionMatrix& mat) {
    DecisionMatrix out = mat;
    out.stage = Stage::Normalized;
    for (Eigen::Index j = 0; j < mat.cells.cols(); ++j) {
        if ((mat.cells.col(j).array() < 0.0).any())
            throw Error(ErrorCode::NegativeCell,
                        "LN normalization needs nonnegative cells in column '" +
                            mat.indicators[static_cast<std::size_t>(j)] + "'");
        const double column_max = mat.cells.col(j).maxCoeff();
        if (column_max <= 0.0)
            throw Error(ErrorCode::NonPositiveColumnMax,
                        "column '" + mat.indicators[static_cast<std::size_t>(j)] +
                            "' has non-positive maximum");
        out.cells.col(j) = mat.cells.col(j) / column_max;
    }
    return out;
}

DecisionMatrix normalize_vn(const DecisionMatrix& mat) {
    DecisionMatrix out = mat;
    out.stage = Stage::Normalized;
    for (Eigen::Index j = 0; j < mat.cells.cols(); ++j) {
        if ((mat.cells.col(j).array() < 0.0).any())
            throw Error(ErrorCode::NegativeCell,
                        "VN normalization needs nonnegative cells in column '" +
                            mat.indicators[static_cast<std::size_t>(j)] + "'");
        const double norm = mat.cells.col(j).norm();
        if (norm == 0.0)
            throw Error(ErrorCode::ZeroColumn,
                        "column '" + mat.indicators[static_cast<std::size_t>(j)] +
                            "' is identically zero");
        out.cells.col(j) = mat.cells.col(j) / norm;
    }
    return out;
}

WeightVector cv_weights(const DecisionMatrix& normalized, WarningLog* warnings) {
    if (normalized.stage != Stage::Normalized)
        throw Error(ErrorCode::WrongStage, "cv_weights expects a Normalized matrix");
    const Eigen::Index m = normalized.cells.rows();
    const Eigen::Index n = normalized.cells.cols();
    if (m < 2)
        throw Error(ErrorCode::SingleEntity,
                    "coefficient of variation needs at least two entities");

    Eigen::VectorXd cv(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double mean = normalized.cells.col(j).mean();
        if (mean <= 0.0)
            throw Error(ErrorCode::ZeroMeanColumn,
                        "column '" + normalized.indicators[static_cast<std::size_t>(j)] +
                            "' has non-positive mean");
        const double ss = (normalized.cells.col(j).array() - mean).square().sum();
        const double sigma = std::sqrt(ss / static_cast<double>(m - 1));
        cv(j) = sigma / mean;
    }

    const double total = cv.sum();
    WeightVector w;
    if (total == 0.0) {
        warn(warnings, "all columns constant; falling back to equal weights");
        w.values = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    } else {
        w.values = cv / total;
    }
    return w;
}

WeightVector equal_weights(Eigen::Index n) {
    if (n < 1)
        throw Error(ErrorCode::DimensionMismatch, "equal_weights needs n >= 1");
    WeightVector w;
    w.values = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    return w;
}

}  // namespace cfi
