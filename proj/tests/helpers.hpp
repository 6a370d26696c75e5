#pragma once

#include <random>
#include <string>
#include <vector>

#include "cfi/dataset.hpp"
#include "cfi/types.hpp"

namespace helpers {

inline Eigen::MatrixXd random_matrix(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols,
                                     double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

inline Eigen::VectorXd random_simplex(std::mt19937& rng, Eigen::Index n) {
    std::uniform_real_distribution<double> dist(0.05, 1.0);
    Eigen::VectorXd w(n);
    for (Eigen::Index j = 0; j < n; ++j) w(j) = dist(rng);
    return w / w.sum();
}

inline cfi::DecisionMatrix matrix(const Eigen::MatrixXd& cells,
                                  cfi::Stage stage = cfi::Stage::Raw) {
    cfi::DecisionMatrix mat;
    mat.stage = stage;
    mat.cells = cells;
    for (Eigen::Index i = 0; i < cells.rows(); ++i)
        mat.entities.push_back("e" + std::to_string(i));
    for (Eigen::Index j = 0; j < cells.cols(); ++j)
        mat.indicators.push_back("x" + std::to_string(j));
    return mat;
}

// Hierarchy with `n` indicators split between groups "G1" and "G2"
// (first half / second half; one group if n < 2).
inline cfi::HierarchySpec simple_hierarchy(int n, cfi::Polarity polarity = cfi::Polarity::Benefit,
                                           cfi::Prep prep = cfi::Prep::None) {
    cfi::HierarchySpec hierarchy;
    hierarchy.top = "TOP";
    const int split = n >= 2 ? n / 2 : n;
    cfi::GroupSpec g1{"G1", "G1", {}};
    cfi::GroupSpec g2{"G2", "G2", {}};
    for (int j = 0; j < n; ++j) {
        cfi::IndicatorSpec spec;
        spec.id = "x" + std::to_string(j);
        spec.label = spec.id;
        spec.polarity = polarity;
        spec.prep = prep;
        spec.group = j < split ? "G1" : "G2";
        hierarchy.indicators.push_back(spec);
        (j < split ? g1 : g2).members.push_back(spec.id);
    }
    hierarchy.groups.push_back(g1);
    if (!g2.members.empty()) hierarchy.groups.push_back(g2);
    return hierarchy;
}

inline std::vector<cfi::RawRecord> records_for(const std::vector<std::string>& entities,
                                               const std::vector<int>& years, int n,
                                               std::mt19937& rng, double lo = 1.0,
                                               double hi = 10.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<cfi::RawRecord> records;
    for (const auto& e : entities)
        for (int y : years)
            for (int j = 0; j < n; ++j)
                records.push_back({e, y, "x" + std::to_string(j), dist(rng)});
    return records;
}

inline cfi::PanelDataset random_dataset(std::mt19937& rng, int m, int n, int T,
                                        const cfi::HierarchySpec& hierarchy, double lo = 1.0,
                                        double hi = 10.0) {
    std::vector<std::string> entities;
    for (int i = 0; i < m; ++i) entities.push_back("E" + std::to_string(i));
    std::vector<int> years;
    for (int t = 0; t < T; ++t) years.push_back(2015 + t);
    return cfi::validate_dataset(records_for(entities, years, n, rng, lo, hi), hierarchy);
}

}  // namespace helpers
