#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfi/aggregate.hpp"
#include "cfi/emissions.hpp"
#include "cfi/panel_reg.hpp"
#include "cfi/ssm.hpp"
#include "cfi/transform.hpp"

namespace py = pybind11;

namespace {

cfi::DecisionMatrix matrix_from(const Eigen::MatrixXd& cells, cfi::Stage stage) {
    cfi::DecisionMatrix mat;
    mat.stage = stage;
    mat.cells = cells;
    for (Eigen::Index i = 0; i < cells.rows(); ++i)
        mat.entities.push_back("e" + std::to_string(i));
    for (Eigen::Index j = 0; j < cells.cols(); ++j)
        mat.indicators.push_back("x" + std::to_string(j));
    return mat;
}

cfi::PanelSample sample_from(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                             const std::vector<std::string>& entities,
                             const std::vector<int>& years,
                             std::vector<std::string> names) {
    if (y.size() != X.rows() || y.size() != static_cast<Eigen::Index>(entities.size()) ||
        y.size() != static_cast<Eigen::Index>(years.size()))
        throw cfi::Error(cfi::ErrorCode::LengthMismatch,
                         "y, X, entities and years must have matching lengths");
    cfi::PanelSample sample;
    if (names.empty())
        for (Eigen::Index j = 0; j < X.cols(); ++j)
            names.push_back("x" + std::to_string(j + 1));
    sample.regressor_names = std::move(names);
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        cfi::PanelObservation row;
        row.entity = entities[static_cast<std::size_t>(i)];
        row.year = years[static_cast<std::size_t>(i)];
        row.response = y(i);
        row.regressors = X.row(i);
        sample.rows.push_back(std::move(row));
    }
    return sample;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Composite-indicator construction and panel regression core";

    py::register_exception<cfi::Error>(m, "CfiError");

    // --- normalization and weighting ---
    m.def(
        "normalize_ln",
        [](const Eigen::MatrixXd& x) {
            return cfi::normalize_ln(matrix_from(x, cfi::Stage::Raw)).cells;
        },
        py::arg("x"), "Divide each column by its maximum.");
    m.def(
        "normalize_vn",
        [](const Eigen::MatrixXd& x) {
            return cfi::normalize_vn(matrix_from(x, cfi::Stage::Raw)).cells;
        },
        py::arg("x"), "Divide each column by its Euclidean norm.");
    m.def(
        "normalize_maut",
        [](const Eigen::MatrixXd& x, const Eigen::VectorXd& minimum,
           const Eigen::VectorXd& maximum, const std::vector<bool>& benefit) {
            cfi::DecisionMatrix mat = matrix_from(x, cfi::Stage::Raw);
            cfi::GlobalExtrema ext;
            ext.indicators = mat.indicators;
            ext.minimum = minimum;
            ext.maximum = maximum;
            std::vector<cfi::Polarity> polarity;
            for (bool b : benefit)
                polarity.push_back(b ? cfi::Polarity::Benefit : cfi::Polarity::Cost);
            return cfi::normalize_maut(mat, ext, polarity).cells;
        },
        py::arg("x"), py::arg("minimum"), py::arg("maximum"), py::arg("benefit"),
        "Min-max normalization against the supplied global extrema.");
    m.def(
        "cv_weights",
        [](const Eigen::MatrixXd& normalized) {
            return cfi::cv_weights(matrix_from(normalized, cfi::Stage::Normalized)).values;
        },
        py::arg("normalized"),
        "Coefficient-of-variation weights (sample sigma over mean, summing to 1).");
    m.def(
        "equal_weights",
        [](Eigen::Index n) { return cfi::equal_weights(n).values; }, py::arg("n"));

    // --- aggregation ---
    m.def(
        "aggregate",
        [](const std::string& method, const Eigen::MatrixXd& r, const Eigen::VectorXd& w) {
            cfi::WeightVector weights;
            weights.values = w;
            return cfi::aggregate(cfi::method_from_string(method),
                                  matrix_from(r, cfi::Stage::Normalized), weights)
                .scores;
        },
        py::arg("method"), py::arg("r"), py::arg("w"),
        "Aggregate a normalized matrix: saw | wp | wdi2 | wdiinf | topsis.");

    // --- Shannon-Spearman measure ---
    m.def("diversity_factor", &cfi::diversity_factor, py::arg("p"));
    m.def("spearman", &cfi::spearman, py::arg("a"), py::arg("b"));
    m.def("average_ranks", &cfi::average_ranks, py::arg("v"));
    m.def(
        "ssm_loss",
        [](const Eigen::MatrixXd& r, const Eigen::VectorXd& w, const Eigen::VectorXd& ci,
           std::optional<Eigen::VectorXd> r0) {
            return cfi::ssm_loss(r, w, ci,
                                 r0.has_value() ? *r0 : cfi::default_reference_ranks(r.rows()));
        },
        py::arg("r"), py::arg("w"), py::arg("ci"), py::arg("r0") = std::nullopt,
        "Information loss of aggregating r (weights w) into ci.");

    // --- emissions ---
    m.def(
        "estimate_emissions",
        [](double coal_kg, double oil_kg, double gas_m3, double electricity_kwh,
           const std::string& region) {
            return cfi::estimate_emissions({coal_kg, oil_kg, gas_m3, electricity_kwh},
                                           cfi::grid_region_from_string(region));
        },
        py::arg("coal_kg"), py::arg("oil_kg"), py::arg("gas_m3"), py::arg("electricity_kwh"),
        py::arg("grid_region"), "kgCO2 from a consumption bundle and a power-grid region.");

    // --- panel regression ---
    py::class_<cfi::Coefficient>(m, "Coefficient")
        .def_readonly("name", &cfi::Coefficient::name)
        .def_readonly("value", &cfi::Coefficient::value)
        .def_readonly("std_error", &cfi::Coefficient::std_error)
        .def_readonly("t_value", &cfi::Coefficient::t_value)
        .def_readonly("p_value", &cfi::Coefficient::p_value)
        .def("__repr__", [](const cfi::Coefficient& c) {
            return "<Coefficient " + c.name + "=" + std::to_string(c.value) + ">";
        });

    py::class_<cfi::RegressionResult>(m, "RegressionResult")
        .def_readonly("coefficients", &cfi::RegressionResult::coefficients)
        .def_readonly("covariance", &cfi::RegressionResult::covariance)
        .def_readonly("r_squared", &cfi::RegressionResult::r_squared)
        .def_readonly("adj_r_squared", &cfi::RegressionResult::adj_r_squared)
        .def_readonly("f_statistic", &cfi::RegressionResult::f_statistic)
        .def_readonly("prob_f", &cfi::RegressionResult::prob_f)
        .def_readonly("n_obs", &cfi::RegressionResult::n_obs)
        .def_readonly("df_residual", &cfi::RegressionResult::df_residual)
        .def_readonly("dropped", &cfi::RegressionResult::dropped)
        .def_readonly("sigma2_idiosyncratic", &cfi::RegressionResult::sigma2_idiosyncratic)
        .def_readonly("sigma2_effects", &cfi::RegressionResult::sigma2_effects)
        .def_property_readonly("coef", [](const cfi::RegressionResult& r) {
            py::dict out;
            for (const auto& c : r.coefficients) out[py::str(c.name)] = c.value;
            return out;
        });

    py::class_<cfi::HausmanResult>(m, "HausmanResult")
        .def_readonly("statistic", &cfi::HausmanResult::statistic)
        .def_readonly("df", &cfi::HausmanResult::df)
        .def_readonly("p_value", &cfi::HausmanResult::p_value)
        .def_property_readonly("recommends_random_effects", [](const cfi::HausmanResult& h) {
            return h.recommendation == cfi::Estimator::RandomEffects;
        });

    m.def(
        "pooled_ols",
        [](const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
           const std::vector<std::string>& entities, const std::vector<int>& years,
           std::vector<std::string> names) {
            return cfi::pooled_ols(sample_from(y, X, entities, years, std::move(names)));
        },
        py::arg("y"), py::arg("x"), py::arg("entities"), py::arg("years"),
        py::arg("names") = std::vector<std::string>{});
    m.def(
        "fixed_effects",
        [](const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
           const std::vector<std::string>& entities, const std::vector<int>& years,
           std::vector<std::string> names) {
            return cfi::fixed_effects(sample_from(y, X, entities, years, std::move(names)));
        },
        py::arg("y"), py::arg("x"), py::arg("entities"), py::arg("years"),
        py::arg("names") = std::vector<std::string>{});
    m.def(
        "random_effects",
        [](const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
           const std::vector<std::string>& entities, const std::vector<int>& years,
           std::vector<std::string> names) {
            return cfi::random_effects(sample_from(y, X, entities, years, std::move(names)));
        },
        py::arg("y"), py::arg("x"), py::arg("entities"), py::arg("years"),
        py::arg("names") = std::vector<std::string>{});
    m.def(
        "hausman",
        [](const cfi::RegressionResult& fe, const cfi::RegressionResult& re, double threshold) {
            return cfi::hausman(fe, re, threshold);
        },
        py::arg("fe"), py::arg("re"), py::arg("threshold") = 0.05);
}
