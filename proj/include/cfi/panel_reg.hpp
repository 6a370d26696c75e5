#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfi/errors.hpp"

namespace cfi {

struct PanelObservation {
    std::string entity;
    int year = 0;
    double response = 0.0;
    Eigen::VectorXd regressors;
};

/// Balanced or unbalanced panel of one response and k regressors.
struct PanelSample {
    std::string response_name = "y";
    std::vector<std::string> regressor_names;
    std::vector<PanelObservation> rows;

    // Requires >= 2 entities, >= 2 periods, N > k + 2, finite values, and a
    // {0,1} domain for any regressor named "location".
    void validate() const;
};

enum class Estimator { Pooled, FixedEffects, RandomEffects };
std::string_view estimator_name(Estimator estimator);

struct Coefficient {
    std::string name;
    double value = 0.0;
    double std_error = 0.0;
    double t_value = 0.0;
    double p_value = 1.0;
};

/// "***" below 1%, "**" below 5%, "*" below 10%, empty otherwise.
std::string significance_stars(double p_value);

struct RegressionResult {
    Estimator estimator = Estimator::Pooled;
    std::vector<Coefficient> coefficients;  // slopes in design order, then "C"
    Eigen::MatrixXd covariance;             // aligned with coefficients
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double f_statistic = 0.0;
    double prob_f = 1.0;
    Eigen::Index n_obs = 0;
    Eigen::Index df_residual = 0;
    std::vector<std::string> dropped;  // regressors removed from this fit
    std::vector<std::pair<std::string, double>> group_effects;  // FE: f_i
    double sigma2_idiosyncratic = 0.0;  // RE variance components
    double sigma2_effects = 0.0;
    std::map<std::string, double> theta;  // RE quasi-demeaning per group

    const Coefficient* find(const std::string& name) const;
};

struct RegressionSpec {
    std::vector<std::string> regressors;  // empty = every sample regressor
    bool time_dummies = false;            // add per-year dummies (entity effects only)
    enum class Effects { Entity, Time };
    Effects effects = Effects::Entity;    // grouping dimension for FE / RE
    std::optional<double> forced_theta;   // RE test hook: pin theta (0 = pooled, 1 = within)
};

struct DescriptiveRow {
    std::string variable;
    double mean = 0.0;
    double std_dev = 0.0;
    double minimum = 0.0;
    double median = 0.0;
    double maximum = 0.0;
};

/// Mean, sample standard deviation, min, median (midpoint of the two middle
/// values for even counts), max for the response and every regressor.
std::vector<DescriptiveRow> describe(const PanelSample& sample);

RegressionResult pooled_ols(const PanelSample& sample, const RegressionSpec& spec = {});

/// Within (group-demeaned) estimator. Regressors without within variation
/// are dropped with a warning; the recovered group effects are reported.
RegressionResult fixed_effects(const PanelSample& sample, const RegressionSpec& spec = {},
                               WarningLog* warnings = nullptr);

/// FGLS with Swamy-Arora variance components and per-group quasi-demeaning.
/// When the between regression is infeasible (too few groups), sigma2_u
/// falls back to the Nerlove variance of the fixed effects, with a warning.
RegressionResult random_effects(const PanelSample& sample, const RegressionSpec& spec = {},
                                WarningLog* warnings = nullptr);

struct HausmanResult {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    Estimator recommendation = Estimator::RandomEffects;
};

/// H = (b_FE - b_RE)' (V_FE - V_RE)^-1 (b_FE - b_RE) over the common slope
/// subset. A singular or indefinite covariance gap falls back to the
/// pseudo-inverse with a warning; H is clamped at zero. Recommends random
/// effects when p exceeds the threshold.
HausmanResult hausman(const RegressionResult& fe, const RegressionResult& re,
                      double threshold = 0.05, WarningLog* warnings = nullptr);

}  // namespace cfi
