#include "cfi/panel_reg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace cfi {
namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double t_tail_pvalue(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double f_tail_pvalue(double f, double df1, double df2) {
    if (!std::isfinite(f)) return 0.0;
    if (f <= 0.0) return 1.0;
    boost::math::fisher_f dist(df1, df2);
    return boost::math::cdf(boost::math::complement(dist, f));
}

double chi2_tail_pvalue(double x, double df) {
    if (!std::isfinite(x)) return 0.0;
    if (x <= 0.0) return 1.0;
    boost::math::chi_squared dist(df);
    return boost::math::cdf(boost::math::complement(dist, x));
}

// Design matrix (no intercept column), grouping indices, and per-row time
// indices for one estimation run.
struct Design {
    Eigen::VectorXd y;
    Eigen::MatrixXd X;
    std::vector<std::string> names;
    std::vector<int> group;                // per row, into group_labels
    std::vector<std::string> group_labels; // sorted
    std::vector<int> group_sizes;
};

Design build_design(const PanelSample& sample, const RegressionSpec& spec) {
    sample.validate();
    if (spec.effects == RegressionSpec::Effects::Time && spec.time_dummies)
        throw Error(ErrorCode::InvalidConfig,
                    "time dummies cannot be combined with time effects");

    std::vector<Eigen::Index> columns;
    std::vector<std::string> names;
    if (spec.regressors.empty()) {
        for (std::size_t j = 0; j < sample.regressor_names.size(); ++j) {
            columns.push_back(static_cast<Eigen::Index>(j));
            names.push_back(sample.regressor_names[j]);
        }
    } else {
        for (const auto& name : spec.regressors) {
            const auto it = std::find(sample.regressor_names.begin(),
                                      sample.regressor_names.end(), name);
            if (it == sample.regressor_names.end())
                throw Error(ErrorCode::InvalidConfig, "unknown regressor '" + name + "'");
            columns.push_back(it - sample.regressor_names.begin());
            names.push_back(name);
        }
    }
    if (columns.empty())
        throw Error(ErrorCode::InvalidConfig, "no regressors selected");

    std::set<int> year_set;
    std::set<std::string> entity_set;
    for (const auto& row : sample.rows) {
        year_set.insert(row.year);
        entity_set.insert(row.entity);
    }
    std::vector<int> years(year_set.begin(), year_set.end());

    Design design;
    const auto n = static_cast<Eigen::Index>(sample.rows.size());
    const auto base_k = static_cast<Eigen::Index>(columns.size());
    const Eigen::Index dummy_k =
        spec.time_dummies ? static_cast<Eigen::Index>(years.size()) - 1 : 0;
    design.y.resize(n);
    design.X.resize(n, base_k + dummy_k);
    design.names = names;
    for (Eigen::Index d = 0; d < dummy_k; ++d)
        design.names.push_back("d" + std::to_string(years[static_cast<std::size_t>(d + 1)]));

    if (spec.effects == RegressionSpec::Effects::Entity)
        design.group_labels.assign(entity_set.begin(), entity_set.end());
    else
        for (int year : years) design.group_labels.push_back(std::to_string(year));
    design.group_sizes.assign(design.group_labels.size(), 0);

    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = sample.rows[static_cast<std::size_t>(i)];
        design.y(i) = row.response;
        for (Eigen::Index c = 0; c < base_k; ++c)
            design.X(i, c) = row.regressors(columns[static_cast<std::size_t>(c)]);
        for (Eigen::Index d = 0; d < dummy_k; ++d)
            design.X(i, base_k + d) =
                row.year == years[static_cast<std::size_t>(d + 1)] ? 1.0 : 0.0;

        const std::string label = spec.effects == RegressionSpec::Effects::Entity
                                      ? row.entity
                                      : std::to_string(row.year);
        const auto it = std::lower_bound(design.group_labels.begin(),
                                         design.group_labels.end(), label);
        const int g = static_cast<int>(it - design.group_labels.begin());
        design.group.push_back(g);
        ++design.group_sizes[static_cast<std::size_t>(g)];
    }
    return design;
}

struct OlsFit {
    Eigen::VectorXd beta;
    Eigen::MatrixXd xtx_inverse;
    double ssr = 0.0;
};

// Least squares with an explicit rank check that names the collinear columns.
OlsFit solve_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                 const std::vector<std::string>& names) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < X.cols()) {
        const auto& perm = qr.colsPermutation().indices();
        std::string offending;
        for (Eigen::Index c = qr.rank(); c < X.cols(); ++c) {
            if (!offending.empty()) offending += ", ";
            offending += names[static_cast<std::size_t>(perm(c))];
        }
        throw Error(ErrorCode::RankDeficient, "collinear columns: " + offending);
    }
    OlsFit fit;
    fit.beta = qr.solve(y);
    fit.xtx_inverse = (X.transpose() * X).ldlt().solve(
        Eigen::MatrixXd::Identity(X.cols(), X.cols()));
    fit.ssr = (y - X * fit.beta).squaredNorm();
    return fit;
}

std::vector<Coefficient> make_coefficients(const Eigen::VectorXd& beta,
                                           const Eigen::MatrixXd& covariance,
                                           const std::vector<std::string>& names,
                                           double df_residual) {
    std::vector<Coefficient> out;
    for (Eigen::Index c = 0; c < beta.size(); ++c) {
        Coefficient coef;
        coef.name = names[static_cast<std::size_t>(c)];
        coef.value = beta(c);
        coef.std_error = std::sqrt(std::max(0.0, covariance(c, c)));
        coef.t_value = coef.std_error > 0.0
                           ? coef.value / coef.std_error
                           : (coef.value == 0.0 ? 0.0
                                                : std::numeric_limits<double>::infinity() *
                                                      (coef.value > 0 ? 1 : -1));
        coef.p_value = df_residual > 0 ? t_tail_pvalue(coef.t_value, df_residual) : 1.0;
        out.push_back(std::move(coef));
    }
    return out;
}

struct GroupMeans {
    Eigen::VectorXd y;   // per group
    Eigen::MatrixXd X;   // groups x columns
};

GroupMeans group_means(const Design& design) {
    const auto g_count = static_cast<Eigen::Index>(design.group_labels.size());
    GroupMeans means;
    means.y = Eigen::VectorXd::Zero(g_count);
    means.X = Eigen::MatrixXd::Zero(g_count, design.X.cols());
    for (Eigen::Index i = 0; i < design.y.size(); ++i) {
        const int g = design.group[static_cast<std::size_t>(i)];
        means.y(g) += design.y(i);
        means.X.row(g) += design.X.row(i);
    }
    for (Eigen::Index g = 0; g < g_count; ++g) {
        means.y(g) /= design.group_sizes[static_cast<std::size_t>(g)];
        means.X.row(g) /= design.group_sizes[static_cast<std::size_t>(g)];
    }
    return means;
}

struct WithinFit {
    OlsFit fit;
    std::vector<Eigen::Index> kept;      // column indices into the design
    std::vector<std::string> kept_names;
    std::vector<std::string> dropped;
    Eigen::VectorXd effects;             // per group
    double sst = 0.0;
    Eigen::Index df_residual = 0;
};

WithinFit within_fit(const Design& design, WarningLog* warnings) {
    const GroupMeans means = group_means(design);
    const Eigen::Index n = design.y.size();
    const auto g_count = static_cast<Eigen::Index>(design.group_labels.size());

    Eigen::VectorXd y_within(n);
    Eigen::MatrixXd x_within(n, design.X.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        const int g = design.group[static_cast<std::size_t>(i)];
        y_within(i) = design.y(i) - means.y(g);
        x_within.row(i) = design.X.row(i) - means.X.row(g);
    }

    WithinFit within;
    for (Eigen::Index c = 0; c < design.X.cols(); ++c) {
        const double scale = 1.0 + design.X.col(c).cwiseAbs().maxCoeff();
        if (x_within.col(c).cwiseAbs().maxCoeff() <= 1e-9 * scale) {
            within.dropped.push_back(design.names[static_cast<std::size_t>(c)]);
            warn(warnings, "regressor '" + design.names[static_cast<std::size_t>(c)] +
                               "' has no within variation; dropped from the within fit");
        } else {
            within.kept.push_back(c);
            within.kept_names.push_back(design.names[static_cast<std::size_t>(c)]);
        }
    }
    if (within.kept.empty())
        throw Error(ErrorCode::RankDeficient, "no regressor varies within groups");

    Eigen::MatrixXd x_kept(n, static_cast<Eigen::Index>(within.kept.size()));
    for (std::size_t c = 0; c < within.kept.size(); ++c)
        x_kept.col(static_cast<Eigen::Index>(c)) = x_within.col(within.kept[c]);

    within.fit = solve_ols(x_kept, y_within, within.kept_names);
    within.sst = y_within.squaredNorm();
    within.df_residual = n - g_count - static_cast<Eigen::Index>(within.kept.size());
    if (within.df_residual <= 0)
        throw Error(ErrorCode::InvalidSample, "within regression has no residual degrees of freedom");

    within.effects.resize(g_count);
    for (Eigen::Index g = 0; g < g_count; ++g) {
        double fitted = 0.0;
        for (std::size_t c = 0; c < within.kept.size(); ++c)
            fitted += means.X(g, within.kept[c]) * within.fit.beta(static_cast<Eigen::Index>(c));
        within.effects(g) = means.y(g) - fitted;
    }
    return within;
}

}  // namespace

void PanelSample::validate() const {
    if (rows.empty()) throw Error(ErrorCode::EmptySample, "panel sample is empty");
    const auto k = static_cast<Eigen::Index>(regressor_names.size());
    std::set<std::string> entities;
    std::set<int> years;
    for (const auto& row : rows) {
        if (row.regressors.size() != k)
            throw Error(ErrorCode::LengthMismatch,
                        "row for entity " + row.entity + " has " +
                            std::to_string(row.regressors.size()) + " regressors, expected " +
                            std::to_string(k));
        if (!std::isfinite(row.response) || !row.regressors.allFinite())
            throw Error(ErrorCode::NonFiniteValue,
                        "non-finite value for entity " + row.entity + ", year " +
                            std::to_string(row.year));
        entities.insert(row.entity);
        years.insert(row.year);
    }
    if (entities.size() < 2)
        throw Error(ErrorCode::InvalidSample, "panel needs at least two entities");
    if (years.size() < 2)
        throw Error(ErrorCode::InvalidSample, "panel needs at least two periods");
    if (static_cast<Eigen::Index>(rows.size()) <= k + 2)
        throw Error(ErrorCode::InvalidSample, "panel needs more than k + 2 observations");

    for (std::size_t j = 0; j < regressor_names.size(); ++j) {
        if (lower(regressor_names[j]) != "location") continue;
        for (const auto& row : rows) {
            const double v = row.regressors(static_cast<Eigen::Index>(j));
            if (v != 0.0 && v != 1.0)
                throw Error(ErrorCode::InvalidSample,
                            "location must be 0 or 1, got " + std::to_string(v) +
                                " for entity " + row.entity);
        }
    }
}

std::string_view estimator_name(Estimator estimator) {
    switch (estimator) {
        case Estimator::Pooled: return "Pooled OLS";
        case Estimator::FixedEffects: return "Fixed effects";
        case Estimator::RandomEffects: return "Random effects";
    }
    return "?";
}

std::string significance_stars(double p_value) {
    if (p_value < 0.01) return "***";
    if (p_value < 0.05) return "**";
    if (p_value < 0.10) return "*";
    return "";
}

const Coefficient* RegressionResult::find(const std::string& name) const {
    for (const auto& coef : coefficients)
        if (coef.name == name) return &coef;
    return nullptr;
}

std::vector<DescriptiveRow> describe(const PanelSample& sample) {
    if (sample.rows.empty()) throw Error(ErrorCode::EmptySample, "panel sample is empty");
    const auto n = sample.rows.size();
    const auto k = sample.regressor_names.size();

    std::vector<DescriptiveRow> table;
    for (std::size_t v = 0; v <= k; ++v) {
        std::vector<double> values;
        values.reserve(n);
        for (const auto& row : sample.rows)
            values.push_back(v == 0 ? row.response
                                    : row.regressors(static_cast<Eigen::Index>(v - 1)));

        DescriptiveRow stats;
        stats.variable = v == 0 ? sample.response_name : sample.regressor_names[v - 1];
        stats.mean = std::accumulate(values.begin(), values.end(), 0.0) /
                     static_cast<double>(n);
        double ss = 0.0;
        for (double x : values) ss += (x - stats.mean) * (x - stats.mean);
        stats.std_dev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;

        std::sort(values.begin(), values.end());
        stats.minimum = values.front();
        stats.maximum = values.back();
        stats.median = n % 2 == 1 ? values[n / 2]
                                  : 0.5 * (values[n / 2 - 1] + values[n / 2]);
        table.push_back(std::move(stats));
    }
    return table;
}

RegressionResult pooled_ols(const PanelSample& sample, const RegressionSpec& spec) {
    const Design design = build_design(sample, spec);
    const Eigen::Index n = design.y.size();
    const Eigen::Index k = design.X.cols();

    Eigen::MatrixXd X(n, k + 1);
    X.leftCols(k) = design.X;
    X.col(k).setOnes();
    std::vector<std::string> names = design.names;
    names.push_back("C");

    const OlsFit fit = solve_ols(X, design.y, names);
    const Eigen::Index df = n - k - 1;
    if (df <= 0) throw Error(ErrorCode::InvalidSample, "no residual degrees of freedom");
    const double sigma2 = fit.ssr / static_cast<double>(df);

    RegressionResult result;
    result.estimator = Estimator::Pooled;
    result.covariance = sigma2 * fit.xtx_inverse;
    result.coefficients =
        make_coefficients(fit.beta, result.covariance, names, static_cast<double>(df));
    result.n_obs = n;
    result.df_residual = df;

    const double sst = (design.y.array() - design.y.mean()).square().sum();
    if (sst <= 0.0) {
        // constant response: nothing to explain
        result.r_squared = 0.0;
        result.adj_r_squared = 0.0;
        result.f_statistic = 0.0;
        result.prob_f = 1.0;
        return result;
    }
    result.r_squared = 1.0 - fit.ssr / sst;
    result.adj_r_squared =
        1.0 - (1.0 - result.r_squared) * static_cast<double>(n - 1) / static_cast<double>(df);
    result.f_statistic = fit.ssr > 0.0
                             ? ((sst - fit.ssr) / static_cast<double>(k)) /
                                   (fit.ssr / static_cast<double>(df))
                             : std::numeric_limits<double>::infinity();
    result.prob_f =
        f_tail_pvalue(result.f_statistic, static_cast<double>(k), static_cast<double>(df));
    return result;
}

RegressionResult fixed_effects(const PanelSample& sample, const RegressionSpec& spec,
                               WarningLog* warnings) {
    const Design design = build_design(sample, spec);
    const WithinFit within = within_fit(design, warnings);
    const Eigen::Index n = design.y.size();
    const Eigen::Index df = within.df_residual;
    const double sigma2 = within.fit.ssr / static_cast<double>(df);

    RegressionResult result;
    result.estimator = Estimator::FixedEffects;
    result.covariance = sigma2 * within.fit.xtx_inverse;
    result.coefficients = make_coefficients(within.fit.beta, result.covariance,
                                            within.kept_names, static_cast<double>(df));
    result.n_obs = n;
    result.df_residual = df;
    result.dropped = within.dropped;
    for (std::size_t g = 0; g < design.group_labels.size(); ++g)
        result.group_effects.emplace_back(design.group_labels[g],
                                          within.effects(static_cast<Eigen::Index>(g)));

    const auto k = static_cast<double>(within.kept.size());
    if (within.sst <= 0.0) {
        result.r_squared = 0.0;
        result.adj_r_squared = 0.0;
        result.f_statistic = 0.0;
        result.prob_f = 1.0;
        return result;
    }
    result.r_squared = 1.0 - within.fit.ssr / within.sst;
    result.adj_r_squared = 1.0 - (1.0 - result.r_squared) * static_cast<double>(n - 1) /
                                     static_cast<double>(df);
    result.f_statistic =
        within.fit.ssr > 0.0
            ? ((within.sst - within.fit.ssr) / k) / (within.fit.ssr / static_cast<double>(df))
            : std::numeric_limits<double>::infinity();
    result.prob_f = f_tail_pvalue(result.f_statistic, k, static_cast<double>(df));
    return result;
}

RegressionResult random_effects(const PanelSample& sample, const RegressionSpec& spec,
                                WarningLog* warnings) {
    const Design design = build_design(sample, spec);
    const Eigen::Index n = design.y.size();
    const Eigen::Index k = design.X.cols();
    const auto g_count = static_cast<Eigen::Index>(design.group_labels.size());

    double sigma2_e = 0.0;
    double sigma2_u = 0.0;
    if (!spec.forced_theta.has_value()) {
        const WithinFit within = within_fit(design, warnings);
        sigma2_e = within.fit.ssr / static_cast<double>(within.df_residual);
        // Swamy-Arora: between regression on group means when feasible,
        // otherwise the Nerlove variance of the recovered fixed effects.
        const Eigen::Index df_between = g_count - k - 1;
        bool between_ok = df_between >= 1;
        if (between_ok) {
            const GroupMeans means = group_means(design);
            Eigen::MatrixXd xb(g_count, k + 1);
            xb.leftCols(k) = means.X;
            xb.col(k).setOnes();
            try {
                std::vector<std::string> names = design.names;
                names.push_back("C");
                const OlsFit between = solve_ols(xb, means.y, names);
                double harmonic = 0.0;
                for (int size : design.group_sizes) harmonic += 1.0 / size;
                harmonic = static_cast<double>(g_count) / harmonic;
                sigma2_u = between.ssr / static_cast<double>(df_between) - sigma2_e / harmonic;
            } catch (const Error&) {
                between_ok = false;
            }
        }
        if (!between_ok) {
            const double mean_effect = within.effects.mean();
            sigma2_u = (within.effects.array() - mean_effect).square().sum() /
                       static_cast<double>(g_count - 1);
            warn(warnings,
                 "between regression infeasible (groups <= regressors + 1); using the "
                 "Nerlove variance of the fixed effects for sigma2_u");
        }
        if (sigma2_u < 0.0) {
            warn(warnings, "negative variance component sigma2_u clamped to zero");
            sigma2_u = 0.0;
        }
    }

    Eigen::VectorXd theta(g_count);
    for (Eigen::Index g = 0; g < g_count; ++g) {
        if (spec.forced_theta.has_value()) {
            theta(g) = *spec.forced_theta;
        } else if (sigma2_e == 0.0) {
            theta(g) = sigma2_u > 0.0 ? 1.0 : 0.0;
        } else {
            const double t_g = design.group_sizes[static_cast<std::size_t>(g)];
            theta(g) = 1.0 - std::sqrt(sigma2_e / (sigma2_e + t_g * sigma2_u));
        }
    }

    const GroupMeans means = group_means(design);
    Eigen::VectorXd y_star(n);
    Eigen::MatrixXd x_star(n, k + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int g = design.group[static_cast<std::size_t>(i)];
        y_star(i) = design.y(i) - theta(g) * means.y(g);
        x_star.row(i).head(k) = design.X.row(i) - theta(g) * means.X.row(g);
        x_star(i, k) = 1.0 - theta(g);
    }
    std::vector<std::string> names = design.names;
    names.push_back("C");

    // Columns annihilated by the transform (theta == 1) drop out like in FE.
    std::vector<Eigen::Index> kept;
    std::vector<std::string> kept_names;
    std::vector<std::string> dropped;
    for (Eigen::Index c = 0; c <= k; ++c) {
        const double scale =
            c < k ? 1.0 + design.X.col(c).cwiseAbs().maxCoeff() : 2.0;
        if (x_star.col(c).cwiseAbs().maxCoeff() <= 1e-9 * scale) {
            dropped.push_back(names[static_cast<std::size_t>(c)]);
            warn(warnings, "column '" + names[static_cast<std::size_t>(c)] +
                               "' vanishes under quasi-demeaning; dropped");
        } else {
            kept.push_back(c);
            kept_names.push_back(names[static_cast<std::size_t>(c)]);
        }
    }
    Eigen::MatrixXd x_kept(n, static_cast<Eigen::Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c)
        x_kept.col(static_cast<Eigen::Index>(c)) = x_star.col(kept[c]);

    const OlsFit fit = solve_ols(x_kept, y_star, kept_names);
    const Eigen::Index df = n - static_cast<Eigen::Index>(kept.size());
    if (df <= 0) throw Error(ErrorCode::InvalidSample, "no residual degrees of freedom");
    const double sigma2 = fit.ssr / static_cast<double>(df);

    RegressionResult result;
    result.estimator = Estimator::RandomEffects;
    result.covariance = sigma2 * fit.xtx_inverse;
    result.coefficients =
        make_coefficients(fit.beta, result.covariance, kept_names, static_cast<double>(df));
    result.n_obs = n;
    result.df_residual = df;
    result.dropped = dropped;
    result.sigma2_idiosyncratic = sigma2_e;
    result.sigma2_effects = sigma2_u;
    for (Eigen::Index g = 0; g < g_count; ++g)
        result.theta[design.group_labels[static_cast<std::size_t>(g)]] = theta(g);

    // Restricted GLS fit: transformed intercept alone (zero model if the
    // intercept vanished).
    double ssr0 = y_star.squaredNorm();
    const bool intercept_kept = !kept.empty() && kept.back() == k;
    Eigen::Index k_slopes = static_cast<Eigen::Index>(kept.size());
    if (intercept_kept) {
        --k_slopes;
        const Eigen::VectorXd c_star = x_star.col(k);
        const double denom = c_star.squaredNorm();
        ssr0 -= (c_star.dot(y_star) * c_star.dot(y_star)) / denom;
    }
    if (ssr0 <= 0.0) {
        result.r_squared = 0.0;
        result.adj_r_squared = 0.0;
        result.f_statistic = 0.0;
        result.prob_f = 1.0;
        return result;
    }
    result.r_squared = 1.0 - fit.ssr / ssr0;
    result.adj_r_squared = 1.0 - (1.0 - result.r_squared) * static_cast<double>(n - 1) /
                                     static_cast<double>(df);
    result.f_statistic = fit.ssr > 0.0 && k_slopes > 0
                             ? ((ssr0 - fit.ssr) / static_cast<double>(k_slopes)) /
                                   (fit.ssr / static_cast<double>(df))
                             : std::numeric_limits<double>::infinity();
    result.prob_f = f_tail_pvalue(result.f_statistic, static_cast<double>(std::max<Eigen::Index>(
                                                          k_slopes, 1)),
                                  static_cast<double>(df));
    return result;
}

HausmanResult hausman(const RegressionResult& fe, const RegressionResult& re,
                      double threshold, WarningLog* warnings) {
    std::vector<Eigen::Index> fe_idx;
    std::vector<Eigen::Index> re_idx;
    for (std::size_t a = 0; a < fe.coefficients.size(); ++a) {
        const auto& name = fe.coefficients[a].name;
        if (name == "C") continue;
        for (std::size_t b = 0; b < re.coefficients.size(); ++b) {
            if (re.coefficients[b].name == name) {
                fe_idx.push_back(static_cast<Eigen::Index>(a));
                re_idx.push_back(static_cast<Eigen::Index>(b));
                break;
            }
        }
    }
    if (fe_idx.empty())
        throw Error(ErrorCode::DimensionMismatch,
                    "no common slope coefficients between FE and RE");

    const auto q = static_cast<Eigen::Index>(fe_idx.size());
    Eigen::VectorXd gap(q);
    Eigen::MatrixXd v_gap(q, q);
    for (Eigen::Index a = 0; a < q; ++a) {
        gap(a) = fe.coefficients[static_cast<std::size_t>(fe_idx[a])].value -
                 re.coefficients[static_cast<std::size_t>(re_idx[a])].value;
        for (Eigen::Index b = 0; b < q; ++b)
            v_gap(a, b) = fe.covariance(fe_idx[a], fe_idx[b]) -
                          re.covariance(re_idx[a], re_idx[b]);
    }

    double statistic = std::numeric_limits<double>::quiet_NaN();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(v_gap);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive())
        statistic = gap.dot(ldlt.solve(gap));
    if (!std::isfinite(statistic) || statistic < 0.0) {
        warn(warnings,
             "covariance gap V_FE - V_RE is singular or not positive definite; "
             "falling back to its pseudo-inverse");
        const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(v_gap);
        statistic = std::max(0.0, gap.dot(cod.pseudoInverse() * gap));
    }

    HausmanResult result;
    result.statistic = statistic;
    result.df = static_cast<int>(q);
    result.p_value = chi2_tail_pvalue(statistic, static_cast<double>(q));
    result.recommendation =
        result.p_value > threshold ? Estimator::RandomEffects : Estimator::FixedEffects;
    return result;
}

}  // namespace cfi
