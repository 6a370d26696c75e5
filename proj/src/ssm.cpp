#include "cfi/ssm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace cfi {
namespace {

void require_nonnegative(const Eigen::MatrixXd& x, const char* what) {
    if ((x.array() < 0.0).any())
        throw Error(ErrorCode::NegativeCell,
                    std::string(what) + " must be nonnegative for share normalization");
}

}  // namespace

ShareMatrix share_matrix(const Eigen::MatrixXd& x) {
    require_nonnegative(x, "matrix");
    ShareMatrix shares;
    shares.p.resize(x.rows(), x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double total = x.col(j).sum();
        if (total <= 0.0)
            throw Error(ErrorCode::ZeroColumnSum,
                        "column " + std::to_string(j) + " sums to zero");
        shares.p.col(j) = x.col(j) / total;
    }
    return shares;
}

Eigen::VectorXd share_vector(const Eigen::VectorXd& x) {
    require_nonnegative(x, "vector");
    const double total = x.sum();
    if (total <= 0.0) throw Error(ErrorCode::ZeroColumnSum, "vector sums to zero");
    return x / total;
}

double diversity_factor(const Eigen::VectorXd& p) {
    const Eigen::Index m = p.size();
    if (m < 2) throw Error(ErrorCode::TooFewEntities, "diversity factor needs m >= 2");
    if ((p.array() < 0.0).any() || std::abs(p.sum() - 1.0) > 1e-9)
        throw Error(ErrorCode::NotASimplex, "probabilities must be nonnegative and sum to 1");

    double entropy_sum = 0.0;  // sum p ln p, with 0 ln 0 := 0
    for (Eigen::Index i = 0; i < m; ++i)
        if (p(i) > 0.0) entropy_sum += p(i) * std::log(p(i));
    const double value = 1.0 + entropy_sum / std::log(static_cast<double>(m));
    return std::clamp(value, 0.0, 1.0);
}

Eigen::VectorXd average_ranks(const Eigen::VectorXd& v) {
    const Eigen::Index n = v.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(),
              [&v](Eigen::Index a, Eigen::Index b) { return v(a) < v(b); });

    Eigen::VectorXd ranks(n);
    Eigen::Index pos = 0;
    while (pos < n) {
        Eigen::Index end = pos;
        while (end + 1 < n && v(order[static_cast<std::size_t>(end + 1)]) ==
                                  v(order[static_cast<std::size_t>(pos)]))
            ++end;
        // ranks pos+1 .. end+1 share their midpoint
        const double rank = 0.5 * static_cast<double>(pos + end) + 1.0;
        for (Eigen::Index k = pos; k <= end; ++k)
            ranks(order[static_cast<std::size_t>(k)]) = rank;
        pos = end + 1;
    }
    return ranks;
}

double spearman(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::LengthMismatch, "vectors differ in length");
    if (a.size() < 2)
        throw Error(ErrorCode::TooFewObservations, "rank correlation needs n >= 2");

    const Eigen::VectorXd ra = average_ranks(a);
    const Eigen::VectorXd rb = average_ranks(b);
    const Eigen::VectorXd da = ra.array() - ra.mean();
    const Eigen::VectorXd db = rb.array() - rb.mean();
    const double var_a = da.squaredNorm();
    const double var_b = db.squaredNorm();
    if (var_a == 0.0 || var_b == 0.0)
        throw Error(ErrorCode::ZeroRankVariance, "rank variance is zero (constant input)");
    return da.dot(db) / std::sqrt(var_a * var_b);
}

Eigen::VectorXd default_reference_ranks(Eigen::Index m) {
    Eigen::VectorXd r0(m);
    for (Eigen::Index i = 0; i < m; ++i) r0(i) = static_cast<double>(m - i);
    return r0;
}

double ssm_loss(const Eigen::MatrixXd& R, const Eigen::VectorXd& w, const Eigen::VectorXd& ci,
                const Eigen::VectorXd& r0) {
    if (w.size() != R.cols())
        throw Error(ErrorCode::DimensionMismatch, "weights do not match the matrix columns");
    if (ci.size() != R.rows() || r0.size() != R.rows())
        throw Error(ErrorCode::DimensionMismatch,
                    "composite / reference length does not match the matrix rows");

    const ShareMatrix shares = share_matrix(R);
    double aggregated = 0.0;
    for (Eigen::Index j = 0; j < R.cols(); ++j) {
        const double div_j = diversity_factor(shares.p.col(j));
        const double r_sj = spearman(R.col(j), r0);
        aggregated += w(j) * div_j * r_sj;
    }
    const double div_ci = diversity_factor(share_vector(ci));
    const double r_s = spearman(ci, r0);
    return std::abs(aggregated - div_ci * r_s);
}

SsmReport make_ssm_report(const std::vector<AggregationMethod>& methods,
                          const std::vector<int>& years, const Eigen::MatrixXd& losses,
                          WarningLog* warnings) {
    if (methods.empty()) throw Error(ErrorCode::InvalidConfig, "no candidate methods");
    if (losses.rows() != static_cast<Eigen::Index>(methods.size()) ||
        losses.cols() != static_cast<Eigen::Index>(years.size()))
        throw Error(ErrorCode::DimensionMismatch, "loss grid does not match methods x years");

    SsmReport report;
    report.methods = methods;
    report.years = years;
    report.losses = losses;
    report.means = losses.rowwise().mean();

    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < report.means.size(); ++k)
        if (report.means(k) < report.means(best)) best = k;
    for (Eigen::Index k = 0; k < report.means.size(); ++k) {
        if (k != best && report.means(k) == report.means(best)) {
            warn(warnings, "mean loss tie between " +
                               std::string(method_name(methods[static_cast<std::size_t>(best)])) +
                               " and " +
                               std::string(method_name(methods[static_cast<std::size_t>(k)])) +
                               "; keeping the first in canonical order");
            break;
        }
    }
    report.selected = methods[static_cast<std::size_t>(best)];
    return report;
}

SsmReport evaluate_methods(const std::vector<SsmYearInput>& inputs,
                           const std::vector<AggregationMethod>& methods,
                           const Eigen::VectorXd& r0, WarningLog* warnings) {
    if (inputs.empty()) throw Error(ErrorCode::InvalidConfig, "no evaluation inputs");
    if (methods.empty()) throw Error(ErrorCode::InvalidConfig, "no candidate methods");

    std::set<int> year_set;
    for (const auto& in : inputs) year_set.insert(in.year);
    std::vector<int> years(year_set.begin(), year_set.end());

    const auto n_methods = static_cast<Eigen::Index>(methods.size());
    const auto n_years = static_cast<Eigen::Index>(years.size());
    Eigen::MatrixXd losses = Eigen::MatrixXd::Zero(n_methods, n_years);
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(n_years);

    for (const auto& in : inputs) {
        const auto t = static_cast<Eigen::Index>(
            std::lower_bound(years.begin(), years.end(), in.year) - years.begin());
        counts(t) += 1.0;
        for (Eigen::Index k = 0; k < n_methods; ++k) {
            const auto it = in.ci.find(methods[static_cast<std::size_t>(k)]);
            if (it == in.ci.end())
                throw Error(ErrorCode::DimensionMismatch,
                            "missing composite for method " +
                                std::string(method_name(methods[static_cast<std::size_t>(k)])));
            losses(k, t) += ssm_loss(in.basis, in.weights.values, it->second, r0);
        }
    }
    for (Eigen::Index t = 0; t < n_years; ++t) losses.col(t) /= counts(t);

    return make_ssm_report(methods, years, losses, warnings);
}

}  // namespace cfi
