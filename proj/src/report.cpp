#include "cfi/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cfi {

std::string format_fixed(double value, int decimals) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
    return buffer;
}

std::string index_table_csv(const IndexSeries& series, const SummaryTable& summary,
                            int decimals) {
    std::ostringstream out;
    out << "Region";
    for (int year : series.years) out << ',' << year;
    out << ",Regional average\n";
    for (std::size_t i = 0; i < series.entities.size(); ++i) {
        out << series.entities[i];
        for (Eigen::Index t = 0; t < series.values.cols(); ++t)
            out << ',' << format_fixed(series.values(static_cast<Eigen::Index>(i), t), decimals);
        out << ',' << format_fixed(summary.regional_average(static_cast<Eigen::Index>(i)), decimals)
            << '\n';
    }
    out << "Period average";
    for (Eigen::Index t = 0; t < summary.period_average.size(); ++t)
        out << ',' << format_fixed(summary.period_average(t), decimals);
    out << ',' << format_fixed(summary.grand_mean, decimals) << '\n';
    out << "Standard deviation";
    for (Eigen::Index t = 0; t < summary.period_std.size(); ++t)
        out << ',' << format_fixed(summary.period_std(t), decimals);
    out << ",\n";
    return out.str();
}

std::string ssm_csv(const SsmReport& report, int decimals) {
    std::ostringstream out;
    out << "Method";
    for (int year : report.years) out << ',' << year;
    out << ",Mean\n";
    for (std::size_t k = 0; k < report.methods.size(); ++k) {
        out << method_name(report.methods[k]);
        for (Eigen::Index t = 0; t < report.losses.cols(); ++t)
            out << ','
                << format_fixed(report.losses(static_cast<Eigen::Index>(k), t), decimals);
        out << ',' << format_fixed(report.means(static_cast<Eigen::Index>(k)), decimals) << '\n';
    }
    return out.str();
}

std::string describe_csv(const std::vector<DescriptiveRow>& rows, int decimals) {
    std::ostringstream out;
    out << "Variable,Mean,Standard deviation,Minimum,Median,Maximum\n";
    for (const auto& row : rows) {
        out << row.variable << ',' << format_fixed(row.mean, decimals) << ','
            << format_fixed(row.std_dev, decimals) << ','
            << format_fixed(row.minimum, decimals) << ','
            << format_fixed(row.median, decimals) << ','
            << format_fixed(row.maximum, decimals) << '\n';
    }
    return out.str();
}

std::string hausman_text(const HausmanResult& result, const std::string& test_label) {
    std::ostringstream out;
    out << "Hausman test\n";
    out << "Test summary: " << test_label << '\n';
    out << "Chi-Sq. statistic: " << format_fixed(result.statistic, 6) << '\n';
    out << "Chi-Sq. d.f.: " << result.df << '\n';
    out << "Prob.: " << format_fixed(result.p_value, 4) << '\n';
    out << "Recommendation: "
        << (result.recommendation == Estimator::RandomEffects ? "random effects"
                                                              : "fixed effects")
        << '\n';
    return out.str();
}

std::string coefficient_cell(const Coefficient& coef, int decimals) {
    return format_fixed(coef.value, decimals) + significance_stars(coef.p_value) + " (" +
           format_fixed(coef.t_value, decimals) + ")";
}

namespace {

std::vector<std::string> collect_variables(const std::vector<RegressionResult>& results) {
    std::vector<std::string> variables;
    for (const auto& result : results)
        for (const auto& coef : result.coefficients)
            if (std::find(variables.begin(), variables.end(), coef.name) == variables.end())
                variables.push_back(coef.name);
    // keep "C" last, as in the published layout
    const auto it = std::find(variables.begin(), variables.end(), "C");
    if (it != variables.end()) {
        variables.erase(it);
        variables.push_back("C");
    }
    return variables;
}

std::vector<std::vector<std::string>> regression_grid(
    const std::vector<RegressionResult>& results, int decimals) {
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header{"Variable"};
    for (const auto& result : results) header.push_back(std::string(estimator_name(result.estimator)));
    grid.push_back(header);

    for (const auto& variable : collect_variables(results)) {
        std::vector<std::string> row{variable};
        for (const auto& result : results) {
            const Coefficient* coef = result.find(variable);
            row.push_back(coef != nullptr ? coefficient_cell(*coef, decimals) : "");
        }
        grid.push_back(row);
    }

    const auto stat_row = [&](const std::string& label, auto getter) {
        std::vector<std::string> row{label};
        for (const auto& result : results) row.push_back(getter(result));
        grid.push_back(row);
    };
    stat_row("R-squared", [&](const RegressionResult& r) {
        return format_fixed(r.r_squared, decimals);
    });
    stat_row("Adjusted R-squared", [&](const RegressionResult& r) {
        return format_fixed(r.adj_r_squared, decimals);
    });
    stat_row("F-statistic", [&](const RegressionResult& r) {
        return std::isfinite(r.f_statistic) ? format_fixed(r.f_statistic, decimals) : "inf";
    });
    stat_row("Prob(F-statistic)", [&](const RegressionResult& r) {
        return format_fixed(r.prob_f, decimals);
    });
    stat_row("Observations", [&](const RegressionResult& r) {
        return std::to_string(r.n_obs);
    });
    return grid;
}

std::string render_aligned(const std::vector<std::vector<std::string>>& grid) {
    std::vector<std::size_t> widths;
    for (const auto& row : grid) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());
    }
    std::ostringstream out;
    for (const auto& row : grid) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << "  ";
            out << row[c];
            if (c + 1 < row.size())
                out << std::string(widths[c] - row[c].size(), ' ');
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace

std::string regression_text(const std::vector<RegressionResult>& results,
                            const HausmanResult* hausman, int decimals) {
    if (results.empty()) throw Error(ErrorCode::EmptySample, "no regression results");
    std::ostringstream out;
    out << render_aligned(regression_grid(results, decimals));
    out << "\nNotes: *, **, *** mark coefficients significant at the 10%, 5% and 1% "
           "levels; () holds the t-value.\n";
    if (hausman != nullptr) {
        out << "Hausman: chi-sq " << format_fixed(hausman->statistic, 6) << " (df "
            << hausman->df << ", prob " << format_fixed(hausman->p_value, 4)
            << "); preferred specification: "
            << (hausman->recommendation == Estimator::RandomEffects ? "random effects"
                                                                    : "fixed effects")
            << '\n';
    }
    return out.str();
}

std::string regression_csv(const std::vector<RegressionResult>& results, int decimals) {
    if (results.empty()) throw Error(ErrorCode::EmptySample, "no regression results");
    const auto grid = regression_grid(results, decimals);
    std::ostringstream out;
    for (const auto& row : grid) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ',';
            out << row[c];
        }
        out << '\n';
    }
    return out.str();
}

std::string align_csv(const std::string& csv_text) {
    std::vector<std::vector<std::string>> grid;
    std::istringstream in(csv_text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> row;
        std::string field;
        std::stringstream fields(line);
        while (std::getline(fields, field, ',')) row.push_back(field);
        grid.push_back(std::move(row));
    }
    return render_aligned(grid);
}

}  // namespace cfi
