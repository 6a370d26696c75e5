#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "cfi/transform.hpp"
#include "helpers.hpp"

using namespace cfi;

TEST_CASE("global extrema pool over all entities and years") {
    HierarchySpec hierarchy = helpers::simple_hierarchy(1);
    std::vector<RawRecord> records{{"A", 2015, "x0", 2.0}, {"B", 2015, "x0", 5.0},
                                   {"A", 2016, "x0", 9.0}, {"B", 2016, "x0", 3.0}};
    const PanelDataset ds = validate_dataset(records, hierarchy);
    const GlobalExtrema ext = global_extrema(ds);
    CHECK(ext.minimum(0) == 2.0);
    CHECK(ext.maximum(0) == 9.0);

    SUBCASE("constant indicator degenerates to max == min") {
        std::vector<RawRecord> flat{{"A", 2015, "x0", 4.0}, {"B", 2015, "x0", 4.0},
                                    {"A", 2016, "x0", 4.0}, {"B", 2016, "x0", 4.0}};
        const GlobalExtrema flat_ext = global_extrema(validate_dataset(flat, hierarchy));
        CHECK(flat_ext.minimum(0) == 4.0);
        CHECK(flat_ext.maximum(0) == 4.0);
    }
}

TEST_CASE("global extrema match an exhaustive scan on random data") {
    std::mt19937 rng(11);
    const HierarchySpec hierarchy = helpers::simple_hierarchy(2);
    const PanelDataset ds = helpers::random_dataset(rng, 3, 2, 2, hierarchy);
    const GlobalExtrema ext = global_extrema(ds);

    for (Eigen::Index j = 0; j < 2; ++j) {
        double lo = ds.value(0, j, 0);
        double hi = lo;
        for (Eigen::Index i = 0; i < ds.entity_count(); ++i)
            for (Eigen::Index t = 0; t < ds.year_count(); ++t) {
                lo = std::min(lo, ds.value(i, j, t));
                hi = std::max(hi, ds.value(i, j, t));
            }
        CHECK(ext.minimum(j) == lo);
        CHECK(ext.maximum(j) == hi);
    }
}

namespace {

GlobalExtrema extrema_for(const DecisionMatrix& mat) {
    GlobalExtrema ext;
    ext.indicators = mat.indicators;
    ext.minimum = mat.cells.colwise().minCoeff();
    ext.maximum = mat.cells.colwise().maxCoeff();
    return ext;
}

}  // namespace

TEST_CASE("min-max normalization endpoints and the worked column") {
    Eigen::MatrixXd cells(3, 1);
    cells << 2.0, 5.0, 9.0;
    const DecisionMatrix mat = helpers::matrix(cells);
    const GlobalExtrema ext = extrema_for(mat);

    const DecisionMatrix benefit = normalize_maut(mat, ext, {Polarity::Benefit});
    CHECK(benefit.stage == Stage::Normalized);
    CHECK(benefit.cells(0, 0) == 0.0);              // x == min
    CHECK(benefit.cells(1, 0) == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
    CHECK(benefit.cells(2, 0) == 1.0);              // x == max

    const DecisionMatrix cost = normalize_maut(mat, ext, {Polarity::Cost});
    CHECK(cost.cells(0, 0) == 1.0);                 // cost direction reverses
    CHECK(cost.cells(2, 0) == 0.0);
}

TEST_CASE("degenerate min-max column maps to 0.5 with a warning") {
    Eigen::MatrixXd cells(3, 2);
    cells << 4.0, 1.0, 4.0, 2.0, 4.0, 3.0;
    const DecisionMatrix mat = helpers::matrix(cells);
    WarningLog warnings;
    const DecisionMatrix out =
        normalize_maut(mat, extrema_for(mat), {Polarity::Benefit, Polarity::Benefit}, &warnings);
    CHECK((out.cells.col(0).array() == 0.5).all());
    REQUIRE(warnings.messages.size() == 1);
    CHECK(warnings.messages[0].find("x0") != std::string::npos);
}

TEST_CASE("benefit and cost normalizations of a column sum to one cell-wise") {
    std::mt19937 rng(12);
    for (int rep = 0; rep < 20; ++rep) {
        const DecisionMatrix mat = helpers::matrix(helpers::random_matrix(rng, 4, 3, 0.0, 10.0));
        const GlobalExtrema ext = extrema_for(mat);
        const std::vector<Polarity> benefit(3, Polarity::Benefit);
        const std::vector<Polarity> cost(3, Polarity::Cost);
        const Eigen::MatrixXd total = normalize_maut(mat, ext, benefit).cells +
                                      normalize_maut(mat, ext, cost).cells;
        CHECK((total.array() - 1.0).abs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("min-max output is invariant under positive affine rescaling of a column") {
    std::mt19937 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        DecisionMatrix mat = helpers::matrix(helpers::random_matrix(rng, 5, 2, 0.0, 10.0));
        const std::vector<Polarity> polarity{Polarity::Benefit, Polarity::Cost};
        const Eigen::MatrixXd base = normalize_maut(mat, extrema_for(mat), polarity).cells;

        std::uniform_real_distribution<double> scale(0.1, 5.0);
        DecisionMatrix rescaled = mat;
        rescaled.cells.col(0) = scale(rng) * mat.cells.col(0).array() + scale(rng);
        const Eigen::MatrixXd again =
            normalize_maut(rescaled, extrema_for(rescaled), polarity).cells;
        CHECK((base - again).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("linear normalization divides by the column maximum") {
    Eigen::MatrixXd cells(3, 1);
    cells << 2.0, 5.0, 10.0;
    const DecisionMatrix out = normalize_ln(helpers::matrix(cells));
    CHECK(out.cells(0, 0) == doctest::Approx(0.2));
    CHECK(out.cells(1, 0) == doctest::Approx(0.5));
    CHECK(out.cells(2, 0) == doctest::Approx(1.0));

    SUBCASE("all-equal positive column maps to ones") {
        Eigen::MatrixXd flat = Eigen::MatrixXd::Constant(3, 1, 3.0);
        CHECK((normalize_ln(helpers::matrix(flat)).cells.array() == 1.0).all());
    }
    SUBCASE("random matrix equals the cell-over-column-max oracle") {
        std::mt19937 rng(14);
        const Eigen::MatrixXd x = helpers::random_matrix(rng, 6, 4, 0.01, 9.0);
        const Eigen::MatrixXd got = normalize_ln(helpers::matrix(x)).cells;
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            double column_max = x(0, j);
            for (Eigen::Index i = 1; i < x.rows(); ++i) column_max = std::max(column_max, x(i, j));
            for (Eigen::Index i = 0; i < x.rows(); ++i)
                CHECK(got(i, j) == doctest::Approx(x(i, j) / column_max).epsilon(1e-14));
        }
    }
    SUBCASE("zero column maximum is an error") {
        Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(3, 1);
        CHECK_THROWS_AS(normalize_ln(helpers::matrix(zeros)), Error);
    }
    SUBCASE("negative cells are rejected") {
        Eigen::MatrixXd bad(2, 1);
        bad << -1.0, 2.0;
        CHECK_THROWS_AS(normalize_ln(helpers::matrix(bad)), Error);
    }
}

TEST_CASE("vector normalization scales columns to unit Euclidean norm") {
    Eigen::MatrixXd cells(2, 1);
    cells << 3.0, 4.0;
    const DecisionMatrix out = normalize_vn(helpers::matrix(cells));
    CHECK(out.cells(0, 0) == doctest::Approx(0.6));
    CHECK(out.cells(1, 0) == doctest::Approx(0.8));

    SUBCASE("unit column is unchanged") {
        Eigen::MatrixXd unit(3, 1);
        unit << 1.0, 0.0, 0.0;
        CHECK(normalize_vn(helpers::matrix(unit)).cells == unit);
    }
    SUBCASE("column norms are one on random data") {
        std::mt19937 rng(15);
        const Eigen::MatrixXd x = helpers::random_matrix(rng, 7, 5, 0.0, 4.0);
        const Eigen::MatrixXd got = normalize_vn(helpers::matrix(x)).cells;
        for (Eigen::Index j = 0; j < got.cols(); ++j)
            CHECK(std::abs(got.col(j).norm() - 1.0) < 1e-12);
    }
    SUBCASE("zero column is an error") {
        Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(3, 2);
        zeros.col(0).setConstant(1.0);
        CHECK_THROWS_AS(normalize_vn(helpers::matrix(zeros)), Error);
    }
}

TEST_CASE("LN and VN preserve within-column rank order") {
    std::mt19937 rng(16);
    const Eigen::MatrixXd x = helpers::random_matrix(rng, 8, 3, 0.0, 5.0);
    for (const auto& normalized : {normalize_ln(helpers::matrix(x)).cells,
                                   normalize_vn(helpers::matrix(x)).cells}) {
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            for (Eigen::Index a = 0; a < x.rows(); ++a)
                for (Eigen::Index b = 0; b < x.rows(); ++b)
                    if (x(a, j) < x(b, j)) CHECK(normalized(a, j) < normalized(b, j));
    }
}

TEST_CASE("coefficient-of-variation weights") {
    SUBCASE("constant column carries no weight") {
        Eigen::MatrixXd cells(3, 2);
        cells << 0.5, 0.2, 0.5, 0.5, 0.5, 0.8;
        const WeightVector w = cv_weights(helpers::matrix(cells, Stage::Normalized));
        CHECK(w.values(0) == 0.0);
        CHECK(w.values(1) == 1.0);
    }
    SUBCASE("identical columns share the weight equally") {
        Eigen::MatrixXd cells(3, 3);
        cells.col(0) << 0.1, 0.5, 0.9;
        cells.col(1) = cells.col(0);
        cells.col(2) = cells.col(0);
        const WeightVector w = cv_weights(helpers::matrix(cells, Stage::Normalized));
        for (Eigen::Index j = 0; j < 3; ++j)
            CHECK(w.values(j) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("worked two-column example") {
        Eigen::MatrixXd cells(3, 2);
        cells.col(0) << 0.2, 0.4, 0.6;
        cells.col(1) << 0.1, 0.1, 0.4;
        const WeightVector w = cv_weights(helpers::matrix(cells, Stage::Normalized));
        CHECK(w.values(0) == doctest::Approx(0.366025).epsilon(1e-6));
        CHECK(w.values(1) == doctest::Approx(0.633975).epsilon(1e-6));

        // independent recomputation, plain arithmetic
        const double mean0 = (0.2 + 0.4 + 0.6) / 3.0;
        const double mean1 = (0.1 + 0.1 + 0.4) / 3.0;
        const double sd0 = std::sqrt(((0.2 - mean0) * (0.2 - mean0) +
                                      (0.4 - mean0) * (0.4 - mean0) +
                                      (0.6 - mean0) * (0.6 - mean0)) / 2.0);
        const double sd1 = std::sqrt(((0.1 - mean1) * (0.1 - mean1) +
                                      (0.1 - mean1) * (0.1 - mean1) +
                                      (0.4 - mean1) * (0.4 - mean1)) / 2.0);
        const double v0 = sd0 / mean0;
        const double v1 = sd1 / mean1;
        CHECK(w.values(0) == doctest::Approx(v0 / (v0 + v1)).epsilon(1e-12));
        CHECK(w.values(1) == doctest::Approx(v1 / (v0 + v1)).epsilon(1e-12));
    }
    SUBCASE("weights live on the simplex and permute with the columns") {
        std::mt19937 rng(17);
        const Eigen::MatrixXd x = helpers::random_matrix(rng, 5, 4, 0.05, 1.0);
        const WeightVector w = cv_weights(helpers::matrix(x, Stage::Normalized));
        CHECK(std::abs(w.values.sum() - 1.0) < 1e-9);
        CHECK((w.values.array() >= 0.0).all());

        Eigen::MatrixXd permuted(5, 4);
        const std::array<int, 4> perm{2, 0, 3, 1};
        for (int j = 0; j < 4; ++j) permuted.col(j) = x.col(perm[static_cast<std::size_t>(j)]);
        const WeightVector wp = cv_weights(helpers::matrix(permuted, Stage::Normalized));
        for (int j = 0; j < 4; ++j)
            CHECK(wp.values(j) ==
                  doctest::Approx(w.values(perm[static_cast<std::size_t>(j)])).epsilon(1e-14));
    }
    SUBCASE("error paths") {
        Eigen::MatrixXd zero_mean(3, 1);
        zero_mean << 0.0, 0.0, 0.0;
        CHECK_THROWS_AS(cv_weights(helpers::matrix(zero_mean, Stage::Normalized)), Error);

        Eigen::MatrixXd single(1, 2);
        single << 0.3, 0.4;
        CHECK_THROWS_AS(cv_weights(helpers::matrix(single, Stage::Normalized)), Error);

        Eigen::MatrixXd raw(3, 1);
        raw << 0.1, 0.2, 0.3;
        CHECK_THROWS_AS(cv_weights(helpers::matrix(raw, Stage::Raw)), Error);
    }
    SUBCASE("all-constant matrix falls back to equal weights with a warning") {
        Eigen::MatrixXd flat = Eigen::MatrixXd::Constant(3, 2, 0.5);
        WarningLog warnings;
        const WeightVector w = cv_weights(helpers::matrix(flat, Stage::Normalized), &warnings);
        CHECK(w.values(0) == 0.5);
        CHECK(w.values(1) == 0.5);
        CHECK(!warnings.empty());
    }
}

TEST_CASE("equal weights") {
    const WeightVector w4 = equal_weights(4);
    for (Eigen::Index j = 0; j < 4; ++j) CHECK(w4.values(j) == 0.25);
    CHECK(equal_weights(1).values(0) == 1.0);
    for (Eigen::Index n : {2, 7, 100, 10000})
        CHECK(std::abs(equal_weights(n).values.sum() - 1.0) < 1e-12);
    CHECK_THROWS_AS(equal_weights(0), Error);
}
