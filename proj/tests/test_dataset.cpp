#include <doctest.h>

#include <algorithm>
#include <functional>
#include <limits>
#include <random>

#include "cfi/dataset.hpp"
#include "helpers.hpp"

using namespace cfi;

namespace {

ErrorCode code_of(const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("validate_dataset assembles a complete 3x8x6 panel") {
    std::mt19937 rng(1);
    const HierarchySpec hierarchy = helpers::simple_hierarchy(8);
    const std::vector<std::string> entities{"BJ", "GD", "SH"};
    const std::vector<int> years{2015, 2016, 2017, 2018, 2019, 2020};
    const auto records = helpers::records_for(entities, years, 8, rng);

    const PanelDataset ds = validate_dataset(records, hierarchy);
    CHECK(ds.entity_count() == 3);
    CHECK(ds.indicator_count() == 8);
    CHECK(ds.year_count() == 6);
    CHECK(ds.entities == entities);  // sorted order == insertion order here
    CHECK(ds.years == years);
}

TEST_CASE("validate_dataset rejects gaps, duplicates, unknowns, non-finite values") {
    std::mt19937 rng(2);
    const HierarchySpec hierarchy = helpers::simple_hierarchy(3);
    auto records = helpers::records_for({"BJ", "SH"}, {2015, 2016}, 3, rng);

    SUBCASE("missing cell names its coordinates") {
        const auto removed = std::find_if(records.begin(), records.end(), [](const RawRecord& r) {
            return r.entity == "BJ" && r.year == 2016 && r.indicator == "x1";
        });
        records.erase(removed);
        try {
            validate_dataset(records, hierarchy);
            FAIL("expected MissingCell");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MissingCell);
            CHECK(std::string(e.what()).find("BJ") != std::string::npos);
            CHECK(std::string(e.what()).find("2016") != std::string::npos);
            CHECK(std::string(e.what()).find("x1") != std::string::npos);
        }
    }
    SUBCASE("duplicate cell is an error even with an equal value") {
        records.push_back(records.front());
        CHECK(code_of([&] { validate_dataset(records, hierarchy); }) == ErrorCode::DuplicateCell);
    }
    SUBCASE("unknown indicator") {
        records.push_back({"BJ", 2015, "nope", 1.0});
        CHECK(code_of([&] { validate_dataset(records, hierarchy); }) ==
              ErrorCode::UnknownIndicator);
    }
    SUBCASE("non-finite value") {
        records.front().value = std::numeric_limits<double>::quiet_NaN();
        CHECK(code_of([&] { validate_dataset(records, hierarchy); }) ==
              ErrorCode::NonFiniteValue);
    }
}

TEST_CASE("validate_dataset is insensitive to record order") {
    std::mt19937 rng(3);
    const HierarchySpec hierarchy = helpers::simple_hierarchy(4);
    auto records = helpers::records_for({"SH", "BJ", "GD"}, {2016, 2015}, 4, rng);

    const PanelDataset a = validate_dataset(records, hierarchy);
    std::shuffle(records.begin(), records.end(), rng);
    const PanelDataset b = validate_dataset(records, hierarchy);

    CHECK(a.entities == b.entities);
    CHECK(a.years == b.years);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t t = 0; t < a.values.size(); ++t) CHECK(a.values[t] == b.values[t]);
    CHECK(a.entities == std::vector<std::string>{"BJ", "GD", "SH"});  // sorted
    CHECK(a.years == std::vector<int>{2015, 2016});                   // ascending
}

TEST_CASE("apply_prep inverts reciprocal indicators and leaves the rest alone") {
    const HierarchySpec hierarchy = [] {
        HierarchySpec h;
        h.top = "TOP";
        h.groups.push_back({"G", "G", {"days", "level"}});
        h.indicators.push_back({"days", "days", Polarity::Cost, "G", Prep::Reciprocal});
        h.indicators.push_back({"level", "level", Polarity::Benefit, "G", Prep::None});
        return h;
    }();
    std::vector<RawRecord> records;
    for (const auto* e : {"A", "B"})
        for (int y : {2015, 2016}) {
            records.push_back({e, y, "days", 250.0});
            records.push_back({e, y, "level", 7.5});
        }
    const PanelDataset ds = validate_dataset(records, hierarchy);
    const PanelDataset prepped = apply_prep(ds);

    CHECK(prepped.value(0, 0, 0) == doctest::Approx(0.004).epsilon(1e-12));
    CHECK(prepped.value(0, 1, 0) == 7.5);
    CHECK(prepped.indicators[0].polarity == Polarity::Cost);  // metadata unchanged

    SUBCASE("prep twice returns the original values (involution)") {
        const PanelDataset twice = apply_prep(prepped);
        for (Eigen::Index t = 0; t < ds.year_count(); ++t)
            for (Eigen::Index i = 0; i < ds.entity_count(); ++i)
                for (Eigen::Index j = 0; j < ds.indicator_count(); ++j)
                    CHECK(twice.value(i, j, t) ==
                          doctest::Approx(ds.value(i, j, t)).epsilon(1e-12));
    }
    SUBCASE("zero value under reciprocal prep is an error") {
        PanelDataset broken = ds;
        broken.values[0](0, 0) = 0.0;
        CHECK_THROWS_AS(apply_prep(broken), Error);
        try {
            apply_prep(broken);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NonPositiveReciprocal);
        }
    }
}

TEST_CASE("slice_year extracts the per-year cross-section") {
    std::mt19937 rng(4);
    const HierarchySpec hierarchy = helpers::simple_hierarchy(8);
    const PanelDataset ds = helpers::random_dataset(rng, 3, 8, 6, hierarchy);

    const DecisionMatrix mat = slice_year(ds, 2015);
    CHECK(mat.cells.rows() == 3);
    CHECK(mat.cells.cols() == 8);
    CHECK(mat.stage == Stage::Raw);

    SUBCASE("unknown year") {
        CHECK(code_of([&] { slice_year(ds, 2014); }) == ErrorCode::UnknownYear);
    }
    SUBCASE("every cell matches the stored panel exactly") {
        for (Eigen::Index t = 0; t < ds.year_count(); ++t) {
            const DecisionMatrix slice = slice_year(ds, ds.years[static_cast<std::size_t>(t)]);
            for (Eigen::Index i = 0; i < 3; ++i)
                for (Eigen::Index j = 0; j < 8; ++j)
                    CHECK(slice.cells(i, j) == ds.value(i, j, t));
        }
    }
    SUBCASE("restacking all slices reproduces the panel") {
        std::vector<Eigen::MatrixXd> restacked;
        for (int year : ds.years) restacked.push_back(slice_year(ds, year).cells);
        for (std::size_t t = 0; t < restacked.size(); ++t) CHECK(restacked[t] == ds.values[t]);
    }
}

TEST_CASE("hierarchy validation catches structural mistakes") {
    SUBCASE("duplicate indicator id") {
        HierarchySpec h = helpers::simple_hierarchy(3);
        h.indicators.push_back(h.indicators.front());
        CHECK_THROWS_AS(h.validate(), Error);
    }
    SUBCASE("empty group") {
        HierarchySpec h = helpers::simple_hierarchy(3);
        h.groups.push_back({"EMPTY", "EMPTY", {}});
        CHECK_THROWS_AS(h.validate(), Error);
    }
    SUBCASE("indicator listed in two groups") {
        HierarchySpec h = helpers::simple_hierarchy(4);
        h.groups[1].members.push_back(h.groups[0].members.front());
        CHECK_THROWS_AS(h.validate(), Error);
    }
    SUBCASE("indicator without a group") {
        HierarchySpec h = helpers::simple_hierarchy(3);
        IndicatorSpec orphan;
        orphan.id = "orphan";
        h.indicators.push_back(orphan);
        CHECK_THROWS_AS(h.validate(), Error);
    }
    SUBCASE("group field disagrees with the member list") {
        HierarchySpec h = helpers::simple_hierarchy(4);
        h.indicators.front().group = "G2";
        CHECK_THROWS_AS(h.validate(), Error);
    }
}
