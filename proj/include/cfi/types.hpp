#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "cfi/errors.hpp"

namespace cfi {

/// Direction of an evaluation factor: Benefit = larger is better,
/// Cost = smaller is better (reversed during min-max normalization).
enum class Polarity { Benefit, Cost };

/// Ingestion-time transform applied to raw values. Reciprocal and Cost are
/// independent switches: an indicator may be stored as a reciprocal and
/// still be marked Cost.
enum class Prep { None, Reciprocal };

struct IndicatorSpec {
    std::string id;     // short unique key, also the CSV column key
    std::string label;  // display string
    Polarity polarity = Polarity::Benefit;
    std::string group;  // parent sub-index id
    Prep prep = Prep::None;
};

struct GroupSpec {
    std::string id;
    std::string label;
    std::vector<std::string> members;  // indicator ids, canonical column order
};

/// Two-level evaluation hierarchy: indicators -> groups -> top index.
struct HierarchySpec {
    std::string top;  // label of the final index, e.g. "CFI"
    std::vector<GroupSpec> groups;
    std::vector<IndicatorSpec> indicators;

    // Throws Error(InvalidConfig) on duplicate ids, empty groups, or
    // indicators whose group membership is missing or inconsistent.
    void validate() const;

    // Canonical indicator order: concatenation of the groups' member lists.
    std::vector<std::string> indicator_order() const;

    const IndicatorSpec& indicator(const std::string& id) const;
    const GroupSpec& group(const std::string& id) const;
};

enum class Stage { Raw, Normalized, Weighted };

/// One year's m x n cross-section at some pipeline stage.
/// Invariant: stage == Normalized implies all cells in [0, 1].
struct DecisionMatrix {
    std::vector<std::string> entities;    // row labels (m)
    std::vector<std::string> indicators;  // column labels (n)
    Stage stage = Stage::Raw;
    Eigen::MatrixXd cells;                // m x n, finite
};

/// Dense panel of raw (or prepped) indicator values over
/// entities x indicators x years. Immutable after construction.
struct PanelDataset {
    std::vector<std::string> entities;      // m, sorted
    std::vector<int> years;                 // T, ascending
    std::vector<IndicatorSpec> indicators;  // n, hierarchy order
    std::vector<Eigen::MatrixXd> values;    // one m x n matrix per year

    Eigen::Index entity_count() const { return static_cast<Eigen::Index>(entities.size()); }
    Eigen::Index indicator_count() const { return static_cast<Eigen::Index>(indicators.size()); }
    Eigen::Index year_count() const { return static_cast<Eigen::Index>(years.size()); }

    double value(Eigen::Index entity, Eigen::Index indicator, Eigen::Index year) const {
        return values[static_cast<std::size_t>(year)](entity, indicator);
    }
};

}  // namespace cfi
