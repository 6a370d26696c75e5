#pragma once

#include <string>
#include <vector>

#include "cfi/types.hpp"

namespace cfi {

/// One parsed long-format record: (entity, year, indicator, value).
struct RawRecord {
    std::string entity;
    int year = 0;
    std::string indicator;
    double value = 0.0;
};

/// Assembles a dense, fully populated panel from long-format records.
/// Entity and year orders are sorted; indicator order comes from the
/// hierarchy, so the result is independent of record order.
/// Throws Error with code MissingCell / DuplicateCell / NonFiniteValue /
/// UnknownIndicator, naming the offending coordinates.
PanelDataset validate_dataset(const std::vector<RawRecord>& records,
                              const HierarchySpec& hierarchy);

/// Replaces every Reciprocal-flagged indicator by 1/x cell-wise; all other
/// cells and all metadata are unchanged. Throws NonPositiveReciprocal when
/// a flagged cell is <= 0.
PanelDataset apply_prep(const PanelDataset& ds);

/// Extracts one year's m x n Raw-stage cross-section. Throws UnknownYear.
DecisionMatrix slice_year(const PanelDataset& ds, int year);

}  // namespace cfi
