#pragma once

// Published reference series for the three pilot regions, 2015-2020, used
// as fixtures: the printed grids plus their printed summary rows. Summary
// rows were computed by the source from unrounded data, so recomputation
// from the 3-decimal grids can deviate by up to one half-unit of the last
// printed digit per input (see the acceptance notes).

#include <array>
#include <string>
#include <vector>

#include "cfi/pipeline.hpp"

namespace fixtures {

struct ReferenceGrid {
    std::string name;
    std::array<const char*, 3> entities;
    std::array<int, 6> years;
    std::array<std::array<double, 6>, 3> values;       // entity x year
    std::array<double, 3> regional_average;            // printed
    std::array<double, 6> period_average;              // printed
    std::array<double, 6> period_std;                  // printed, sample (m-1)
    double grand_mean;                                 // printed
};

inline const ReferenceGrid kCtiReference{
    "CTI",
    {"BJ", "GD", "SH"},
    {2015, 2016, 2017, 2018, 2019, 2020},
    {{{0.228, 0.168, 0.177, 0.220, 0.237, 0.074},
      {0.183, 0.244, 0.247, 0.224, 0.269, 0.327},
      {0.377, 0.202, 0.220, 0.208, 0.225, 0.181}}},
    {0.184, 0.249, 0.235},
    {0.263, 0.205, 0.215, 0.217, 0.244, 0.194},
    {0.101, 0.038, 0.035, 0.008, 0.023, 0.127},
    0.223};

inline const ReferenceGrid kCiiReference{
    "CII",
    {"BJ", "GD", "SH"},
    {2015, 2016, 2017, 2018, 2019, 2020},
    {{{0.248, 0.182, 0.269, 0.293, 0.144, 0.212},
      {0.295, 0.349, 0.283, 0.233, 0.287, 0.269},
      {0.238, 0.219, 0.193, 0.188, 0.188, 0.120}}},
    {0.225, 0.286, 0.191},
    {0.261, 0.250, 0.249, 0.238, 0.206, 0.200},
    {0.031, 0.088, 0.048, 0.052, 0.073, 0.075},
    0.234};

inline const ReferenceGrid kCfiReference{
    "CFI",
    {"BJ", "GD", "SH"},
    {2015, 2016, 2017, 2018, 2019, 2020},
    {{{0.184, 0.133, 0.167, 0.251, 0.124, 0.090},
      {0.156, 0.243, 0.191, 0.201, 0.234, 0.230},
      {0.294, 0.159, 0.145, 0.163, 0.156, 0.123}}},
    {0.158, 0.209, 0.173},
    {0.211, 0.178, 0.168, 0.205, 0.172, 0.148},
    {0.073, 0.058, 0.023, 0.044, 0.056, 0.073},
    0.180};

inline cfi::IndexSeries to_series(const ReferenceGrid& grid) {
    cfi::IndexSeries series;
    series.name = grid.name;
    for (const char* e : grid.entities) series.entities.emplace_back(e);
    series.years.assign(grid.years.begin(), grid.years.end());
    series.values.resize(3, 6);
    for (int i = 0; i < 3; ++i)
        for (int t = 0; t < 6; ++t)
            series.values(i, t) = grid.values[static_cast<std::size_t>(i)]
                                             [static_cast<std::size_t>(t)];
    series.method = cfi::AggregationMethod::Wdi2;
    return series;
}

inline const std::vector<const ReferenceGrid*>& all_reference_grids() {
    static const std::vector<const ReferenceGrid*> grids = {
        &kCtiReference, &kCiiReference, &kCfiReference};
    return grids;
}

// Published mean information losses for the five candidate aggregations
// (SAW, WP, WDI2, WDIInf, TOPSIS); the minimum belongs to WDI2.
inline constexpr std::array<double, 5> kReferenceMeanLosses = {0.0352, 0.0287, 0.0254,
                                                               0.0278, 0.0266};

}  // namespace fixtures
