#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "cfi/errors.hpp"

namespace cfi {

enum class GridRegion {
    NorthChina,
    NortheastChina,
    EastChina,
    CentralChina,
    NorthwestChina,
    ChinaSouthern,
};

std::string_view grid_region_name(GridRegion region);
GridRegion grid_region_from_string(std::string_view name);

/// CO2 emission factors: fuels in kgCO2 per kg (coal, oil) or m^3 (gas),
/// electricity in kgCO2 per kWh by power grid.
struct EmissionFactors {
    double coal = 1.978;
    double oil = 3.065;
    double natural_gas = 1.809;
    std::array<double, 6> grid = {0.8843, 0.7769, 0.7035, 0.5257, 0.6671, 0.5271};

    double grid_factor(GridRegion region) const {
        return grid[static_cast<std::size_t>(region)];
    }

    // Override file with columns key,unit,factor; keys are coal, oil,
    // natural_gas, grid.north_china, grid.northeast_china, grid.east_china,
    // grid.central_china, grid.northwest_china, grid.china_southern.
    // Omitted keys keep their defaults. The unit column is documentation
    // only and is not interpreted.
    static EmissionFactors from_csv(std::istream& in);
};

struct ConsumptionBundle {
    double coal_kg = 0.0;
    double oil_kg = 0.0;
    double gas_m3 = 0.0;
    double electricity_kwh = 0.0;
};

/// Linear combination of the bundle with the factor table, using the
/// region's grid factor for electricity. Returns kgCO2.
double estimate_emissions(const ConsumptionBundle& bundle, GridRegion region,
                          const EmissionFactors& factors = EmissionFactors{});

/// Default pilot -> grid mapping (Beijing -> North China, Shanghai -> East
/// China, Guangdong -> China Southern); config may override it.
const std::map<std::string, GridRegion>& default_pilot_grid();

}  // namespace cfi
