#include "cfi/emissions.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <vector>

namespace cfi {
namespace {

std::string normalize_key(std::string_view name) {
    std::string key;
    for (char c : name) {
        if (c == ' ' || c == '-') c = '_';
        key.push_back(static_cast<char>(std::tolower(c)));
    }
    return key;
}

}  // namespace

std::string_view grid_region_name(GridRegion region) {
    switch (region) {
        case GridRegion::NorthChina: return "North China";
        case GridRegion::NortheastChina: return "Northeast China";
        case GridRegion::EastChina: return "East China";
        case GridRegion::CentralChina: return "Central China";
        case GridRegion::NorthwestChina: return "Northwest China";
        case GridRegion::ChinaSouthern: return "China Southern";
    }
    return "?";
}

GridRegion grid_region_from_string(std::string_view name) {
    const std::string key = normalize_key(name);
    if (key == "north_china") return GridRegion::NorthChina;
    if (key == "northeast_china" || key == "northeast") return GridRegion::NortheastChina;
    if (key == "east_china") return GridRegion::EastChina;
    if (key == "central_china") return GridRegion::CentralChina;
    if (key == "northwest_china" || key == "northwest") return GridRegion::NorthwestChina;
    if (key == "china_southern" || key == "china_southern_power")
        return GridRegion::ChinaSouthern;
    throw Error(ErrorCode::UnknownGridRegion,
                "unknown grid region '" + std::string(name) + "'");
}

EmissionFactors EmissionFactors::from_csv(std::istream& in) {
    EmissionFactors factors;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> fields;
        std::stringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (line_no == 1 && !fields.empty() && normalize_key(fields[0]) == "key") continue;
        if (fields.size() != 3)
            throw Error(ErrorCode::BadRecord,
                        "factor file line " + std::to_string(line_no) +
                            ": expected key,unit,factor");
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(fields[2], &used);
            if (used != fields[2].size()) throw std::invalid_argument(fields[2]);
        } catch (const std::exception&) {
            throw Error(ErrorCode::BadRecord, "factor file line " + std::to_string(line_no) +
                                                  ": bad factor '" + fields[2] + "'");
        }
        if (value <= 0.0)
            throw Error(ErrorCode::BadRecord, "factor file line " + std::to_string(line_no) +
                                                  ": factors must be strictly positive");
        const std::string key = normalize_key(fields[0]);
        if (key == "coal") {
            factors.coal = value;
        } else if (key == "oil") {
            factors.oil = value;
        } else if (key == "natural_gas" || key == "gas") {
            factors.natural_gas = value;
        } else if (key.rfind("grid.", 0) == 0) {
            const GridRegion region = grid_region_from_string(key.substr(5));
            factors.grid[static_cast<std::size_t>(region)] = value;
        } else {
            throw Error(ErrorCode::BadRecord, "factor file line " + std::to_string(line_no) +
                                                  ": unknown key '" + fields[0] + "'");
        }
    }
    return factors;
}

double estimate_emissions(const ConsumptionBundle& bundle, GridRegion region,
                          const EmissionFactors& factors) {
    const double quantities[] = {bundle.coal_kg, bundle.oil_kg, bundle.gas_m3,
                                 bundle.electricity_kwh};
    for (double q : quantities)
        if (q < 0.0)
            throw Error(ErrorCode::NegativeQuantity, "consumption quantities must be >= 0");

    return bundle.coal_kg * factors.coal + bundle.oil_kg * factors.oil +
           bundle.gas_m3 * factors.natural_gas +
           bundle.electricity_kwh * factors.grid_factor(region);
}

const std::map<std::string, GridRegion>& default_pilot_grid() {
    static const std::map<std::string, GridRegion> mapping = {
        {"BJ", GridRegion::NorthChina},    {"Beijing", GridRegion::NorthChina},
        {"SH", GridRegion::EastChina},     {"Shanghai", GridRegion::EastChina},
        {"GD", GridRegion::ChinaSouthern}, {"Guangdong", GridRegion::ChinaSouthern},
    };
    return mapping;
}

}  // namespace cfi
