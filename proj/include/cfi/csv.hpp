#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cfi/dataset.hpp"
#include "cfi/panel_reg.hpp"

namespace cfi {

/// Long-format indicator data: header `entity,year,indicator,value`,
/// 4-digit years, decimal values, UTF-8, no quoting. Parse failures throw
/// Error(BadRecord) with the line number.
std::vector<RawRecord> read_panel_csv(std::istream& in);
std::vector<RawRecord> read_panel_csv_file(const std::string& path);

/// Wide-format regression data: header `entity,year,<response>,<x1>,...`
/// e.g. `entity,year,cfi,psi,patent,size,location,energy`. The third column
/// is the response; the rest are regressors in header order.
PanelSample read_regressor_csv(std::istream& in);
PanelSample read_regressor_csv_file(const std::string& path);

}  // namespace cfi
