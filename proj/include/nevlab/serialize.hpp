#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "nevlab/grid.hpp"

namespace nevlab {

/// Shortest round-trip decimal form of x ("inf", "-inf", "nan" for specials).
std::string format_number(double x);

/// Rows "r,value,label,accuracy_flag" for every curve, with a header line.
std::string to_csv(std::span<const GrowthCurve> curves);

nlohmann::ordered_json grid_json(const RadiusGrid& grid);
nlohmann::ordered_json to_json(const GrowthCurve& curve);

/// JSON numbers cannot be infinite; those become the strings "inf" / "-inf".
nlohmann::ordered_json json_number(double x);

}  // namespace nevlab
