#include "nevlab/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace nevlab {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::ordered_json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

std::string to_csv(std::span<const GrowthCurve> curves) {
  std::string out = "r,value,label,accuracy_flag\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      out += format_number(c.grid[i]);
      out += ',';
      out += format_number(c.values[i]);
      out += ',';
      out += c.label;
      out += ',';
      out += to_string(c.flags[i]);
      out += '\n';
    }
  }
  return out;
}

nlohmann::ordered_json grid_json(const RadiusGrid& grid) {
  nlohmann::ordered_json j;
  j["spacing"] = grid.spacing() == Spacing::Geometric ? "geometric" : "linear";
  j["r_min"] = grid.front();
  j["r_max"] = grid.back();
  j["points"] = grid.size();
  return j;
}

nlohmann::ordered_json to_json(const GrowthCurve& curve) {
  nlohmann::ordered_json j;
  j["label"] = curve.label;
  j["grid"] = grid_json(curve.grid);
  auto& rows = j["samples"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < curve.size(); ++i) {
    nlohmann::ordered_json row;
    row["r"] = curve.grid[i];
    row["value"] = json_number(curve.values[i]);
    row["accuracy_flag"] = to_string(curve.flags[i]);
    if (curve.radii_used[i] != curve.grid[i]) row["radius_used"] = curve.radii_used[i];
    rows.push_back(std::move(row));
  }
  return j;
}

}  // namespace nevlab
