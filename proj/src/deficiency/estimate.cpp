#include <algorithm>
#include <cmath>

#include "nevlab/deficiency.hpp"
#include "nevlab/errors.hpp"
#include "nevlab/serialize.hpp"

namespace nevlab {

std::string_view to_string(DeficiencyKind k) {
  switch (k) {
    case DeficiencyKind::N: return "N";
    case DeficiencyKind::P: return "P";
    case DeficiencyKind::E: return "E";
    case DeficiencyKind::V: return "V";
  }
  return "N";
}

DeficiencyKind parse_deficiency_kind(std::string_view text) {
  if (text == "N" || text == "n") return DeficiencyKind::N;
  if (text == "P" || text == "p") return DeficiencyKind::P;
  if (text == "E" || text == "e") return DeficiencyKind::E;
  if (text == "V" || text == "v") return DeficiencyKind::V;
  throw Error(ErrorCode::InvalidArgument, "unknown deficiency kind '" + std::string(text) + "' (expected N, P, E or V)");
}

namespace {

std::string ratio_label(DeficiencyKind kind, Target a) {
  switch (kind) {
    case DeficiencyKind::N:
    case DeficiencyKind::V: return "m/T(a=" + a.to_string() + ")";
    case DeficiencyKind::P: return "L/T(a=" + a.to_string() + ")";
    case DeficiencyKind::E: return "L/A(a=" + a.to_string() + ")";
  }
  return "";
}

bool uses_max(DeficiencyKind k) { return k == DeficiencyKind::P || k == DeficiencyKind::E; }

}  // namespace

DeficiencyEstimate estimate_from_curves(DeficiencyKind kind, Target a, const GrowthCurve& numerator,
                                        const GrowthCurve& denominator, const EstimateOptions& options) {
  const std::size_t start = tail_start(denominator.size(), options.tail.fraction);
  if (denominator.size() - start < options.tail.min_points)
    throw Error(ErrorCode::TailTooShort, "tail window holds " + std::to_string(denominator.size() - start) +
                                             " points, need " + std::to_string(options.tail.min_points));
  for (std::size_t i = start; i < denominator.size(); ++i)
    if (!(denominator.values[i] > 0.0) || !std::isfinite(denominator.values[i]))
      throw Error(ErrorCode::DegenerateDenominator,
                  denominator.label + " is not positive at r = " + format_number(denominator.grid[i]));

  DeficiencyEstimate e;
  e.kind = kind;
  e.target = a;
  e.tail_fraction = options.tail.fraction;
  e.ratio = ratio_curve(numerator, denominator, ratio_label(kind, a));
  const TailStats s = tail_stats(e.ratio, options.tail);
  e.tail_liminf = s.liminf;
  e.tail_limsup = s.limsup;
  double value = kind == DeficiencyKind::V ? s.limsup : s.liminf;

  // Still climbing steeply at the right end: the limit may be infinite.
  const std::size_t n = e.ratio.size();
  bool rising = n >= 2;
  for (std::size_t i = std::max(start, n - std::min<std::size_t>(n, 5)); i + 1 < n; ++i)
    if (!(e.ratio.values[i + 1] > e.ratio.values[i])) rising = false;
  const bool steep = e.ratio.values[n - 1] > 1.5 * e.ratio.values[start];
  if (value > options.cap || std::isinf(value) || std::isnan(value)) {
    value = options.cap;
    e.flags.push_back("unbounded?");
  } else if (rising && steep) {
    e.flags.push_back("unbounded?");
  }
  e.estimate = value;

  Accuracy tail_flag = Accuracy::Ok;
  for (std::size_t i = start; i < n; ++i) tail_flag = worst(tail_flag, e.ratio.flags[i]);
  if (tail_flag != Accuracy::Ok) e.flags.push_back(std::string(to_string(tail_flag)));
  return e;
}

DeficiencyEstimate estimate(DeficiencyKind kind, const ComplexFunc& f, Target a, const RadiusGrid& grid,
                            const EstimateOptions& options) {
  if (!is_transcendental(f))
    throw Error(ErrorCode::InvalidArgument, "deviation estimates need a transcendental function, got " + f.to_string());
  const ExprSource src(f);
  const GrowthCurve num = uses_max(kind) ? log_max_modulus_curve(src, a, grid, options.functionals)
                                         : proximity_curve(src, a, grid, options.functionals);
  const GrowthCurve den = kind == DeficiencyKind::E ? area_characteristic(src, grid, options.functionals)
                                                    : characteristic(f, grid, options.functionals);
  return estimate_from_curves(kind, a, num, den, options);
}

DeficiencyEstimate estimate(DeficiencyKind kind, const FunctionSource& f, Target a, const RadiusGrid& grid,
                            const EstimateOptions& options) {
  const GrowthCurve num = uses_max(kind) ? log_max_modulus_curve(f, a, grid, options.functionals)
                                         : proximity_curve(f, a, grid, options.functionals);
  const GrowthCurve den = kind == DeficiencyKind::E ? area_characteristic(f, grid, options.functionals)
                                                    : characteristic(f, grid, options.functionals);
  return estimate_from_curves(kind, a, num, den, options);
}

nlohmann::ordered_json to_json(const DeficiencyEstimate& e) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(e.kind);
  j["a"] = e.target.to_string();
  j["estimate"] = json_number(e.estimate);
  j["tail_liminf"] = json_number(e.tail_liminf);
  j["tail_limsup"] = json_number(e.tail_limsup);
  j["tail_fraction"] = e.tail_fraction;
  j["flags"] = e.flags;
  return j;
}

}  // namespace nevlab
