#include <algorithm>
#include <cmath>

#include "nevlab/deficiency.hpp"
#include "nevlab/errors.hpp"
#include "nevlab/serialize.hpp"

namespace nevlab {

nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.name;
  j["applicable"] = r.applicable;
  j["pass"] = r.pass;
  j["value"] = json_number(r.value);
  j["bound"] = json_number(r.bound);
  j["margin"] = json_number(r.margin);
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

CheckReport sum_check(const std::vector<DeficiencyEstimate>& estimates, const SumCheckOptions& options) {
  CheckReport rep;
  rep.name = "sum";
  if (estimates.empty()) {
    rep.bound = kInf;
    rep.margin = kInf;
    rep.note = "no targets";
    return rep;
  }
  const DeficiencyKind kind = estimates.front().kind;
  for (const auto& e : estimates)
    if (e.kind != kind) throw Error(ErrorCode::MixedKinds, "sum check over estimates of different kinds");

  int deviated = 0;
  auto& per_target = rep.details["targets"] = nlohmann::ordered_json::array();
  for (const auto& e : estimates) {
    rep.value += e.estimate;
    if (e.estimate > options.tolerance) ++deviated;
    per_target.push_back({{"a", e.target.to_string()}, {"estimate", json_number(e.estimate)}});
  }
  rep.details["kind"] = to_string(kind);
  rep.details["tolerance"] = options.tolerance;

  switch (kind) {
    case DeficiencyKind::N: rep.bound = 2.0; break;
    case DeficiencyKind::E: rep.bound = kTwoPi; break;
    default:
      rep.bound = kInf;
      rep.margin = kInf;
      rep.note = "no sum bound for this kind; reported only";
      return rep;
  }
  rep.margin = rep.bound + options.tolerance - rep.value;
  rep.pass = rep.margin >= 0.0;
  if (kind == DeficiencyKind::E && !rep.pass && deviated <= 1) {
    rep.pass = true;
    rep.note = "single deviated target";
  }
  return rep;
}

double order_estimate(const GrowthCurve& characteristic, const TailOptions& options) {
  return std::min(1e6, tail_log_slope(characteristic, options, false));
}

double log_order_estimate(const GrowthCurve& characteristic, const TailOptions& options) {
  return std::min(1e6, tail_log_slope(characteristic, options, true));
}

namespace {

CheckReport not_applicable(std::string name, std::string note) {
  CheckReport rep;
  rep.name = std::move(name);
  rep.applicable = false;
  rep.note = std::move(note);
  return rep;
}

}  // namespace

CheckReport bergweiler_bock_check(const ComplexFunc& f, Target a, const RadiusGrid& grid,
                                  const BoundCheckOptions& options) {
  const std::string name = "bergweiler_bock";
  if (!is_transcendental(f)) return not_applicable(name, "order 0: not transcendental");
  const GrowthCurve t = characteristic(f, grid, options.estimate.functionals);
  const double rho = order_estimate(t, options.estimate.tail);
  if (rho < 0.5) {
    CheckReport rep = not_applicable(name, "measured order below 1/2");
    rep.details["order"] = rho;
    return rep;
  }
  const DeficiencyEstimate e = estimate(DeficiencyKind::E, f, a, grid, options.estimate);
  CheckReport rep;
  rep.name = name;
  rep.value = e.estimate;
  rep.bound = kPi;
  rep.margin = kPi + options.tolerance - e.estimate;
  rep.pass = rep.margin >= 0.0;
  rep.details["a"] = a.to_string();
  rep.details["order"] = json_number(rho);
  rep.details["estimate"] = to_json(e);
  return rep;
}

CheckReport marchenko_bound_check(const ComplexFunc& f, Target a, const RadiusGrid& grid,
                                  const BoundCheckOptions& options) {
  const std::string name = "marchenko_bound";
  if (!is_transcendental(f)) return not_applicable(name, "constant or rational function excluded");
  const GrowthCurve t = characteristic(f, grid, options.estimate.functionals);
  const double rho = order_estimate(t, options.estimate.tail);
  if (std::abs(rho - 1.0) > 0.15) {
    CheckReport rep = not_applicable(name, "T(r) does not grow linearly");
    rep.details["order"] = rho;
    return rep;
  }
  const DeficiencyEstimate v = estimate(DeficiencyKind::V, f, a, grid, options.estimate);
  const DeficiencyEstimate e = estimate(DeficiencyKind::E, f, a, grid, options.estimate);
  const double dv = std::clamp(v.estimate, 0.0, 1.0);
  CheckReport rep;
  rep.name = name;
  rep.value = e.estimate;
  rep.bound = kPi * std::sqrt(dv * (2.0 - dv));
  rep.margin = rep.bound + options.tolerance - e.estimate;
  rep.pass = rep.margin >= 0.0;
  rep.details["a"] = a.to_string();
  rep.details["order"] = rho;
  rep.details["delta_V"] = to_json(v);
  rep.details["delta_E"] = to_json(e);
  return rep;
}

}  // namespace nevlab
