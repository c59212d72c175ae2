#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nevlab/errors.hpp"
#include "nevlab/serialize.hpp"
#include "nevlab/sets.hpp"

namespace nevlab {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

RadiusGrid restrict_grid(const RadiusGrid& grid, double lo, double hi) {
  std::vector<double> r{lo};
  for (double x : grid)
    if (x > lo && x < hi) r.push_back(x);
  r.push_back(hi);
  return RadiusGrid::from_radii(std::move(r), grid.spacing());
}

}  // namespace

double borel_rhs_integral(const std::function<double(double)>& xi_log, double log_F_R) {
  if (!(log_F_R >= 1.0)) return 0.0;
  // dl / xi(e^l) with l = e^u keeps the range short for towers.
  auto integrand = [&](double u) {
    const double l = std::exp(u);
    return l / xi_log(l);
  };
  return GK::integrate(integrand, 0.0, std::log(log_F_R), 20, 1e-12);
}

BorelReport borel_exceptional(const BorelProblem& p, const RadiusGrid& grid, const PredicateSetOptions& options) {
  if (!(p.C > 1.0)) throw Error(ErrorCode::InvalidArgument, "the Borel constant C must exceed 1");
  if (!(p.r0 > 0.0) || !(p.R > p.r0)) throw Error(ErrorCode::InvalidArgument, "need 0 < r0 < R");
  if (!p.log_F || !p.phi || !p.xi_log) throw Error(ErrorCode::InvalidArgument, "F, phi and xi are all required");

  const RadiusGrid g = restrict_grid(grid, p.r0, p.R);
  for (double r : g) {
    if (!(p.log_F(r) >= 1.0 - 1e-12)) throw Error(ErrorCode::InvalidArgument, "F must be at least e on [r0, R]");
    if (!(p.phi(r) > 0.0)) throw Error(ErrorCode::InvalidArgument, "phi must be positive on [r0, R]");
  }
  const double log_c = std::log(p.C);
  auto pred = [&](double r) {
    const double lf = p.log_F(r);
    const double h = p.phi(r) / p.xi_log(lf);
    // A step below the resolution of r would compare log F(r) with itself
    // plus log C after rounding; use the one-sided slope instead.
    if (h < 1e-8 * r) {
      const double s = 1e-6 * r;
      return h * (p.log_F(r + s) - lf) / s >= log_c;
    }
    return p.log_F(r + h) - lf >= log_c;
  };

  BorelReport rep;
  rep.exceptional = predicate_set(pred, g, options);
  for (const auto& [a, b] : rep.exceptional.intervals())
    rep.lhs += GK::integrate([&](double r) { return 1.0 / p.phi(r); }, a, b, 15, 1e-12);
  rep.rhs = 1.0 / p.xi_log(1.0) + borel_rhs_integral(p.xi_log, p.log_F(p.R)) / log_c;
  rep.slack = rep.rhs - rep.lhs;
  rep.pass = rep.lhs <= rep.rhs;
  return rep;
}

nlohmann::ordered_json to_json(const BorelReport& r) {
  nlohmann::ordered_json j;
  j["pass"] = r.pass;
  j["lhs"] = json_number(r.lhs);
  j["rhs"] = json_number(r.rhs);
  j["slack"] = json_number(r.slack);
  j["exceptional_set"] = to_json(r.exceptional);
  j["exceptional_linear_measure"] = json_number(r.exceptional.linear_measure());
  return j;
}

}  // namespace nevlab
