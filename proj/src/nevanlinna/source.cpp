#include "nevlab/source.hpp"

#include <cmath>

namespace nevlab {

double FunctionSource::log_abs(cplx z) const {
  const Parts p = parts(z);
  if (p.h.is_zero()) return p.g.is_zero() ? std::nan("") : kInf;
  return p.g.logmod - p.h.logmod;
}

double FunctionSource::log_abs_minus(cplx z, cplx a) const {
  const Parts p = parts(z);
  if (p.h.is_zero()) return p.g.is_zero() ? std::nan("") : kInf;
  if (a == cplx{0.0, 0.0}) return p.g.logmod - p.h.logmod;
  const LogComplex diff = p.g - LogComplex::from(a) * p.h;
  return diff.logmod - p.h.logmod;
}

ExprSource::ExprSource(ComplexFunc f)
    : f_(std::move(f)),
      split_(split(f_)),
      g_log_deriv_(log_derivative(split_.numerator)),
      h_log_deriv_(log_derivative(split_.denominator)),
      h_constant_(split_.denominator.is_constant()) {}

FunctionSource::Parts ExprSource::parts(cplx z) const {
  const LogComplex h = h_constant_ ? LogComplex::from(split_.denominator.constant_value())
                                   : eval_log(split_.denominator, z);
  return {eval_log(split_.numerator, z), h};
}

static double flux_term(const LogComplex& z_log_deriv, double log_weight) {
  if (log_weight == -kInf || z_log_deriv.is_zero()) return 0.0;
  return std::exp(z_log_deriv.logmod + log_weight) * std::cos(z_log_deriv.arg);
}

double ExprSource::area_flux_density(cplx z) const {
  const Parts p = parts(z);
  if (p.g.is_zero() && p.h.is_zero()) return std::nan("");
  const double x = 2.0 * (p.g.logmod - p.h.logmod);
  const LogComplex lz = LogComplex::from(z);
  double total = 0.0;
  if (!p.g.is_zero()) total += flux_term(lz * eval_log(g_log_deriv_, z), -log_add_exp(0.0, -x));
  if (!p.h.is_zero() && !h_constant_) total += flux_term(lz * eval_log(h_log_deriv_, z), -log_add_exp(0.0, x));
  return total;
}

std::unique_ptr<FunctionSource> ExprSource::shifted(cplx a) const {
  return std::make_unique<ExprSource>(f_ - ComplexFunc::constant(a));
}

int ExprSource::cancelled_inside(double r) const { return split_.cancelled_within(r); }

}  // namespace nevlab
