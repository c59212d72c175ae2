#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "nevlab/expr.hpp"
#include "nevlab/grid.hpp"

namespace nevlab {

/// Anything the circle functionals can sample: an expression or a numerically
/// integrated ODE solution. Values come as f = g / h in log form.
class FunctionSource {
 public:
  struct Parts {
    LogComplex g, h;
  };

  virtual ~FunctionSource() = default;

  virtual Parts parts(cplx z) const = 0;
  /// Re(z (conj(g) g' + conj(h) h')) / (|g|^2 + |h|^2), the boundary density
  /// whose circle mean minus the cancelled points inside is A(r). Evaluated as
  /// Re(z g'/g) w + Re(z h'/h) (1 - w) with w = |g|^2 / (|g|^2 + |h|^2).
  virtual double area_flux_density(cplx z) const = 0;
  virtual int cancelled_inside(double /*r*/) const { return 0; }
  /// Nonzero when only the angles 2pi j / N (N dividing this value) may be sampled.
  virtual int uniform_points() const { return 0; }
  /// Relative accuracy attainable from those fixed samples; circle means on
  /// such sources are declared converged at this level.
  virtual double sampling_tolerance() const { return 0.0; }
  virtual std::string describe() const = 0;
  /// A source for f - a that avoids cancellation, or null when none is available.
  virtual std::unique_ptr<FunctionSource> shifted(cplx /*a*/) const { return nullptr; }

  /// log|f(z)|; +inf at poles, -inf at zeros.
  double log_abs(cplx z) const;
  /// log|f(z) - a|; +inf at poles.
  double log_abs_minus(cplx z, cplx a) const;
};

class ExprSource final : public FunctionSource {
 public:
  explicit ExprSource(ComplexFunc f);

  Parts parts(cplx z) const override;
  double area_flux_density(cplx z) const override;
  int cancelled_inside(double r) const override;
  std::string describe() const override { return f_.to_string(); }
  std::unique_ptr<FunctionSource> shifted(cplx a) const override;

  const ComplexFunc& function() const { return f_; }
  const MeromorphicSplit& split_form() const { return split_; }

 private:
  ComplexFunc f_;
  MeromorphicSplit split_;
  ComplexFunc g_log_deriv_, h_log_deriv_;
  bool h_constant_;
};

}  // namespace nevlab
