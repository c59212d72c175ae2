#pragma once

#include <span>
#include <vector>

#include "nevlab/circle.hpp"
#include "nevlab/expr.hpp"
#include "nevlab/grid.hpp"
#include "nevlab/source.hpp"

namespace nevlab {

struct FunctionalOptions {
  QuadratureOptions quadrature;
  /// log(1/|f - a|) is clamped here; the sample is flagged Capped.
  double log_cap = 1e6;
  /// Coarse samples for circle maxima before the Brent polish.
  int max_samples = 1024;
  /// Relative radius shift applied when an a-point or pole sits on the circle.
  double perturbation = 1e-6;
};

struct Measured {
  double value = 0.0;
  Accuracy flag = Accuracy::Ok;
  double radius_used = 0.0;
};

// Single-radius functionals. Each perturbs r by `perturbation` (up to three
// times) when the circle runs through a singularity of the integrand.

/// m(r, a, f): circle mean of log+|f| (a = inf) or log+ 1/|f - a|.
Measured proximity(const FunctionSource& f, Target a, double r, const FunctionalOptions& o = {});
/// L(r, a, f): circle maximum of the same quantity; may be +inf.
Measured log_max_modulus(const FunctionSource& f, Target a, double r, const FunctionalOptions& o = {});
/// log M(r, f), without the log+ clamp.
Measured max_modulus(const FunctionSource& f, double r, const FunctionalOptions& o = {});
/// A(r, f) from the boundary flux of log(|g|^2 + |h|^2).
Measured area(const FunctionSource& f, double r, const FunctionalOptions& o = {});
/// A(r, f) as (1/pi) times the disc integral of f#^2 in polar coordinates.
/// Slow; kept as an independent route for cross-checks.
double area_polar(const ComplexFunc& f, double r, const FunctionalOptions& o = {});
/// (1/2pi) circle integral of log sqrt(1 + sum |f_k|^2).
Measured base_characteristic_at(std::span<const FunctionSource* const> base, double r,
                                const FunctionalOptions& o = {});

struct CountOptions {
  int base_points = 256;
  int max_points = 1 << 17;
};

struct Winding {
  int value = 0;
  int points = 0;
  double max_step = 0.0;
};

/// Winding number of phi around |z| = r. Throws WindingUnstable when the
/// integer does not settle (or phi vanishes on a sample) before the cap.
Winding winding_number(const ComplexFunc& phi, double r, const CountOptions& o = {});

/// g - a h (or h for a = inf) for the split f = g / h.
ComplexFunc counting_function(const MeromorphicSplit& s, Target a);

/// n(r, a, f): a-points in |z| < r with multiplicity, cancelled points excluded.
int count(const ComplexFunc& f, Target a, double r, const CountOptions& o = {});

// Curves over a grid.

GrowthCurve proximity_curve(const FunctionSource& f, Target a, const RadiusGrid& grid,
                            const FunctionalOptions& o = {});
GrowthCurve log_max_modulus_curve(const FunctionSource& f, Target a, const RadiusGrid& grid,
                                  const FunctionalOptions& o = {});
GrowthCurve max_modulus_curve(const FunctionSource& f, const RadiusGrid& grid,
                              const FunctionalOptions& o = {});
GrowthCurve count_curve(const ComplexFunc& f, Target a, const RadiusGrid& grid,
                        const CountOptions& o = {});

/// Jump radii t_j with multiplicities for n(t, a, f), t in (0, r_max].
struct CountingJumps {
  int at_origin = 0;
  std::vector<double> radii;
  std::vector<int> sizes;
  /// N(r) = n(0) log r + sum over t_j <= r of size_j log(r / t_j).
  double integrated(double r) const;
};

CountingJumps counting_jumps(const ComplexFunc& f, Target a, double r_max, const CountOptions& o = {});

/// N(r, a, f), integrated exactly between located jumps.
GrowthCurve integrated_count(const ComplexFunc& f, Target a, const RadiusGrid& grid,
                             const CountOptions& o = {});
/// T(r, f) = m(r, inf, f) + N(r, inf, f).
GrowthCurve characteristic(const ComplexFunc& f, const RadiusGrid& grid, const FunctionalOptions& o = {});
/// T(r, f) for a source without poles (numeric solutions): m(r, inf, f).
GrowthCurve characteristic(const FunctionSource& f, const RadiusGrid& grid, const FunctionalOptions& o = {});
GrowthCurve area_characteristic(const FunctionSource& f, const RadiusGrid& grid,
                                const FunctionalOptions& o = {});
/// T0(r, f) = integral of A(t)/t over (0, r], by Gauss-Legendre on each grid cell.
GrowthCurve ahlfors_shimizu(const FunctionSource& f, const RadiusGrid& grid, const FunctionalOptions& o = {});
GrowthCurve base_characteristic(std::span<const FunctionSource* const> base, const RadiusGrid& grid,
                                const FunctionalOptions& o = {});

}  // namespace nevlab
