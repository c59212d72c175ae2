#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "nevlab/grid.hpp"

namespace nevlab {

/// Settings for integrals over a circle |z| = r parametrised by angle.
struct QuadratureOptions {
  int base_points = 256;          // power of two
  int max_points = 1 << 16;       // trapezoid / breakpoint-scan cap
  double rel_tol = 1e-11;
  double abs_tol = 1e-14;
  std::size_t max_panels = 4000;  // Gauss-Kronrod panels per circle
  int max_breakpoint_points = 1 << 14;
};

struct CircleResult {
  double value = 0.0;
  Accuracy flag = Accuracy::Ok;
  /// An evaluated sample was infinite or NaN (typically an a-point on the circle).
  bool hit_singularity = false;
  std::size_t evaluations = 0;
};

using AngleFunction = std::function<double(double)>;

/// Angles in [0, 2pi) where `kink` changes sign, located by a doubling scan and
/// refined with TOMS 748. `stable` reports whether the count settled before the cap.
std::vector<double> find_sign_changes(const AngleFunction& kink, const QuadratureOptions& options,
                                      bool* stable = nullptr);

/// (1/2pi) times the integral of `integrand` over a full turn. When `kink` is
/// given, the integrand may have derivative jumps where kink changes sign; those
/// angles become arc endpoints for adaptive Gauss-Kronrod. Without breakpoints
/// the periodic trapezoid rule is doubled until it settles.
CircleResult circle_mean(const AngleFunction& integrand, const AngleFunction* kink,
                         const QuadratureOptions& options);

/// Trapezoid on the uniform angles 2pi j / N, doubling N up to max_points.
/// For sources that can only be sampled on such angles.
CircleResult circle_mean_uniform(const AngleFunction& integrand, int max_points,
                                 const QuadratureOptions& options);

}  // namespace nevlab
