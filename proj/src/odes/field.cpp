#include <algorithm>
#include <cmath>

#include "nevlab/errors.hpp"
#include "nevlab/odes.hpp"

namespace nevlab {

NumericField::NumericField(const LinearODE& ode, std::vector<cplx> jet_at_origin, std::vector<double> radii,
                           int rays, const RayOptions& options, std::string name)
    : radii_(std::move(radii)), rays_(rays), name_(std::move(name)) {
  if (rays_ < 4) throw Error(ErrorCode::InvalidArgument, "a numeric field needs at least 4 rays");
  if (radii_.empty()) throw Error(ErrorCode::InvalidArgument, "a numeric field needs radii");
  std::sort(radii_.begin(), radii_.end());
  radii_.erase(std::unique(radii_.begin(), radii_.end()), radii_.end());
  values_.resize(static_cast<std::size_t>(rays_) * radii_.size());
  for (int j = 0; j < rays_; ++j) {
    const NumericSolution sol =
        integrate_ray(ode, 0.0, jet_at_origin, kTwoPi * j / rays_, radii_.back(), radii_, options);
    max_local_error_ = std::max(max_local_error_, sol.max_local_error);
    // samples[0] is the origin.
    for (std::size_t k = 0; k < radii_.size(); ++k) values_[j * radii_.size() + k] = sol.samples[k + 1];
  }
}

std::pair<std::size_t, std::size_t> NumericField::locate(cplx z) const {
  const double r = std::abs(z);
  const auto it = std::lower_bound(radii_.begin(), radii_.end(), r * (1.0 - 1e-12));
  if (it == radii_.end() || std::abs(*it - r) > 1e-12 * r)
    throw Error(ErrorCode::InvalidArgument, name_ + " is not sampled at radius " + std::to_string(r));
  double t = std::arg(z) / kTwoPi * rays_;
  if (t < 0) t += rays_;
  const double j = std::round(t);
  if (std::abs(t - j) > 1e-6)
    throw Error(ErrorCode::InvalidArgument, name_ + " is only sampled at the angles 2 pi j / " + std::to_string(rays_));
  const auto ray = static_cast<std::size_t>(j) % static_cast<std::size_t>(rays_);
  return {ray, static_cast<std::size_t>(it - radii_.begin())};
}

FunctionSource::Parts NumericField::parts(cplx z) const {
  const auto [ray, k] = locate(z);
  return {values_[ray * radii_.size() + k].f, LogComplex::one()};
}

double NumericField::area_flux_density(cplx z) const {
  const auto [ray, k] = locate(z);
  const RaySample& s = values_[ray * radii_.size() + k];
  if (s.f.is_zero() || s.df.is_zero()) return 0.0;
  const LogComplex zl = LogComplex::from(z) * s.df / s.f;
  // Re(z f'/f) |f|^2 / (1 + |f|^2)
  const double log_weight = -log_add_exp(0.0, -2.0 * s.f.logmod);
  return std::exp(zl.logmod + log_weight) * std::cos(zl.arg);
}

}  // namespace nevlab
