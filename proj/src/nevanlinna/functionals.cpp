#include <algorithm>
#include <cmath>
#include <memory>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "nevlab/errors.hpp"
#include "nevlab/nevanlinna.hpp"

namespace nevlab {

namespace {

// log|f| for a = inf, log 1/|f - a| otherwise; log+ of this is the integrand of m and L.
class TargetQuantity {
 public:
  TargetQuantity(const FunctionSource& f, Target a) : src_(&f) {
    if (a.is_infinity()) return;
    inverse_ = true;
    owned_ = f.shifted(a.value());
    if (owned_) src_ = owned_.get();
    else a0_ = a.value();
  }

  bool inverse() const { return inverse_; }

  double operator()(cplx z) const {
    if (!inverse_) return src_->log_abs(z);
    return -src_->log_abs_minus(z, a0_);
  }

  const FunctionSource& source() const { return *src_; }

 private:
  const FunctionSource* src_;
  std::unique_ptr<FunctionSource> owned_;
  cplx a0_{0.0, 0.0};
  bool inverse_ = false;
};

template <class Attempt>
Measured with_perturbation(double r, const FunctionalOptions& o, Attempt&& attempt) {
  double rr = r;
  Accuracy extra = Accuracy::Ok;
  for (int k = 0; k < 4; ++k) {
    const CircleResult c = attempt(rr);
    if (!c.hit_singularity && std::isfinite(c.value)) return {c.value, worst(c.flag, extra), rr};
    rr *= 1.0 + o.perturbation;
    extra = Accuracy::Perturbed;
  }
  throw Error(ErrorCode::QuadratureNoConverge, "circle integrand singular at r = " + std::to_string(r));
}

CircleResult circle_mean_for(const FunctionSource& src, const AngleFunction& integrand,
                             const AngleFunction& kink, const FunctionalOptions& o) {
  if (src.uniform_points() > 0) {
    QuadratureOptions q = o.quadrature;
    q.rel_tol = std::max(q.rel_tol, src.sampling_tolerance());
    return circle_mean_uniform(integrand, src.uniform_points(), q);
  }
  return circle_mean(integrand, &kink, o.quadrature);
}

// Largest value of q on the circle: best coarse sample, then a Brent polish.
double circle_max(const FunctionSource& src, const std::function<double(double)>& q, const FunctionalOptions& o) {
  const int uniform = src.uniform_points();
  const int n = uniform > 0 ? uniform : std::max(512, o.max_samples);
  double best = -kInf;
  int best_j = 0;
  for (int j = 0; j < n; ++j) {
    const double v = q(kTwoPi * j / n);
    if (std::isnan(v)) continue;
    if (v > best) {
      best = v;
      best_j = j;
    }
  }
  if (uniform > 0 || !std::isfinite(best)) return best;
  const double h = kTwoPi / n;
  const double centre = kTwoPi * best_j / n;
  auto neg = [&](double t) {
    const double v = q(t);
    return std::isnan(v) ? kInf : -v;
  };
  const auto [t, fv] = boost::math::tools::brent_find_minima(neg, centre - h, centre + h, 45);
  (void)t;
  return std::max(best, -fv);
}

}  // namespace

Measured proximity(const FunctionSource& f, Target a, double r, const FunctionalOptions& o) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const TargetQuantity q(f, a);
  return with_perturbation(r, o, [&](double rr) {
    bool capped = false;
    auto kink = [&](double t) { return q(std::polar(rr, t)); };
    auto integrand = [&](double t) {
      double v = q(std::polar(rr, t));
      if (std::isnan(v) || v == kInf) return v;
      if (q.inverse() && v > o.log_cap) {
        capped = true;
        v = o.log_cap;
      }
      return std::max(0.0, v);
    };
    CircleResult c = circle_mean_for(q.source(), integrand, kink, o);
    if (capped) c.flag = worst(c.flag, Accuracy::Capped);
    return c;
  });
}

Measured log_max_modulus(const FunctionSource& f, Target a, double r, const FunctionalOptions& o) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const TargetQuantity q(f, a);
  const double v = circle_max(q.source(), [&](double t) { return q(std::polar(r, t)); }, o);
  return {std::max(0.0, v), Accuracy::Ok, r};
}

Measured max_modulus(const FunctionSource& f, double r, const FunctionalOptions& o) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const double v = circle_max(f, [&](double t) { return f.log_abs(std::polar(r, t)); }, o);
  return {v, Accuracy::Ok, r};
}

Measured area(const FunctionSource& f, double r, const FunctionalOptions& o) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  Measured m = with_perturbation(r, o, [&](double rr) {
    auto kink = [&](double t) { return f.log_abs(std::polar(rr, t)); };
    auto integrand = [&](double t) { return f.area_flux_density(std::polar(rr, t)); };
    return circle_mean_for(f, integrand, kink, o);
  });
  m.value -= f.cancelled_inside(m.radius_used);
  return m;
}

double area_polar(const ComplexFunc& f, double r, const FunctionalOptions& o) {
  const SphericalDerivative sd(f);
  auto ring = [&](double s) {
    if (s == 0.0) return 0.0;
    auto integrand = [&](double t) { return std::exp(2.0 * sd.log_at(std::polar(s, t))); };
    const CircleResult c = circle_mean_uniform(integrand, 1 << 16, o.quadrature);
    return 2.0 * s * c.value;  // (1/pi) * s * (2pi * mean)
  };
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(ring, 0.0, r, 20, 1e-11);
}

Measured base_characteristic_at(std::span<const FunctionSource* const> base, double r,
                                const FunctionalOptions& o) {
  if (base.empty()) throw Error(ErrorCode::InvalidArgument, "empty solution base");
  int uniform = 0;
  QuadratureOptions q = o.quadrature;
  for (const auto* s : base) {
    if (s->uniform_points() > 0) uniform = uniform ? std::min(uniform, s->uniform_points()) : s->uniform_points();
    q.rel_tol = std::max(q.rel_tol, s->sampling_tolerance());
  }
  return with_perturbation(r, o, [&](double rr) {
    const AngleFunction kink = [&](double t) {
      double m = -kInf;
      for (const auto* s : base) m = std::max(m, s->log_abs(std::polar(rr, t)));
      return m;
    };
    auto integrand = [&](double t) {
      double acc = 0.0;  // log 1
      for (const auto* s : base) acc = log_add_exp(acc, 2.0 * s->log_abs(std::polar(rr, t)));
      return 0.5 * acc;
    };
    if (uniform > 0) return circle_mean_uniform(integrand, uniform, q);
    return circle_mean(integrand, &kink, o.quadrature);
  });
}

Winding winding_number(const ComplexFunc& phi, double r, const CountOptions& o) {
  auto arg_at = [&](double t) {
    const LogComplex v = eval_log(phi, std::polar(r, t));
    if (v.is_zero()) throw Error(ErrorCode::WindingUnstable, "counting function vanishes on the circle");
    return v.arg;
  };
  auto measure = [](const std::vector<double>& args, double& max_step) {
    double total = 0.0;
    max_step = 0.0;
    const std::size_t n = args.size();
    for (std::size_t j = 0; j < n; ++j) {
      const double d = wrap_angle(args[(j + 1) % n] - args[j]);
      total += d;
      max_step = std::max(max_step, std::abs(d));
    }
    return total / kTwoPi;
  };
  int n = std::max(8, o.base_points);
  std::vector<double> args(n);
  for (int j = 0; j < n; ++j) args[j] = arg_at(kTwoPi * j / n);
  double step = 0.0;
  double turns = measure(args, step);
  while (2 * n <= o.max_points) {
    std::vector<double> next(2 * n);
    for (int j = 0; j < n; ++j) {
      next[2 * j] = args[j];
      next[2 * j + 1] = arg_at(kTwoPi * (2 * j + 1) / (2.0 * n));
    }
    double next_step = 0.0;
    const double next_turns = measure(next, next_step);
    const long w = std::lround(next_turns);
    if (w == std::lround(turns) && next_step < kPi / 2 && std::abs(next_turns - w) < 1e-6)
      return {static_cast<int>(w), 2 * n, next_step};
    args = std::move(next);
    turns = next_turns;
    n *= 2;
  }
  throw Error(ErrorCode::WindingUnstable, "winding number did not settle at r = " + std::to_string(r));
}

ComplexFunc counting_function(const MeromorphicSplit& s, Target a) {
  if (a.is_infinity()) return s.denominator;
  return s.numerator - a.value() * s.denominator;
}

int count(const ComplexFunc& f, Target a, double r, const CountOptions& o) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const MeromorphicSplit s = split(f);
  const ComplexFunc phi = counting_function(s, a);
  if (auto c = phi.as_constant()) {
    if (*c == cplx{0.0, 0.0}) throw Error(ErrorCode::Undefined, "f is identically equal to the target");
    return 0;
  }
  return winding_number(phi, r, o).value - s.cancelled_within(r);
}

}  // namespace nevlab
