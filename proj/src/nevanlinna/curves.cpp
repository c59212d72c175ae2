#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "nevlab/errors.hpp"
#include "nevlab/nevanlinna.hpp"

namespace nevlab {

namespace {

std::string target_label(const std::string& name, Target a) { return name + "(a=" + a.to_string() + ")"; }

template <class F>
GrowthCurve pointwise(const std::string& label, const RadiusGrid& grid, F&& at) {
  GrowthCurve c;
  c.label = label;
  c.grid = grid;
  for (double r : grid) {
    const Measured m = at(r);
    c.push(m.value, m.flag, m.radius_used);
  }
  return c;
}

class JumpFinder {
 public:
  JumpFinder(ComplexFunc phi, const MeromorphicSplit& s, const CountOptions& o)
      : phi_(std::move(phi)), dphi_(diff(phi_)), split_(s), opt_(o) {}

  // Count with a few nudges when the circle runs through a zero.
  int robust_count(double r) const {
    for (int k = 0; k < 4; ++k) {
      const double rr = r * (1.0 + 1e-7 * k);
      try {
        return winding_number(phi_, rr, opt_).value - split_.cancelled_within(rr);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::WindingUnstable) throw;
      }
    }
    throw Error(ErrorCode::WindingUnstable, "count unstable near r = " + std::to_string(r));
  }

  void find(double lo, int n_lo, double hi, int n_hi, CountingJumps& out) const {
    if (n_hi == n_lo) return;
    if (n_hi < n_lo) throw Error(ErrorCode::WindingUnstable, "counting function decreased");
    if (hi - lo <= 1e-4 * hi) {
      out.radii.push_back(locate(lo, hi));
      out.sizes.push_back(n_hi - n_lo);
      return;
    }
    // Any interior split point works; move off one that sits on a zero.
    // If every split point sits too close to a zero the bracket is
    // resolved as one jump.
    double mid = lo < 0.01 * hi ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    int n_mid = 0;
    bool split_ok = false;
    for (double shift : {0.0, -0.1, 0.1, -0.2, 0.2}) {
      const double m = mid + shift * (hi - lo);
      try {
        n_mid = robust_count(m);
        mid = m;
        split_ok = true;
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::WindingUnstable) throw;
      }
    }
    if (!split_ok) {
      out.radii.push_back(locate(lo, hi));
      out.sizes.push_back(n_hi - n_lo);
      return;
    }
    find(lo, n_lo, mid, n_mid, out);
    find(mid, n_mid, hi, n_hi, out);
  }

 private:
  ComplexFunc phi_, dphi_;
  const MeromorphicSplit& split_;
  CountOptions opt_;

  // A zero of phi with modulus in [lo, hi]: Newton from the smallest |phi| on the middle circle.
  double locate(double lo, double hi) const {
    const double mid = 0.5 * (lo + hi);
    constexpr int kSamples = 2048;
    double best = kInf;
    cplx z0 = mid;
    for (int j = 0; j < kSamples; ++j) {
      const cplx z = std::polar(mid, kTwoPi * j / kSamples);
      const double v = eval_log(phi_, z).logmod;
      if (v < best) {
        best = v;
        z0 = z;
      }
    }
    cplx z = z0;
    for (int it = 0; it < 60; ++it) {
      const LogComplex num = eval_log(phi_, z);
      if (num.is_zero()) break;
      const LogComplex den = eval_log(dphi_, z);
      if (den.is_zero()) break;
      const cplx step = (num / den).to_complex();
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    const double rz = std::abs(z);
    if (std::isfinite(rz) && rz >= lo * (1.0 - 1e-3) && rz <= hi * (1.0 + 1e-3)) return rz;
    return refine_by_bisection(lo, hi);
  }

  double refine_by_bisection(double lo, double hi) const {
    int n_lo = 0;
    try {
      n_lo = robust_count(lo);
    } catch (const Error&) {
      return 0.5 * (lo + hi);
    }
    while (hi - lo > 1e-10 * hi) {
      const double mid = 0.5 * (lo + hi);
      int n_mid = 0;
      try {
        n_mid = winding_number(phi_, mid, opt_).value - split_.cancelled_within(mid);
      } catch (const Error&) {
        break;
      }
      if (n_mid == n_lo) {
        lo = mid;
        n_lo = n_mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }
};

}  // namespace

double CountingJumps::integrated(double r) const {
  double total = at_origin * std::log(r);
  for (std::size_t j = 0; j < radii.size(); ++j)
    if (radii[j] <= r) total += sizes[j] * std::log(r / radii[j]);
  return total;
}

CountingJumps counting_jumps(const ComplexFunc& f, Target a, double r_max, const CountOptions& o) {
  if (!(r_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const MeromorphicSplit s = split(f);
  const ComplexFunc phi = counting_function(s, a);
  CountingJumps out;
  if (auto c = phi.as_constant()) {
    if (*c == cplx{0.0, 0.0}) throw Error(ErrorCode::Undefined, "f is identically equal to the target");
    return out;
  }
  const JumpFinder finder(phi, s, o);
  const double origin = 1e-6 * std::min(1.0, r_max);
  out.at_origin = finder.robust_count(origin);
  // Grid of checkpoints keeps each bisection bracket short.
  std::vector<double> checkpoints;
  for (double t = origin; t < r_max; t *= 1.25) checkpoints.push_back(t);
  checkpoints.push_back(r_max);
  int n_prev = out.at_origin;
  for (std::size_t k = 1; k < checkpoints.size(); ++k) {
    const int n_here = finder.robust_count(checkpoints[k]);
    finder.find(checkpoints[k - 1], n_prev, checkpoints[k], n_here, out);
    n_prev = n_here;
  }
  // Keep jumps sorted by radius.
  std::vector<std::size_t> order(out.radii.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return out.radii[x] < out.radii[y]; });
  CountingJumps sorted;
  sorted.at_origin = out.at_origin;
  for (auto i : order) {
    sorted.radii.push_back(out.radii[i]);
    sorted.sizes.push_back(out.sizes[i]);
  }
  return sorted;
}

GrowthCurve proximity_curve(const FunctionSource& f, Target a, const RadiusGrid& grid, const FunctionalOptions& o) {
  return pointwise(target_label("m", a), grid, [&](double r) { return proximity(f, a, r, o); });
}

GrowthCurve log_max_modulus_curve(const FunctionSource& f, Target a, const RadiusGrid& grid,
                                  const FunctionalOptions& o) {
  return pointwise(target_label("L", a), grid, [&](double r) { return log_max_modulus(f, a, r, o); });
}

GrowthCurve max_modulus_curve(const FunctionSource& f, const RadiusGrid& grid, const FunctionalOptions& o) {
  return pointwise("logM", grid, [&](double r) { return max_modulus(f, r, o); });
}

GrowthCurve count_curve(const ComplexFunc& f, Target a, const RadiusGrid& grid, const CountOptions& o) {
  const MeromorphicSplit s = split(f);
  const ComplexFunc phi = counting_function(s, a);
  const JumpFinder finder(phi, s, o);
  const bool trivial = phi.is_constant();
  return pointwise(target_label("n", a), grid, [&](double r) {
    if (trivial) return Measured{0.0, Accuracy::Ok, r};
    return Measured{static_cast<double>(finder.robust_count(r)), Accuracy::Ok, r};
  });
}

GrowthCurve integrated_count(const ComplexFunc& f, Target a, const RadiusGrid& grid, const CountOptions& o) {
  const CountingJumps jumps = counting_jumps(f, a, grid.back(), o);
  return pointwise(target_label("N", a), grid,
                   [&](double r) { return Measured{jumps.integrated(r), Accuracy::Ok, r}; });
}

GrowthCurve characteristic(const ComplexFunc& f, const RadiusGrid& grid, const FunctionalOptions& o) {
  const ExprSource src(f);
  GrowthCurve m = proximity_curve(src, Target::infinity(), grid, o);
  m.label = "T";
  if (src.split_form().denominator.is_constant()) return m;
  const GrowthCurve n = integrated_count(f, Target::infinity(), grid);
  for (std::size_t i = 0; i < m.size(); ++i) m.values[i] += n.values[i];
  return m;
}

GrowthCurve characteristic(const FunctionSource& f, const RadiusGrid& grid, const FunctionalOptions& o) {
  GrowthCurve m = proximity_curve(f, Target::infinity(), grid, o);
  m.label = "T";
  return m;
}

GrowthCurve area_characteristic(const FunctionSource& f, const RadiusGrid& grid, const FunctionalOptions& o) {
  return pointwise("A", grid, [&](double r) { return area(f, r, o); });
}

GrowthCurve ahlfors_shimizu(const FunctionSource& f, const RadiusGrid& grid, const FunctionalOptions& o) {
  using Gauss20 = boost::math::quadrature::gauss<double, 20>;
  using Gauss10 = boost::math::quadrature::gauss<double, 10>;
  Accuracy flag = Accuracy::Ok;
  auto integrand = [&](double t) {
    const Measured m = area(f, t, o);
    flag = worst(flag, m.flag == Accuracy::Perturbed ? Accuracy::Ok : m.flag);
    return m.value / t;
  };
  GrowthCurve c;
  c.label = "T0";
  c.grid = grid;
  double total = Gauss20::integrate(integrand, 0.0, grid.front());
  c.push(total, flag, grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    flag = Accuracy::Ok;
    total += Gauss10::integrate(integrand, grid[i - 1], grid[i]);
    c.push(total, flag, grid[i]);
  }
  return c;
}

GrowthCurve base_characteristic(std::span<const FunctionSource* const> base, const RadiusGrid& grid,
                                const FunctionalOptions& o) {
  return pointwise("T_base", grid, [&](double r) { return base_characteristic_at(base, r, o); });
}

}  // namespace nevlab
