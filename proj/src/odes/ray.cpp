#include <algorithm>
#include <cmath>

#include "nevlab/errors.hpp"
#include "nevlab/odes.hpp"

namespace nevlab {

namespace {

// (m + j)! / m!
double rising(int m, int j) {
  double p = 1.0;
  for (int i = 1; i <= j; ++i) p *= m + i;
  return p;
}

struct StepResult {
  std::vector<cplx> state;  // f^(j) at the end point, unscaled relative to the current scale
  double error = 0.0;
};

class Stepper {
 public:
  Stepper(const LinearODE& ode, const RayOptions& o) : ode_(ode), n_(ode.order), k_(o.taylor_order) {
    if (k_ < n_ + 2) throw Error(ErrorCode::InvalidArgument, "Taylor order too small for the equation");
  }

  StepResult step(cplx zc, cplx H, const std::vector<cplx>& u) const {
    const int K = k_, n = n_;
    std::vector<std::vector<cplx>> alpha(n);
    for (int j = 0; j < n; ++j) {
      if (auto c = ode_.A(j).as_constant()) {
        alpha[j].assign(K + 1, cplx{0.0, 0.0});
        alpha[j][0] = *c;
        continue;
      }
      alpha[j] = taylor_coefficients(ode_.A(j), zc, K);
      cplx hp = 1.0;
      for (int i = 0; i <= K; ++i, hp *= H) alpha[j][i] *= hp;
    }
    std::vector<cplx> d(K + 1);
    cplx hp = 1.0;
    double fact = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k > 0) fact *= k;
      d[k] = u[k] * hp / fact;
      hp *= H;
    }
    std::vector<cplx> hpow(n + 1);
    hpow[0] = 1.0;
    for (int i = 1; i <= n; ++i) hpow[i] = hpow[i - 1] * H;
    for (int k = 0; k + n <= K; ++k) {
      cplx acc = 0.0;
      for (int j = 0; j < n; ++j) {
        cplx inner = 0.0;
        for (int i = 0; i <= k; ++i) {
          if (alpha[j][i] == cplx{0.0, 0.0}) continue;
          const int m = k - i;
          inner += alpha[j][i] * d[m + j] * rising(m, j);
        }
        acc += hpow[n - j] * inner;
      }
      d[k + n] = -acc / rising(k, n);
    }
    StepResult out;
    out.state.resize(n);
    const double ah = std::abs(H);
    double err = 0.0, size = 0.0;
    for (int j = 0; j < n; ++j) {
      cplx sum = 0.0;
      double abs_sum = 0.0;
      for (int k = K; k >= j; --k) {
        const cplx t = d[k] * rising(k - j, j);
        sum += t;
        abs_sum += std::abs(t);
      }
      const double inv = std::pow(ah, -j);
      out.state[j] = sum * std::pow(H, -j);
      size = std::max(size, abs_sum * inv);
      err = std::max(err, inv * (std::abs(d[K]) * rising(K - j, j) + std::abs(d[K - 1]) * rising(K - 1 - j, j)));
    }
    out.error = size > 0.0 ? err / size : 0.0;
    if (!std::isfinite(out.error)) out.error = kInf;
    return out;
  }

 private:
  const LinearODE& ode_;
  int n_, k_;
};

LogComplex to_log(cplx u, double scale) {
  if (u == cplx{0.0, 0.0}) return LogComplex::zero();
  return LogComplex::polar(scale + std::log(std::abs(u)), std::arg(u));
}

}  // namespace

NumericSolution integrate_ray(const LinearODE& ode, cplx anchor, std::span<const cplx> jet, double theta,
                              double s_max, std::span<const double> stops, const RayOptions& options) {
  const int n = ode.order;
  if (static_cast<int>(jet.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "initial jet needs " + std::to_string(n) + " values");
  if (!(s_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "ray length must be positive");
  for (std::size_t i = 0; i < stops.size(); ++i)
    if (!(stops[i] > 0.0 && stops[i] <= s_max) || (i > 0 && !(stops[i] > stops[i - 1])))
      throw Error(ErrorCode::InvalidArgument, "ray stops must increase within (0, s_max]");

  std::vector<cplx> pole_list;
  for (const auto& a : ode.coefficients)
    if (auto p = poles(a)) pole_list.insert(pole_list.end(), p->begin(), p->end());

  NumericSolution sol;
  sol.theta = theta;
  sol.anchor = anchor;
  sol.jet.assign(jet.begin(), jet.end());
  const cplx dir = std::polar(1.0, theta);
  const Stepper stepper(ode, options);

  std::vector<cplx> u(jet.begin(), jet.end());
  double norm = 0.0;
  for (const auto& x : u) norm = std::max(norm, std::abs(x));
  double scale = 0.0;
  if (norm > 0.0) {
    scale = std::log(norm);
    for (auto& x : u) x /= norm;
  }

  auto record = [&](double s) {
    const cplx z = anchor + s * dir;
    RaySample smp;
    smp.s = s;
    smp.f = norm > 0.0 ? to_log(u[0], scale) : LogComplex::zero();
    if (n >= 2) smp.df = norm > 0.0 ? to_log(u[1], scale) : LogComplex::zero();
    else smp.df = -(eval_log(ode.A(0), z) * smp.f);
    sol.samples.push_back(smp);
  };
  record(0.0);
  if (norm == 0.0) {
    // The zero solution.
    for (double s : stops) record(s);
    return sol;
  }

  const int K = options.taylor_order;
  double s = 0.0;
  double h = std::min(0.5, s_max);
  std::size_t next = 0;
  while (s < s_max) {
    const double target = next < stops.size() ? stops[next] : s_max;
    double hh = std::min(h, target - s);
    const cplx zc = anchor + s * dir;
    for (const auto& p : pole_list) hh = std::min(hh, 0.5 * std::abs(zc - p));
    if (hh < options.min_step * std::max(1.0, std::abs(zc)))
      throw Error(ErrorCode::StepUnderflow, "step size underflow near z = " + std::to_string(zc.real()) + " + " +
                                                std::to_string(zc.imag()) + "i");
    const StepResult r = stepper.step(zc, hh * dir, u);
    if (r.error > options.tolerance) {
      h = hh * std::max(0.2, 0.9 * std::pow(options.tolerance / r.error, 1.0 / K));
      continue;
    }
    ++sol.steps;
    sol.max_local_error = std::max(sol.max_local_error, r.error);
    const bool reached = hh == target - s;
    s = reached ? target : s + hh;
    double m = 0.0;
    for (const auto& x : r.state) m = std::max(m, std::abs(x));
    if (!(m > 0.0) || !std::isfinite(m)) throw Error(ErrorCode::StepUnderflow, "state lost along the ray");
    for (int j = 0; j < n; ++j) u[j] = r.state[j] / m;
    scale += std::log(m);
    const double grow = r.error > 0.0 ? std::min(2.5, 0.9 * std::pow(options.tolerance / r.error, 1.0 / K)) : 2.5;
    h = std::max(h, hh * grow);
    if (stops.empty()) record(s);
    else if (reached) {
      record(s);
      ++next;
    }
  }
  return sol;
}

NumericSolution integrate_ray(const LinearODE& ode, cplx anchor, std::span<const cplx> jet, double theta,
                              double s_max, const RayOptions& options) {
  return integrate_ray(ode, anchor, jet, theta, s_max, std::span<const double>{}, options);
}

}  // namespace nevlab
