#include "nevlab/circle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "nevlab/errors.hpp"
#include "nevlab/log_complex.hpp"

namespace nevlab {

namespace {

double clamp_sign_value(double v) {
  if (std::isnan(v)) throw Error(ErrorCode::Undefined, "NaN while scanning circle");
  return std::clamp(v, -1e300, 1e300);
}

std::vector<double> scan(const AngleFunction& kink, int n, std::vector<double>& samples) {
  samples.resize(n);
  const double h = kTwoPi / n;
  for (int j = 0; j < n; ++j) samples[j] = clamp_sign_value(kink(j * h));
  std::vector<double> roots;
  for (int j = 0; j < n; ++j) {
    const double a = samples[j];
    const double b = samples[(j + 1) % n];
    // Exact zeros count as positive: long runs of them occur where the
    // function rounds to |f| = 1, and must not register as kinks.
    if ((a < 0.0) == (b < 0.0)) continue;
    const double lo = j * h, hi = (j + 1) * h;
    std::uintmax_t iters = 100;
    auto tol = [](double x, double y) { return std::abs(x - y) <= 4e-16 * std::max(1.0, std::abs(x)); };
    auto f = [&](double t) { return clamp_sign_value(kink(t)); };
    auto [l, r] = boost::math::tools::toms748_solve(f, lo, hi, a, b, tol, iters);
    roots.push_back(std::fmod(0.5 * (l + r), kTwoPi));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

struct Panel {
  double a, b, value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod_panel(const std::function<double(double)>& f, double a, double b) {
  Panel p{a, b, 0.0, 0.0, 0.0};
  p.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
  return p;
}

struct Adaptive {
  double value = 0.0, error = 0.0, l1 = 0.0;
};

// Global adaptive Gauss-Kronrod: always split the panel with the largest
// error estimate, so a roundoff floor cannot trigger exponential splitting.
Adaptive adaptive_kronrod(const std::function<double(double)>& f, const std::vector<std::pair<double, double>>& arcs,
                          double rel_tol, double abs_tol, std::size_t max_panels) {
  std::priority_queue<Panel> heap;
  Adaptive total;
  for (const auto& [a, b] : arcs) {
    Panel p = kronrod_panel(f, a, b);
    total.value += p.value;
    total.error += p.error;
    total.l1 += p.l1;
    heap.push(p);
  }
  while (!heap.empty() && heap.size() < max_panels && std::isfinite(total.value) &&
         total.error > rel_tol * total.l1 + abs_tol) {
    const Panel worst_panel = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst_panel.a + worst_panel.b);
    if (!(mid > worst_panel.a && mid < worst_panel.b)) {
      heap.push({worst_panel.a, worst_panel.b, worst_panel.value, 0.0, worst_panel.l1});
      total.error -= worst_panel.error;
      continue;
    }
    const Panel left = kronrod_panel(f, worst_panel.a, mid);
    const Panel right = kronrod_panel(f, mid, worst_panel.b);
    total.value += left.value + right.value - worst_panel.value;
    total.error += left.error + right.error - worst_panel.error;
    total.l1 += left.l1 + right.l1 - worst_panel.l1;
    heap.push(left);
    heap.push(right);
  }
  // Recompute from the panels to shed accumulated update roundoff.
  Adaptive exact;
  while (!heap.empty()) {
    exact.value += heap.top().value;
    exact.error += heap.top().error;
    exact.l1 += heap.top().l1;
    heap.pop();
  }
  return exact;
}

}  // namespace

std::vector<double> find_sign_changes(const AngleFunction& kink, const QuadratureOptions& options,
                                      bool* stable) {
  std::vector<double> samples;
  int n = std::max(8, options.base_points);
  std::vector<double> prev = scan(kink, n, samples);
  while (true) {
    if (2 * n > options.max_breakpoint_points) {
      if (stable) *stable = false;
      return prev;
    }
    n *= 2;
    std::vector<double> next = scan(kink, n, samples);
    if (next.size() == prev.size()) {
      if (stable) *stable = true;
      return next;
    }
    prev = std::move(next);
  }
}

CircleResult circle_mean_uniform(const AngleFunction& integrand, int max_points,
                                 const QuadratureOptions& options) {
  CircleResult out;
  int n = std::min(std::max(4, options.base_points), max_points);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += integrand(kTwoPi * j / n);
  out.evaluations = n;
  double mean = sum / n;
  while (true) {
    if (!std::isfinite(mean)) {
      out.hit_singularity = true;
      out.value = mean;
      return out;
    }
    if (2 * n > max_points) {
      out.value = mean;
      out.flag = Accuracy::NotConverged;
      return out;
    }
    double odd = 0.0;
    for (int j = 0; j < n; ++j) odd += integrand(kTwoPi * (2 * j + 1) / (2.0 * n));
    out.evaluations += n;
    sum += odd;
    n *= 2;
    const double next = sum / n;
    if (std::abs(next - mean) <= options.rel_tol * std::abs(next) + options.abs_tol) {
      out.value = next;
      out.hit_singularity = !std::isfinite(next);
      return out;
    }
    mean = next;
  }
}

CircleResult circle_mean(const AngleFunction& integrand, const AngleFunction* kink,
                         const QuadratureOptions& options) {
  std::vector<double> breaks;
  bool stable = true;
  if (kink) breaks = find_sign_changes(*kink, options, &stable);
  if (breaks.empty()) {
    CircleResult r = circle_mean_uniform(integrand, options.max_points, options);
    if (!stable) r.flag = worst(r.flag, Accuracy::NotConverged);
    return r;
  }
  CircleResult out;
  std::size_t evaluations = 0;
  auto counted = [&](double t) {
    ++evaluations;
    return integrand(t);
  };
  std::vector<std::pair<double, double>> arcs;
  const std::size_t k = breaks.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double a = breaks[i];
    const double b = i + 1 < k ? breaks[i + 1] : breaks[0] + kTwoPi;
    if (b > a) arcs.emplace_back(a, b);
  }
  const Adaptive result =
      adaptive_kronrod(counted, arcs, options.rel_tol, kTwoPi * options.abs_tol, options.max_panels);
  const double total_err = result.error, total_l1 = result.l1;
  out.evaluations = evaluations;
  out.value = result.value / kTwoPi;
  if (!std::isfinite(out.value)) {
    out.hit_singularity = true;
    return out;
  }
  if (total_err > 100.0 * options.rel_tol * total_l1 + kTwoPi * options.abs_tol || !stable)
    out.flag = Accuracy::NotConverged;
  return out;
}

}  // namespace nevlab
