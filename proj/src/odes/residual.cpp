#include <cmath>
#include <random>

#include "nevlab/errors.hpp"
#include "nevlab/odes.hpp"

namespace nevlab {

ResidualReport residual(const LinearODE& ode, const ComplexFunc& f, std::span<const cplx> samples) {
  const int n = ode.order;
  std::vector<ComplexFunc> d{f};
  for (int k = 1; k <= n; ++k) d.push_back(diff(d.back()));
  ResidualReport rep;
  std::vector<LogComplex> terms(n + 1);
  for (const cplx z : samples) {
    terms[n] = eval_log(d[n], z);
    for (int j = 0; j < n; ++j) terms[j] = eval_log(ode.A(j), z) * eval_log(d[j], z);
    double largest = -kInf;
    for (const auto& t : terms) largest = std::max(largest, t.logmod);
    ++rep.samples;
    if (largest == -kInf) continue;  // every term vanishes
    const double rel = log_sum(terms).logmod - largest;
    if (rel > rep.max_log_relative) {
      rep.max_log_relative = rel;
      rep.worst_point = z;
    }
  }
  rep.max_relative = std::exp(rep.max_log_relative);
  return rep;
}

std::vector<cplx> disc_samples(std::size_t n, double radius, std::uint64_t seed) {
  // Fixed-width engine plus explicit transforms: identical on every platform.
  std::mt19937_64 rng(seed);
  std::vector<cplx> out;
  out.reserve(n);
  constexpr double kScale = 1.0 / 18446744073709551616.0;  // 2^-64
  for (std::size_t k = 0; k < n; ++k) {
    const double u = static_cast<double>(rng()) * kScale;
    const double v = static_cast<double>(rng()) * kScale;
    out.push_back(std::polar(radius * std::sqrt(u), kTwoPi * v));
  }
  return out;
}

}  // namespace nevlab
