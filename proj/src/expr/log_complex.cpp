#include "nevlab/log_complex.hpp"

#include <algorithm>
#include <cmath>

namespace nevlab {

namespace {

// exp() of anything above this overflows a double.
constexpr double kMaxLog = 709.0;
constexpr double kMinLog = -745.0;

}  // namespace

double wrap_angle(double angle) {
  if (!std::isfinite(angle)) return 0.0;
  double r = std::remainder(angle, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -kInf) return a;
  if (a == kInf) return kInf;
  return a + std::log1p(std::exp(b - a));
}

LogComplex LogComplex::from(cplx w) {
  const double m = std::abs(w);
  if (m == 0.0) return zero();
  return {std::log(m), std::arg(w)};
}

LogComplex LogComplex::exp_of(cplx w) { return {w.real(), wrap_angle(w.imag())}; }

LogComplex LogComplex::polar(double logmod, double arg) {
  if (logmod == -kInf) return zero();
  return {logmod, wrap_angle(arg)};
}

bool LogComplex::representable() const {
  return is_zero() || (logmod < kMaxLog && logmod > kMinLog);
}

cplx LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(logmod), arg);
}

LogComplex LogComplex::operator-() const {
  if (is_zero()) return zero();
  return {logmod, wrap_angle(arg + kPi)};
}

LogComplex LogComplex::pow(int n) const {
  if (n == 0) return one();
  if (is_zero()) return n > 0 ? zero() : LogComplex{kInf, 0.0};
  return {n * logmod, wrap_angle(n * arg)};
}

LogComplex operator*(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() || b.is_zero()) return LogComplex::zero();
  return {a.logmod + b.logmod, wrap_angle(a.arg + b.arg)};
}

LogComplex operator/(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return LogComplex::zero();
  if (b.is_zero()) return {kInf, a.arg};
  return {a.logmod - b.logmod, wrap_angle(a.arg - b.arg)};
}

LogComplex log_sum(std::span<const LogComplex> terms) {
  double top = -kInf;
  for (const auto& t : terms) top = std::max(top, t.logmod);
  if (top == -kInf) return LogComplex::zero();
  if (!std::isfinite(top)) {
    for (const auto& t : terms)
      if (t.logmod == top) return t;
  }
  cplx acc{0.0, 0.0};
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    acc += std::polar(std::exp(t.logmod - top), t.arg);
  }
  const double m = std::abs(acc);
  if (m == 0.0) return LogComplex::zero();
  return {top + std::log(m), std::arg(acc)};
}

LogComplex operator+(const LogComplex& a, const LogComplex& b) {
  const LogComplex terms[2] = {a, b};
  return log_sum(terms);
}

LogComplex operator-(const LogComplex& a, const LogComplex& b) { return a + (-b); }

LogComplex subtract(const LogComplex& a, cplx b) { return a - LogComplex::from(b); }

}  // namespace nevlab
