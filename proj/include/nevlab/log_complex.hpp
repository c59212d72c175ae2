#pragma once

#include <complex>
#include <limits>
#include <span>

namespace nevlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Reduces an angle to (-pi, pi].
double wrap_angle(double angle);

/// log(e^a + e^b) without overflow; either argument may be -inf.
double log_add_exp(double a, double b);

/// A complex number stored as (log|w|, arg w).
///
/// Zero is encoded as logmod = -inf, arg = 0. Values whose modulus exceeds the
/// double range (exp(exp(20)) and friends) stay representable as long as
/// log|w| itself is finite.
struct LogComplex {
  double logmod = -kInf;
  double arg = 0.0;

  static LogComplex zero() { return {}; }
  static LogComplex one() { return {0.0, 0.0}; }
  static LogComplex from(cplx w);
  /// exp(w) computed as (Re w, Im w mod 2pi); exp(w) itself is never formed.
  static LogComplex exp_of(cplx w);
  static LogComplex polar(double logmod, double arg);

  bool is_zero() const { return logmod == -kInf; }
  /// True when to_complex() neither overflows nor flushes a nonzero value to zero.
  bool representable() const;
  cplx to_complex() const;

  LogComplex operator-() const;
  LogComplex pow(int n) const;
  LogComplex conj() const { return is_zero() ? zero() : LogComplex{logmod, wrap_angle(-arg)}; }
};

LogComplex operator*(const LogComplex& a, const LogComplex& b);
LogComplex operator/(const LogComplex& a, const LogComplex& b);
LogComplex operator+(const LogComplex& a, const LogComplex& b);
LogComplex operator-(const LogComplex& a, const LogComplex& b);

/// Sum with the largest modulus factored out.
LogComplex log_sum(std::span<const LogComplex> terms);

/// a - b for an ordinary complex b.
LogComplex subtract(const LogComplex& a, cplx b);

}  // namespace nevlab
