#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nevlab/log_complex.hpp"

namespace nevlab {

/// Immutable expression tree for entire and meromorphic functions of z.
///
/// Nodes are shared, so copies are cheap and safe to read from many threads.
/// Construction applies a handful of local rules (constant folding, flattening
/// of nested sums/products, dropping neutral elements) and nothing more.
///
/// Composition is limited to exp(inner) and polynomial(inner); exp of an
/// argument with a non-removable pole is rejected with NotMeromorphic.
class ComplexFunc {
 public:
  enum class Kind { Constant, Variable, Sum, Product, Quotient, Power, Exp, Polynomial };

  ComplexFunc();  // the constant 0

  static ComplexFunc constant(cplx c);
  static ComplexFunc variable();
  static ComplexFunc sum(std::vector<ComplexFunc> terms);
  static ComplexFunc product(std::vector<ComplexFunc> factors);
  static ComplexFunc quotient(ComplexFunc numerator, ComplexFunc denominator);
  static ComplexFunc power(ComplexFunc base, int exponent);
  static ComplexFunc exp(ComplexFunc argument);
  /// Σ coefficients[k] · inner^k.
  static ComplexFunc polynomial(std::vector<cplx> coefficients, ComplexFunc inner = variable());

  Kind kind() const;
  std::optional<cplx> as_constant() const;
  bool is_constant() const { return kind() == Kind::Constant; }
  cplx constant_value() const;
  int exponent() const;
  std::span<const ComplexFunc> operands() const;
  std::span<const cplx> coefficients() const;

  std::string to_string() const;

  friend ComplexFunc operator+(const ComplexFunc& a, const ComplexFunc& b);
  friend ComplexFunc operator-(const ComplexFunc& a, const ComplexFunc& b);
  friend ComplexFunc operator*(const ComplexFunc& a, const ComplexFunc& b);
  friend ComplexFunc operator/(const ComplexFunc& a, const ComplexFunc& b);
  friend ComplexFunc operator-(const ComplexFunc& a);

 private:
  struct Node;
  explicit ComplexFunc(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

ComplexFunc operator+(const ComplexFunc& a, cplx b);
ComplexFunc operator*(cplx a, const ComplexFunc& b);

/// Log-domain value f(z). Removable singularities of quotients are filled in
/// from Taylor coefficients; genuine poles throw PoleHit.
LogComplex eval_log(const ComplexFunc& f, cplx z);

/// Exact symbolic derivative.
ComplexFunc diff(const ComplexFunc& f);
ComplexFunc diff(const ComplexFunc& f, int order);

/// f'/f, with products, powers, exp and quotients expanded so that no large
/// modulus is formed and then divided away (the log-derivative of exp(u) is u').
ComplexFunc log_derivative(const ComplexFunc& f);

/// Taylor coefficients c_0..c_order of f about z0 in plain complex arithmetic.
/// Throws PoleHit when a denominator vanishes at z0 and Undefined on overflow.
std::vector<cplx> taylor_coefficients(const ComplexFunc& f, cplx z0, int order);

/// Coefficients in z (lowest degree first) if f is structurally a polynomial.
std::optional<std::vector<cplx>> as_polynomial(const ComplexFunc& f);

/// True when f contains exp() of a nonconstant argument.
bool is_transcendental(const ComplexFunc& f);

/// A common zero of numerator and denominator removed from the split.
struct CancelledPoint {
  cplx location;
  int multiplicity = 0;
};

/// f = numerator / denominator with both entire. Common zeros are located
/// only when the denominator is a polynomial; they are listed in `cancelled`
/// and must be discounted by anything that counts zeros of either part.
struct MeromorphicSplit {
  ComplexFunc numerator;
  ComplexFunc denominator;
  std::vector<CancelledPoint> cancelled;

  /// Denominator is constant, or every one of its zeros is cancelled.
  bool entire() const;
  int cancelled_within(double r) const;
};

MeromorphicSplit split(const ComplexFunc& f);
bool is_entire(const ComplexFunc& f);

/// Pole locations when the denominator of the split is a polynomial; nullopt
/// when it is transcendental and the poles are not located.
std::optional<std::vector<cplx>> poles(const ComplexFunc& f);

/// log f#(z) = log(|f'| / (1 + |f|^2)), evaluated through the split so that
/// poles and huge |f| are handled: f# = |g'h - gh'| / (|g|^2 + |h|^2).
class SphericalDerivative {
 public:
  explicit SphericalDerivative(const ComplexFunc& f);
  double log_at(cplx z) const;

 private:
  ComplexFunc f_, f_prime_;
  MeromorphicSplit split_;
  ComplexFunc g_prime_, h_prime_;
};

double spherical_deriv_log(const ComplexFunc& f, cplx z);

}  // namespace nevlab
