#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "nevlab/errors.hpp"
#include "nevlab/expr.hpp"

namespace nevlab {

namespace {

using Poly = std::vector<cplx>;

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == cplx{0.0, 0.0}) p.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

std::optional<Poly> poly_divide_exact(Poly a, const Poly& b) {
  if (b.size() == 1) {
    for (auto& c : a) c /= b[0];
    return a;
  }
  if (a.size() < b.size()) return std::nullopt;
  double scale = 0.0;
  for (const auto& c : a) scale = std::max(scale, std::abs(c));
  Poly q(a.size() - b.size() + 1, cplx{0.0, 0.0});
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = a[k + b.size() - 1] / b.back();
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= q[k] * b[j];
  }
  for (std::size_t j = 0; j + 1 < b.size(); ++j)
    if (std::abs(a[j]) > 1e-12 * std::max(1.0, scale)) return std::nullopt;
  trim(q);
  return q;
}

bool is_one(const ComplexFunc& f) {
  auto c = f.as_constant();
  return c && *c == cplx{1.0, 0.0};
}

struct Raw {
  ComplexFunc g, h;
};

Raw raw_split(const ComplexFunc& f) {
  using K = ComplexFunc::Kind;
  const ComplexFunc one = ComplexFunc::constant(1.0);
  switch (f.kind()) {
    case K::Constant:
    case K::Variable:
    case K::Exp: return {f, one};
    case K::Sum: {
      Raw acc{ComplexFunc::constant(0.0), one};
      for (const auto& t : f.operands()) {
        Raw r = raw_split(t);
        if (is_one(r.h)) {
          acc.g = acc.g + r.g * acc.h;
        } else if (is_one(acc.h)) {
          acc = {acc.g * r.h + r.g, r.h};
        } else {
          acc = {acc.g * r.h + r.g * acc.h, acc.h * r.h};
        }
      }
      return acc;
    }
    case K::Product: {
      std::vector<ComplexFunc> gs, hs;
      for (const auto& t : f.operands()) {
        Raw r = raw_split(t);
        gs.push_back(r.g);
        if (!is_one(r.h)) hs.push_back(r.h);
      }
      return {ComplexFunc::product(std::move(gs)), ComplexFunc::product(std::move(hs))};
    }
    case K::Quotient: {
      Raw u = raw_split(f.operands()[0]);
      Raw v = raw_split(f.operands()[1]);
      return {u.g * v.h, u.h * v.g};
    }
    case K::Power: {
      Raw u = raw_split(f.operands()[0]);
      const int n = f.exponent();
      if (n > 0) return {ComplexFunc::power(u.g, n), ComplexFunc::power(u.h, n)};
      return {ComplexFunc::power(u.h, -n), ComplexFunc::power(u.g, -n)};
    }
    case K::Polynomial: {
      Raw u = raw_split(f.operands()[0]);
      if (u.h.is_constant()) return {f, one};
      const auto c = f.coefficients();
      const int d = static_cast<int>(c.size()) - 1;
      std::vector<ComplexFunc> terms;
      for (int k = 0; k <= d; ++k) {
        if (c[k] == cplx{0.0, 0.0}) continue;
        terms.push_back(c[k] * (ComplexFunc::power(u.g, k) * ComplexFunc::power(u.h, d - k)));
      }
      return {ComplexFunc::sum(std::move(terms)), ComplexFunc::power(u.h, d)};
    }
  }
  return {f, one};
}

std::vector<cplx> polynomial_roots(const Poly& p) {
  const int n = static_cast<int>(p.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[i] / p[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> roots;
  for (int i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

struct Cluster {
  cplx centre;
  int size = 0;
};

// Multiple roots come back from the eigenvalue solver as a small cloud.
std::vector<Cluster> cluster_roots(const std::vector<cplx>& roots) {
  std::vector<Cluster> clusters;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    cplx sum = roots[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - roots[i]) <= 1e-4 * (1.0 + std::abs(roots[i]))) {
        used[j] = true;
        sum += roots[j];
        ++count;
      }
    }
    clusters.push_back({sum / static_cast<double>(count), count});
  }
  return clusters;
}

int vanishing_order(const ComplexFunc& g, cplx at, int max_order) {
  std::vector<cplx> c;
  try {
    c = taylor_coefficients(g, at, max_order + 2);
  } catch (const Error&) {
    return 0;
  }
  double scale = 1.0;
  for (const auto& x : c) scale = std::max(scale, std::abs(x));
  int k = 0;
  while (k <= max_order && std::abs(c[k]) <= 1e-9 * scale) ++k;
  return std::min(k, max_order);
}

bool contains_exp(const ComplexFunc& f) {
  if (f.kind() == ComplexFunc::Kind::Exp) return true;
  for (const auto& op : f.operands())
    if (contains_exp(op)) return true;
  return false;
}

}  // namespace

std::optional<std::vector<cplx>> as_polynomial(const ComplexFunc& f) {
  using K = ComplexFunc::Kind;
  switch (f.kind()) {
    case K::Constant: return Poly{f.constant_value()};
    case K::Variable: return Poly{0.0, 1.0};
    case K::Sum: {
      Poly acc{0.0};
      for (const auto& t : f.operands()) {
        auto p = as_polynomial(t);
        if (!p) return std::nullopt;
        acc = poly_add(acc, *p);
      }
      return acc;
    }
    case K::Product: {
      Poly acc{1.0};
      for (const auto& t : f.operands()) {
        auto p = as_polynomial(t);
        if (!p) return std::nullopt;
        acc = poly_mul(acc, *p);
      }
      return acc;
    }
    case K::Quotient: {
      auto a = as_polynomial(f.operands()[0]);
      auto b = as_polynomial(f.operands()[1]);
      if (!a || !b) return std::nullopt;
      return poly_divide_exact(*a, *b);
    }
    case K::Power: {
      if (f.exponent() < 0) return std::nullopt;
      auto b = as_polynomial(f.operands()[0]);
      if (!b) return std::nullopt;
      Poly acc{1.0};
      for (int k = 0; k < f.exponent(); ++k) acc = poly_mul(acc, *b);
      return acc;
    }
    case K::Exp: return std::nullopt;
    case K::Polynomial: {
      auto u = as_polynomial(f.operands()[0]);
      if (!u) return std::nullopt;
      Poly acc{0.0};
      const auto c = f.coefficients();
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = poly_add(poly_mul(acc, *u), Poly{*it});
      return acc;
    }
  }
  return std::nullopt;
}

bool is_transcendental(const ComplexFunc& f) { return contains_exp(f); }

bool MeromorphicSplit::entire() const {
  if (denominator.is_constant()) return true;
  auto p = as_polynomial(denominator);
  if (!p) return false;
  int cancelled_total = 0;
  for (const auto& c : cancelled) cancelled_total += c.multiplicity;
  return cancelled_total == static_cast<int>(p->size()) - 1;
}

int MeromorphicSplit::cancelled_within(double r) const {
  int n = 0;
  for (const auto& c : cancelled)
    if (std::abs(c.location) < r) n += c.multiplicity;
  return n;
}

MeromorphicSplit split(const ComplexFunc& f) {
  Raw raw = raw_split(f);
  MeromorphicSplit out{raw.g, raw.h, {}};
  if (raw.h.is_constant()) return out;
  auto hp = as_polynomial(raw.h);
  if (!hp || hp->size() < 2) return out;
  if (auto gp = as_polynomial(raw.g)) {
    // Rational: exact division when it goes through keeps things simple.
    if (auto q = poly_divide_exact(*gp, *hp)) {
      out.numerator = ComplexFunc::polynomial(*q);
      out.denominator = ComplexFunc::constant(1.0);
      return out;
    }
  }
  for (const auto& cl : cluster_roots(polynomial_roots(*hp))) {
    const int k = vanishing_order(raw.g, cl.centre, cl.size);
    if (k > 0) out.cancelled.push_back({cl.centre, k});
  }
  return out;
}

bool is_entire(const ComplexFunc& f) { return split(f).entire(); }

std::optional<std::vector<cplx>> poles(const ComplexFunc& f) {
  const MeromorphicSplit s = split(f);
  if (s.denominator.is_constant()) return std::vector<cplx>{};
  auto hp = as_polynomial(s.denominator);
  if (!hp) return std::nullopt;
  std::vector<cplx> out;
  for (const auto& cl : cluster_roots(polynomial_roots(*hp))) {
    int cancelled = 0;
    for (const auto& c : s.cancelled)
      if (std::abs(c.location - cl.centre) <= 1e-4 * (1.0 + std::abs(cl.centre))) cancelled += c.multiplicity;
    if (cancelled < cl.size) out.push_back(cl.centre);
  }
  return out;
}

SphericalDerivative::SphericalDerivative(const ComplexFunc& f)
    : f_(f),
      f_prime_(diff(f)),
      split_(split(f)),
      g_prime_(diff(split_.numerator)),
      h_prime_(diff(split_.denominator)) {}

double SphericalDerivative::log_at(cplx z) const {
  const LogComplex g = eval_log(split_.numerator, z);
  const LogComplex h = eval_log(split_.denominator, z);
  const double denom = log_add_exp(2.0 * g.logmod, 2.0 * h.logmod);
  if (denom == -kInf) {
    const LogComplex fv = eval_log(f_, z);
    const LogComplex fp = eval_log(f_prime_, z);
    return fp.logmod - log_add_exp(0.0, 2.0 * fv.logmod);
  }
  const LogComplex w = eval_log(g_prime_, z) * h - g * eval_log(h_prime_, z);
  return w.logmod - denom;
}

double spherical_deriv_log(const ComplexFunc& f, cplx z) { return SphericalDerivative(f).log_at(z); }

}  // namespace nevlab
