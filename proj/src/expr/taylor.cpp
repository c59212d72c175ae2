#include <algorithm>
#include <cmath>

#include "nevlab/errors.hpp"
#include "nevlab/expr.hpp"

namespace nevlab {

namespace {

using Series = std::vector<cplx>;

Series mul(const Series& a, const Series& b, int order) {
  Series out(order + 1, cplx{0.0, 0.0});
  for (int i = 0; i <= order; ++i) {
    if (a[i] == cplx{0.0, 0.0}) continue;
    for (int j = 0; i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// a / b assuming b[0] != 0.
Series div(const Series& a, const Series& b, int order) {
  Series q(order + 1, cplx{0.0, 0.0});
  for (int k = 0; k <= order; ++k) {
    cplx s = a[k];
    for (int j = 1; j <= k; ++j) s -= b[j] * q[k - j];
    q[k] = s / b[0];
  }
  return q;
}

Series pow_series(Series base, int n, int order) {
  Series result(order + 1, cplx{0.0, 0.0});
  result[0] = 1.0;
  while (n) {
    if (n & 1) result = mul(result, base, order);
    base = mul(base, base, order);
    n >>= 1;
  }
  return result;
}

double scale_of(const Series& s) {
  double m = 0.0;
  for (const auto& c : s) m = std::max(m, std::abs(c));
  return m;
}

// Leading zero coefficients, relative to the largest one.
int leading_zeros(const Series& s) {
  const double sc = scale_of(s);
  if (sc == 0.0) return static_cast<int>(s.size());
  int k = 0;
  while (k < static_cast<int>(s.size()) && std::abs(s[k]) <= 1e-13 * sc) ++k;
  return k;
}

Series series(const ComplexFunc& f, cplx z0, int order);

Series quotient_series(const ComplexFunc& num, const ComplexFunc& den, cplx z0, int order) {
  Series b = series(den, z0, order);
  if (b[0] != cplx{0.0, 0.0} && std::abs(b[0]) > 1e-13 * scale_of(b)) {
    return div(series(num, z0, order), b, order);
  }
  // Zero of the denominator at z0: it must be matched by the numerator.
  constexpr int kMaxShift = 10;
  b = series(den, z0, order + kMaxShift);
  const int k = leading_zeros(b);
  if (k > kMaxShift) throw Error(ErrorCode::Undefined, "denominator vanishes to high order");
  Series a = series(num, z0, order + kMaxShift);
  const double sa = std::max(1.0, scale_of(a));
  for (int j = 0; j < k; ++j)
    if (std::abs(a[j]) > 1e-11 * sa) throw Error(ErrorCode::PoleHit, "pole at Taylor centre");
  Series as(a.begin() + k, a.begin() + k + order + 1);
  Series bs(b.begin() + k, b.begin() + k + order + 1);
  return div(as, bs, order);
}

Series series(const ComplexFunc& f, cplx z0, int order) {
  using K = ComplexFunc::Kind;
  Series out(order + 1, cplx{0.0, 0.0});
  switch (f.kind()) {
    case K::Constant: out[0] = f.constant_value(); return out;
    case K::Variable:
      out[0] = z0;
      if (order >= 1) out[1] = 1.0;
      return out;
    case K::Sum:
      for (const auto& t : f.operands()) {
        const Series s = series(t, z0, order);
        for (int k = 0; k <= order; ++k) out[k] += s[k];
      }
      return out;
    case K::Product: {
      out[0] = 1.0;
      for (const auto& t : f.operands()) out = mul(out, series(t, z0, order), order);
      return out;
    }
    case K::Quotient: return quotient_series(f.operands()[0], f.operands()[1], z0, order);
    case K::Power: {
      const int n = f.exponent();
      const auto& base = f.operands()[0];
      if (n > 0) return pow_series(series(base, z0, order), n, order);
      Series one(order + 1, cplx{0.0, 0.0});
      one[0] = 1.0;
      Series b = pow_series(series(base, z0, order), -n, order);
      if (b[0] == cplx{0.0, 0.0}) throw Error(ErrorCode::PoleHit, "pole at Taylor centre");
      return div(one, b, order);
    }
    case K::Exp: {
      const Series u = series(f.operands()[0], z0, order);
      out[0] = std::exp(u[0]);
      for (int k = 1; k <= order; ++k) {
        cplx s{0.0, 0.0};
        for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * u[j] * out[k - j];
        out[k] = s / static_cast<double>(k);
      }
      return out;
    }
    case K::Polynomial: {
      const Series u = series(f.operands()[0], z0, order);
      const auto c = f.coefficients();
      for (auto it = c.rbegin(); it != c.rend(); ++it) {
        out = mul(out, u, order);
        out[0] += *it;
      }
      return out;
    }
  }
  return out;
}

}  // namespace

std::vector<cplx> taylor_coefficients(const ComplexFunc& f, cplx z0, int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative Taylor order");
  Series s = series(f, z0, order);
  for (const auto& c : s)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorCode::Undefined, "Taylor coefficient overflow");
  return s;
}

}  // namespace nevlab
