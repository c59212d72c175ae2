#include <algorithm>
#include <cmath>

#include "nevlab/errors.hpp"
#include "nevlab/expr.hpp"

namespace nevlab {

namespace {

// Values are kept as ordinary complex numbers while their modulus is
// comfortably inside double range; this keeps cancellations such as
// z - 1 at z = 1 exact. Anything larger or smaller moves to log form.
constexpr double kDirectLogBound = 600.0;

struct Value {
  bool log_form = false;
  cplx direct{0.0, 0.0};
  LogComplex log;

  static Value of(cplx w) {
    Value v;
    const double m = std::abs(w);
    if (std::isfinite(m) && (m == 0.0 || std::abs(std::log(m)) < kDirectLogBound)) {
      v.direct = w;
    } else if (std::isfinite(m)) {
      v.log_form = true;
      v.log = LogComplex::from(w);
    } else {
      throw Error(ErrorCode::Undefined, "non-finite intermediate value");
    }
    return v;
  }

  static Value of(LogComplex l) {
    if (l.is_zero() || std::abs(l.logmod) < kDirectLogBound) return of(l.to_complex());
    Value v;
    v.log_form = true;
    v.log = l;
    return v;
  }

  LogComplex as_log() const { return log_form ? log : LogComplex::from(direct); }
  bool is_zero() const { return log_form ? log.is_zero() : direct == cplx{0.0, 0.0}; }
};

bool finite(cplx w) { return std::isfinite(w.real()) && std::isfinite(w.imag()); }

cplx int_power(cplx base, int n) {
  cplx result{1.0, 0.0};
  unsigned e = static_cast<unsigned>(n < 0 ? -n : n);
  while (e) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return n < 0 ? 1.0 / result : result;
}

Value eval_value(const ComplexFunc& f, cplx z);

// 0/0 at z: take the first nonvanishing Taylor coefficient of the denominator.
Value removable_quotient(const ComplexFunc& num, const ComplexFunc& den, cplx z) {
  constexpr int kMaxOrder = 10;
  const auto a = taylor_coefficients(num, z, kMaxOrder);
  const auto b = taylor_coefficients(den, z, kMaxOrder);
  double scale_a = 0.0, scale_b = 0.0;
  for (int k = 0; k <= kMaxOrder; ++k) {
    scale_a = std::max(scale_a, std::abs(a[k]));
    scale_b = std::max(scale_b, std::abs(b[k]));
  }
  if (scale_b == 0.0) throw Error(ErrorCode::Undefined, "denominator vanishes identically");
  for (int k = 0; k <= kMaxOrder; ++k) {
    if (std::abs(b[k]) > 1e-13 * scale_b) return Value::of(a[k] / b[k]);
    if (std::abs(a[k]) > 1e-11 * std::max(1.0, scale_a))
      throw Error(ErrorCode::PoleHit, "pole at z = (" + std::to_string(z.real()) + ", " +
                                          std::to_string(z.imag()) + ")");
  }
  throw Error(ErrorCode::Undefined, "zero of denominator has order above 10");
}

Value eval_value(const ComplexFunc& f, cplx z) {
  using K = ComplexFunc::Kind;
  switch (f.kind()) {
    case K::Constant: return Value::of(f.constant_value());
    case K::Variable: return Value::of(z);
    case K::Sum: {
      std::vector<Value> vals;
      vals.reserve(f.operands().size());
      bool all_direct = true;
      for (const auto& t : f.operands()) {
        vals.push_back(eval_value(t, z));
        all_direct = all_direct && !vals.back().log_form;
      }
      if (all_direct) {
        cplx s{0.0, 0.0};
        for (const auto& v : vals) s += v.direct;
        if (finite(s)) return Value::of(s);
      }
      std::vector<LogComplex> logs;
      logs.reserve(vals.size());
      for (const auto& v : vals) logs.push_back(v.as_log());
      return Value::of(log_sum(logs));
    }
    case K::Product: {
      std::vector<Value> vals;
      bool all_direct = true;
      for (const auto& t : f.operands()) {
        vals.push_back(eval_value(t, z));
        if (vals.back().is_zero()) return Value::of(cplx{0.0, 0.0});
        all_direct = all_direct && !vals.back().log_form;
      }
      if (all_direct) {
        cplx p{1.0, 0.0};
        for (const auto& v : vals) p *= v.direct;
        if (finite(p) && p != cplx{0.0, 0.0}) return Value::of(p);
      }
      LogComplex acc = LogComplex::one();
      for (const auto& v : vals) acc = acc * v.as_log();
      return Value::of(acc);
    }
    case K::Quotient: {
      const auto& num = f.operands()[0];
      const auto& den = f.operands()[1];
      Value d = eval_value(den, z);
      if (d.is_zero()) return removable_quotient(num, den, z);
      Value n = eval_value(num, z);
      if (!n.log_form && !d.log_form) {
        cplx q = n.direct / d.direct;
        if (finite(q) && (q != cplx{0.0, 0.0} || n.is_zero())) return Value::of(q);
      }
      return Value::of(n.as_log() / d.as_log());
    }
    case K::Power: {
      Value b = eval_value(f.operands()[0], z);
      const int n = f.exponent();
      if (b.is_zero()) {
        if (n < 0) throw Error(ErrorCode::PoleHit, "negative power of zero");
        return Value::of(cplx{0.0, 0.0});
      }
      if (!b.log_form) {
        cplx p = int_power(b.direct, n);
        if (finite(p) && p != cplx{0.0, 0.0}) return Value::of(p);
      }
      return Value::of(b.as_log().pow(n));
    }
    case K::Exp: {
      Value inner = eval_value(f.operands()[0], z);
      if (inner.log_form && inner.log.logmod > 700.0)
        throw Error(ErrorCode::Undefined, "exp argument exceeds double range");
      const cplx w = inner.log_form ? inner.log.to_complex() : inner.direct;
      if (std::abs(w.real()) < kDirectLogBound) return Value::of(std::exp(w));
      return Value::of(LogComplex::exp_of(w));
    }
    case K::Polynomial: {
      Value u = eval_value(f.operands()[0], z);
      const auto c = f.coefficients();
      if (!u.log_form) {
        cplx acc{0.0, 0.0};
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u.direct + *it;
        if (finite(acc)) return Value::of(acc);
      }
      const LogComplex lu = u.as_log();
      LogComplex acc = LogComplex::zero();
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * lu + LogComplex::from(*it);
      return Value::of(acc);
    }
  }
  throw Error(ErrorCode::Undefined, "unknown node");
}

}  // namespace

LogComplex eval_log(const ComplexFunc& f, cplx z) {
  if (!finite(z)) throw Error(ErrorCode::InvalidArgument, "evaluation point is not finite");
  return eval_value(f, z).as_log();
}

}  // namespace nevlab
