#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "nevlab/errors.hpp"
#include "nevlab/expr.hpp"

namespace nevlab {

struct ComplexFunc::Node {
  Kind kind = Kind::Constant;
  cplx value{0.0, 0.0};
  int exponent = 0;
  std::vector<ComplexFunc> operands;
  std::vector<cplx> coefficients;
};

namespace {

bool is_zero_constant(const ComplexFunc& f) {
  auto c = f.as_constant();
  return c && *c == cplx{0.0, 0.0};
}

bool is_one_constant(const ComplexFunc& f) {
  auto c = f.as_constant();
  return c && *c == cplx{1.0, 0.0};
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string format_constant(cplx c) {
  if (c.imag() == 0.0) {
    auto s = format_real(c.real());
    return c.real() < 0.0 ? "(" + s + ")" : s;
  }
  if (c.real() == 0.0) return "(" + format_real(c.imag()) + "i)";
  std::string im = format_real(std::abs(c.imag()));
  return "(" + format_real(c.real()) + (c.imag() < 0.0 ? "-" : "+") + im + "i)";
}

bool needs_parens(const ComplexFunc& f) {
  using K = ComplexFunc::Kind;
  return f.kind() == K::Sum || f.kind() == K::Polynomial || f.kind() == K::Quotient ||
         f.kind() == K::Product;
}

std::string wrapped(const ComplexFunc& f) {
  return needs_parens(f) ? "(" + f.to_string() + ")" : f.to_string();
}

}  // namespace

ComplexFunc::ComplexFunc() : node_(std::make_shared<Node>()) {}

ComplexFunc::ComplexFunc(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

ComplexFunc ComplexFunc::constant(cplx c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    throw Error(ErrorCode::Undefined, "non-finite constant");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = c;
  return ComplexFunc(std::move(n));
}

ComplexFunc ComplexFunc::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  return ComplexFunc(std::move(n));
}

ComplexFunc ComplexFunc::sum(std::vector<ComplexFunc> terms) {
  std::vector<ComplexFunc> flat;
  cplx folded{0.0, 0.0};
  for (auto& t : terms) {
    if (t.kind() == Kind::Sum) {
      for (const auto& inner : t.operands()) {
        if (auto c = inner.as_constant()) folded += *c;
        else flat.push_back(inner);
      }
    } else if (auto c = t.as_constant()) {
      folded += *c;
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (folded != cplx{0.0, 0.0}) flat.push_back(constant(folded));
  if (flat.empty()) return constant(0.0);
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->operands = std::move(flat);
  return ComplexFunc(std::move(n));
}

ComplexFunc ComplexFunc::product(std::vector<ComplexFunc> factors) {
  std::vector<ComplexFunc> flat;
  cplx folded{1.0, 0.0};
  for (auto& f : factors) {
    if (f.kind() == Kind::Product) {
      for (const auto& inner : f.operands()) {
        if (auto c = inner.as_constant()) folded *= *c;
        else flat.push_back(inner);
      }
    } else if (auto c = f.as_constant()) {
      folded *= *c;
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (folded == cplx{0.0, 0.0}) return constant(0.0);
  if (flat.empty()) return constant(folded);
  if (folded != cplx{1.0, 0.0}) flat.insert(flat.begin(), constant(folded));
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->operands = std::move(flat);
  return ComplexFunc(std::move(n));
}

ComplexFunc ComplexFunc::quotient(ComplexFunc numerator, ComplexFunc denominator) {
  if (auto d = denominator.as_constant()) {
    if (*d == cplx{0.0, 0.0}) throw Error(ErrorCode::Undefined, "division by the constant 0");
    return product({constant(1.0 / *d), std::move(numerator)});
  }
  if (is_zero_constant(numerator)) return constant(0.0);
  if (numerator.node_ == denominator.node_) return constant(1.0);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Quotient;
  n->operands = {std::move(numerator), std::move(denominator)};
  return ComplexFunc(std::move(n));
}

ComplexFunc ComplexFunc::power(ComplexFunc base, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return base;
  if (auto c = base.as_constant()) {
    if (*c == cplx{0.0, 0.0} && exponent < 0)
      throw Error(ErrorCode::Undefined, "negative power of the constant 0");
    return constant(std::pow(*c, exponent));
  }
  if (base.kind() == Kind::Power) return power(base.operands()[0], base.exponent() * exponent);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->exponent = exponent;
  n->operands = {std::move(base)};
  return ComplexFunc(std::move(n));
}

ComplexFunc ComplexFunc::exp(ComplexFunc argument) {
  if (auto c = argument.as_constant()) return constant(std::exp(*c));
  if (!is_entire(argument))
    throw Error(ErrorCode::NotMeromorphic,
                "exp(" + argument.to_string() + ") has an essential singularity");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exp;
  n->operands = {std::move(argument)};
  return ComplexFunc(std::move(n));
}

ComplexFunc ComplexFunc::polynomial(std::vector<cplx> coefficients, ComplexFunc inner) {
  while (!coefficients.empty() && coefficients.back() == cplx{0.0, 0.0}) coefficients.pop_back();
  if (coefficients.empty()) return constant(0.0);
  if (coefficients.size() == 1) return constant(coefficients.front());
  if (auto c = inner.as_constant()) {
    cplx acc{0.0, 0.0};
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * *c + *it;
    return constant(acc);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Polynomial;
  n->coefficients = std::move(coefficients);
  n->operands = {std::move(inner)};
  return ComplexFunc(std::move(n));
}

ComplexFunc::Kind ComplexFunc::kind() const { return node_->kind; }

std::optional<cplx> ComplexFunc::as_constant() const {
  if (node_->kind == Kind::Constant) return node_->value;
  return std::nullopt;
}

cplx ComplexFunc::constant_value() const { return node_->value; }
int ComplexFunc::exponent() const { return node_->exponent; }
std::span<const ComplexFunc> ComplexFunc::operands() const { return node_->operands; }
std::span<const cplx> ComplexFunc::coefficients() const { return node_->coefficients; }

std::string ComplexFunc::to_string() const {
  switch (kind()) {
    case Kind::Constant: return format_constant(node_->value);
    case Kind::Variable: return "z";
    case Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < operands().size(); ++i) {
        if (i) out += " + ";
        out += operands()[i].kind() == Kind::Sum ? wrapped(operands()[i]) : operands()[i].to_string();
      }
      return out;
    }
    case Kind::Product: {
      std::string out;
      for (std::size_t i = 0; i < operands().size(); ++i) {
        if (i) out += "*";
        out += wrapped(operands()[i]);
      }
      return out;
    }
    case Kind::Quotient:
      return wrapped(operands()[0]) + "/" + "(" + operands()[1].to_string() + ")";
    case Kind::Power: {
      const auto& b = operands()[0];
      std::string base = b.kind() == Kind::Variable || b.kind() == Kind::Exp ? b.to_string()
                                                                               : "(" + b.to_string() + ")";
      return base + "^" + (exponent() < 0 ? "(" + std::to_string(exponent()) + ")"
                                          : std::to_string(exponent()));
    }
    case Kind::Exp: return "exp(" + operands()[0].to_string() + ")";
    case Kind::Polynomial: {
      std::string inner = "(" + operands()[0].to_string() + ")";
      std::string out;
      for (std::size_t k = 0; k < coefficients().size(); ++k) {
        if (coefficients()[k] == cplx{0.0, 0.0}) continue;
        if (!out.empty()) out += " + ";
        out += format_constant(coefficients()[k]);
        if (k >= 1) out += "*" + inner;
        if (k >= 2) out += "^" + std::to_string(k);
      }
      return out;
    }
  }
  return "?";
}

ComplexFunc operator+(const ComplexFunc& a, const ComplexFunc& b) { return ComplexFunc::sum({a, b}); }

ComplexFunc operator-(const ComplexFunc& a, const ComplexFunc& b) {
  if (is_zero_constant(b)) return a;
  return ComplexFunc::sum({a, -b});
}

ComplexFunc operator*(const ComplexFunc& a, const ComplexFunc& b) {
  if (is_one_constant(a)) return b;
  if (is_one_constant(b)) return a;
  return ComplexFunc::product({a, b});
}

ComplexFunc operator/(const ComplexFunc& a, const ComplexFunc& b) { return ComplexFunc::quotient(a, b); }

ComplexFunc operator-(const ComplexFunc& a) {
  return ComplexFunc::product({ComplexFunc::constant(-1.0), a});
}

ComplexFunc operator+(const ComplexFunc& a, cplx b) { return a + ComplexFunc::constant(b); }

ComplexFunc operator*(cplx a, const ComplexFunc& b) { return ComplexFunc::constant(a) * b; }

}  // namespace nevlab
