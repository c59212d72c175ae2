#include "nevlab/expr.hpp"

namespace nevlab {

ComplexFunc diff(const ComplexFunc& f) {
  using K = ComplexFunc::Kind;
  switch (f.kind()) {
    case K::Constant: return ComplexFunc::constant(0.0);
    case K::Variable: return ComplexFunc::constant(1.0);
    case K::Sum: {
      std::vector<ComplexFunc> terms;
      for (const auto& t : f.operands()) terms.push_back(diff(t));
      return ComplexFunc::sum(std::move(terms));
    }
    case K::Product: {
      const auto ops = f.operands();
      std::vector<ComplexFunc> terms;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        ComplexFunc d = diff(ops[i]);
        if (d.as_constant() == cplx{0.0, 0.0}) continue;
        std::vector<ComplexFunc> factors;
        for (std::size_t j = 0; j < ops.size(); ++j) factors.push_back(j == i ? d : ops[j]);
        terms.push_back(ComplexFunc::product(std::move(factors)));
      }
      return ComplexFunc::sum(std::move(terms));
    }
    case K::Quotient: {
      const auto& u = f.operands()[0];
      const auto& v = f.operands()[1];
      return (diff(u) * v - u * diff(v)) / ComplexFunc::power(v, 2);
    }
    case K::Power: {
      const auto& u = f.operands()[0];
      const int n = f.exponent();
      return ComplexFunc::product(
          {ComplexFunc::constant(static_cast<double>(n)), ComplexFunc::power(u, n - 1), diff(u)});
    }
    case K::Exp: return f * diff(f.operands()[0]);
    case K::Polynomial: {
      const auto c = f.coefficients();
      std::vector<cplx> dc;
      for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(static_cast<double>(k) * c[k]);
      return ComplexFunc::polynomial(std::move(dc), f.operands()[0]) * diff(f.operands()[0]);
    }
  }
  return ComplexFunc::constant(0.0);
}

ComplexFunc diff(const ComplexFunc& f, int order) {
  ComplexFunc out = f;
  for (int k = 0; k < order; ++k) out = diff(out);
  return out;
}

ComplexFunc log_derivative(const ComplexFunc& f) {
  using K = ComplexFunc::Kind;
  switch (f.kind()) {
    case K::Constant: return ComplexFunc::constant(0.0);
    case K::Variable: return ComplexFunc::quotient(ComplexFunc::constant(1.0), f);
    case K::Product: {
      std::vector<ComplexFunc> terms;
      for (const auto& t : f.operands()) terms.push_back(log_derivative(t));
      return ComplexFunc::sum(std::move(terms));
    }
    case K::Power:
      return ComplexFunc::constant(static_cast<double>(f.exponent())) * log_derivative(f.operands()[0]);
    case K::Exp: return diff(f.operands()[0]);
    case K::Quotient: return log_derivative(f.operands()[0]) - log_derivative(f.operands()[1]);
    case K::Sum:
    case K::Polynomial: return ComplexFunc::quotient(diff(f), f);
  }
  return ComplexFunc::quotient(diff(f), f);
}

}  // namespace nevlab
