#pragma once

#include <map>
#include <string>
#include <string_view>

#include "nevlab/expr.hpp"

namespace nevlab {

struct ParseOptions {
  std::string variable = "z";
  /// Named subexpressions, e.g. a polynomial parameter P.
  std::map<std::string, ComplexFunc, std::less<>> bindings;
};

/// Infix grammar: + - * / ^ (integer exponents, also z^{-1} and z^(-1)),
/// unary minus, implicit products such as 2z or 3exp(z), literals 2.5, 3i,
/// the constants pi, e, i, and the functions exp, sin, cos, sinh, cosh.
/// Throws ParseError with the offending character offset, or NotMeromorphic
/// for exp of an argument with a pole.
ComplexFunc parse_expression(std::string_view text, const ParseOptions& options = {});

}  // namespace nevlab
