#include "nevlab/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "nevlab/errors.hpp"

namespace nevlab {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), opt_(options) {}

  ComplexFunc parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError(pos_, "empty expression");
    ComplexFunc f = expression();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

 private:
  std::string_view text_;
  const ParseOptions& opt_;
  std::size_t pos_ = 0;

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) throw ParseError(pos_, std::string("expected '") + c + "' at end of input");
      throw ParseError(pos_, std::string("expected '") + c + "'");
    }
  }

  ComplexFunc expression() {
    ComplexFunc acc = term();
    while (true) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  bool starts_factor() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  ComplexFunc term() {
    ComplexFunc acc = unary();
    while (true) {
      if (accept('*')) acc = acc * unary();
      else if (accept('/')) {
        const std::size_t at = pos_;
        ComplexFunc d = unary();
        try {
          acc = acc / d;
        } catch (const Error& e) {
          if (e.code() == ErrorCode::Undefined) throw ParseError(at, "division by zero");
          throw;
        }
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  ComplexFunc unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  int integer_exponent() {
    skip_space();
    const char close = accept('(') ? ')' : accept('{') ? '}' : '\0';
    skip_space();
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(start, "exponent must be an integer");
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || value > 1000) throw ParseError(start, "exponent out of range");
    if (close) expect(close);
    return negative ? -value : value;
  }

  ComplexFunc power() {
    ComplexFunc base = primary();
    if (accept('^')) {
      const int n = integer_exponent();
      try {
        return ComplexFunc::power(base, n);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Undefined) throw ParseError(pos_, "negative power of zero");
        throw;
      }
    }
    return base;
  }

  ComplexFunc number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      // Only an exponent if digits follow; otherwise "2e" is 2 times e.
      std::size_t k = pos_ + 1;
      if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
      if (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) {
        pos_ = k;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) throw ParseError(start, "malformed number '" + token + "'");
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return ComplexFunc::constant(cplx{0.0, v});
    }
    return ComplexFunc::constant(v);
  }

  ComplexFunc call(const std::string& name, std::size_t at) {
    ComplexFunc arg = expression();
    expect(')');
    const cplx I{0.0, 1.0};
    if (name == "exp") return ComplexFunc::exp(arg);
    if (name == "sinh" || name == "cosh") {
      ComplexFunc a = ComplexFunc::exp(arg), b = ComplexFunc::exp(-arg);
      return cplx{0.5, 0.0} * (name == "sinh" ? a - b : a + b);
    }
    if (name == "sin" || name == "cos") {
      ComplexFunc a = ComplexFunc::exp(I * arg), b = ComplexFunc::exp(-I * arg);
      return name == "sin" ? cplx{0.0, -0.5} * (a - b) : cplx{0.5, 0.0} * (a + b);
    }
    throw ParseError(at, "unknown function '" + name + "'");
  }

  ComplexFunc primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ComplexFunc f = expression();
      expect(')');
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (accept('(')) return call(name, start);
      if (name == opt_.variable) return ComplexFunc::variable();
      if (auto it = opt_.bindings.find(name); it != opt_.bindings.end()) return it->second;
      if (name == "i") return ComplexFunc::constant(cplx{0.0, 1.0});
      if (name == "pi") return ComplexFunc::constant(kPi);
      if (name == "e") return ComplexFunc::constant(std::exp(1.0));
      throw ParseError(start, "unknown identifier '" + name + "'");
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }
};

}  // namespace

ComplexFunc parse_expression(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parse();
}

}  // namespace nevlab
