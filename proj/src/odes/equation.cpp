#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "nevlab/errors.hpp"
#include "nevlab/odes.hpp"
#include "nevlab/parse.hpp"

namespace nevlab {

LinearODE::LinearODE(int n, std::vector<ComplexFunc> a) : order(n), coefficients(std::move(a)) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "equation order must be at least 1");
  if (static_cast<int>(coefficients.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(n) + " coefficients");
}

bool LinearODE::entire_coefficients() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const ComplexFunc& a) { return is_entire(a); });
}

bool LinearODE::polynomial_coefficients() const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [](const ComplexFunc& a) { return as_polynomial(a).has_value() && is_entire(a); });
}

bool LinearODE::constant_coefficients() const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [](const ComplexFunc& a) { return a.as_constant().has_value(); });
}

bool LinearODE::has_transcendental_coefficient() const {
  return std::any_of(coefficients.begin(), coefficients.end(),
                     [](const ComplexFunc& a) { return is_transcendental(a); });
}

std::string LinearODE::to_string() const {
  std::string s = "f^(" + std::to_string(order) + ")";
  for (int j = order - 1; j >= 0; --j) {
    if (auto c = A(j).as_constant(); c && *c == cplx{0.0, 0.0}) continue;
    s += " + (" + A(j).to_string() + ") f^(" + std::to_string(j) + ")";
  }
  return s + " = 0";
}

std::vector<cplx> jet_of(const ComplexFunc& f, cplx z0, int order) {
  std::vector<cplx> c = taylor_coefficients(f, z0, std::max(0, order - 1));
  double factorial = 1.0;
  for (int k = 0; k < order; ++k) {
    if (k > 0) factorial *= k;
    c[k] *= factorial;
  }
  c.resize(order);
  return c;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Line {
  std::size_t number;
  std::size_t offset;  // of the value part within the whole text
  std::string key;     // first word of the key
  std::string name;    // optional second word
  std::string_view value;
};

[[noreturn]] void fail(const Line& l, std::size_t pos, const std::string& msg) {
  throw ParseError(l.offset + pos, "line " + std::to_string(l.number) + ": " + msg);
}

ComplexFunc parse_value(const Line& l, std::string_view text, std::size_t base, const ParseOptions& opt) {
  try {
    return parse_expression(text, opt);
  } catch (const ParseError& e) {
    std::string what = e.what();
    what = what.substr(what.find(':') + 2);
    what = what.substr(0, what.rfind(" at position "));
    fail(l, base + e.position(), what);
  }
}

cplx parse_constant(const Line& l, std::string_view text, std::size_t base, const ParseOptions& opt) {
  const ComplexFunc f = parse_value(l, trim(text), base, opt);
  const auto c = f.as_constant();
  if (!c) fail(l, base, "jet values must be constants");
  return *c;
}

SolutionSpec& solution_named(EquationFile& eq, const std::string& name, bool for_jet) {
  if (!name.empty()) {
    for (auto& s : eq.solutions)
      if (s.name == name) return s;
  } else if (for_jet && !eq.solutions.empty() && eq.solutions.back().jet.empty()) {
    return eq.solutions.back();
  }
  SolutionSpec s;
  s.name = name.empty() ? "f" + std::to_string(eq.solutions.size() + 1) : name;
  eq.solutions.push_back(std::move(s));
  return eq.solutions.back();
}

}  // namespace

EquationFile parse_equation(std::string_view text) {
  std::vector<Line> lines;
  std::size_t start = 0, number = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!trim(raw).empty()) {
      const auto colon = raw.find(':');
      Line l{number, start, {}, {}, {}};
      if (colon == std::string_view::npos) fail(l, 0, "expected 'key: value'");
      std::istringstream words{std::string(trim(raw.substr(0, colon)))};
      words >> l.key >> l.name;
      std::string extra;
      if (words >> extra) fail(l, 0, "unexpected text before ':'");
      l.offset = start + colon + 1;
      l.value = raw.substr(colon + 1);
      lines.push_back(l);
    }
    if (end == text.size()) break;
    start = end + 1;
  }

  EquationFile eq;
  ParseOptions opt;
  // Parameters first, in order, so coefficients may use them wherever they appear.
  for (const auto& l : lines) {
    if (l.key != "param") continue;
    if (l.name.empty()) fail(l, 0, "param needs a name");
    opt.bindings[l.name] = parse_value(l, l.value, 0, opt);
    eq.parameters[l.name] = opt.bindings[l.name];
  }

  int order = 0;
  std::map<int, ComplexFunc> coeffs;
  for (const auto& l : lines) {
    if (l.key == "param") continue;
    if (l.key == "order") {
      const std::string v(trim(l.value));
      char* end = nullptr;
      const long n = std::strtol(v.c_str(), &end, 10);
      if (v.empty() || *end != '\0' || n < 1 || n > 64) fail(l, 0, "order must be an integer in [1, 64]");
      order = static_cast<int>(n);
    } else if (l.key.size() > 1 && l.key[0] == 'A' &&
               std::all_of(l.key.begin() + 1, l.key.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      if (!l.name.empty()) fail(l, 0, "unexpected name after " + l.key);
      const int j = std::stoi(l.key.substr(1));
      if (coeffs.count(j)) fail(l, 0, "duplicate coefficient " + l.key);
      coeffs[j] = parse_value(l, l.value, 0, opt);
    } else if (l.key == "solution") {
      SolutionSpec& s = solution_named(eq, l.name, false);
      if (s.closed_form) fail(l, 0, "duplicate solution " + s.name);
      s.closed_form = parse_value(l, l.value, 0, opt);
    } else if (l.key == "jet") {
      SolutionSpec& s = solution_named(eq, l.name, true);
      if (!s.jet.empty()) fail(l, 0, "duplicate jet for " + s.name);
      std::string_view v = l.value;
      std::size_t base = 0;
      if (auto at = v.find('@'); at != std::string_view::npos) {
        s.anchor = parse_constant(l, v.substr(at + 1), at + 1, opt);
        v = v.substr(0, at);
      }
      std::size_t pos = 0;
      while (true) {
        const auto comma = v.find(',', pos);
        const auto piece = v.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        s.jet.push_back(parse_constant(l, piece, base + pos, opt));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    } else {
      fail(l, 0, "unknown key '" + l.key + "'");
    }
  }
  if (order == 0) throw ParseError(0, "missing 'order:' line");
  std::vector<ComplexFunc> a(order, ComplexFunc::constant(0.0));
  for (const auto& [j, f] : coeffs) {
    if (j >= order) throw ParseError(0, "coefficient A" + std::to_string(j) + " exceeds the order");
    a[j] = f;
  }
  eq.ode = LinearODE(order, std::move(a));
  for (auto& s : eq.solutions) {
    if (!s.jet.empty() && static_cast<int>(s.jet.size()) != order)
      throw ParseError(0, "jet of " + s.name + " has " + std::to_string(s.jet.size()) + " values, expected " +
                              std::to_string(order));
    if (s.jet.empty() && s.closed_form) s.jet = jet_of(*s.closed_form, s.anchor, order);
  }
  return eq;
}

EquationFile load_equation_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read equation file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_equation(ss.str());
}

}  // namespace nevlab
