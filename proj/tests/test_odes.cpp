#include <algorithm>
#include <cmath>
#include <string>

#include <doctest.h>

#include "nevlab/errors.hpp"
#include "nevlab/odes.hpp"
#include "nevlab/parse.hpp"

using namespace nevlab;

namespace {

ComplexFunc P(const char* s) { return parse_expression(s); }

EquationFile load(const char* name) { return load_equation_file(std::string(NEVLAB_DATA_DIR) + "/" + name); }

const SolutionSpec& solution(const EquationFile& e, const std::string& name) {
  for (const auto& s : e.solutions)
    if (s.name == name) return s;
  FAIL("no solution " << name);
  throw 0;
}

const TheoremVerdict& verdict(const std::vector<TheoremVerdict>& v, const std::string& id) {
  for (const auto& t : v)
    if (t.theorem == id) return t;
  FAIL("no verdict " << id);
  throw 0;
}

bool has_note(const TheoremVerdict& v, const std::string& needle) {
  return std::any_of(v.notes.begin(), v.notes.end(),
                     [&](const std::string& n) { return n.find(needle) != std::string::npos; });
}

RadiusGrid standard_grid() { return RadiusGrid::geometric(1.0, 50.0, 80); }

}  // namespace

TEST_CASE("equation files parse") {
  const EquationFile frei = load("frei.ode");
  CHECK(frei.ode.order == 2);
  CHECK(frei.solutions.size() == 2);
  CHECK(frei.ode.entire_coefficients());
  CHECK(frei.ode.has_transcendental_coefficient());
  CHECK_FALSE(frei.ode.polynomial_coefficients());

  const EquationFile airy = load("airy.ode");
  REQUIRE(airy.solutions.size() == 1);
  CHECK_FALSE(airy.solutions[0].closed_form.has_value());
  CHECK(airy.solutions[0].jet == std::vector<cplx>{1.0, 0.0});
  CHECK(airy.ode.polynomial_coefficients());

  const EquationFile p = parse_equation("order: 2\nparam P: z^2 + 1\nA1: P exp(z) + P exp(-z) - 2\nA0: -2P exp(z)\n");
  CHECK(p.parameters.count("P") == 1);
  const cplx z{0.3, -0.7};
  const cplx a1 = eval_log(p.ode.A(1), z).to_complex();
  CHECK(std::abs(a1 - ((z * z + 1.0) * (std::exp(z) + std::exp(-z)) - 2.0)) < 1e-13);
}

TEST_CASE("equation parse errors carry line numbers") {
  try {
    parse_equation("order: 2\n# comment\nA1: exp(z\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_equation("A0: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_equation("order: 1\nA1: z\n"), ParseError);
  CHECK_THROWS_AS(parse_equation("order: 2\nA0: 1\njet f: 1 @ 0\n"), ParseError);
  try {
    parse_equation("order: 1\nA0: exp(1/z)\n");
    FAIL("expected a refusal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotMeromorphic);
  }
}

TEST_CASE("claimed solutions satisfy their equations") {
  const auto samples = disc_samples(1000, 10.0, 1);
  CHECK(samples.size() == 1000);
  for (const cplx z : samples) CHECK(std::abs(z) <= 10.0);

  const EquationFile frei = load("frei.ode");
  for (const auto& s : frei.solutions) {
    INFO(s.name);
    CHECK(residual(frei.ode, *s.closed_form, samples).max_relative <= 1e-10);
  }
  const EquationFile ex = load("example_p.ode");
  CHECK(residual(ex.ode, *ex.solutions[0].closed_form, samples).max_relative <= 1e-10);

  // the same f solves the equation for a non-constant P as well
  const EquationFile q = parse_equation("order: 2\nparam P: z^3 - 2i\nA1: P exp(z) + P exp(-z) - 2\nA0: -2P exp(z)\n");
  CHECK(residual(q.ode, P("exp(2z)+1"), samples).max_relative <= 1e-10);

  // a wrong claim is caught
  CHECK(residual(frei.ode, P("exp(z)"), samples).max_relative > 1e-3);
}

TEST_CASE("residual is subadditive over linear combinations") {
  const EquationFile frei = load("frei.ode");
  const auto samples = disc_samples(300, 8.0, 4);
  const ComplexFunc f1 = *solution(frei, "f1").closed_form, f2 = *solution(frei, "f2").closed_form;
  const double r1 = residual(frei.ode, f1, samples).max_relative;
  const double r2 = residual(frei.ode, f2, samples).max_relative;
  for (const cplx ab : {cplx(2.0, -1.0), cplx(0.5, 3.0), cplx(-1.0, 0.0)}) {
    const ComplexFunc g = ab * f1 + ComplexFunc::constant(1.0 / ab) * f2;
    CHECK(residual(frei.ode, g, samples).max_relative <= r1 + r2 + 1e-12);
  }
}

TEST_CASE("ray integration against closed forms") {
  const LinearODE expo(1, {P("-1")});
  const std::vector<double> stops{1, 2, 5, 10, 20};
  const NumericSolution e = integrate_ray(expo, 0.0, std::vector<cplx>{1.0}, 0.0, 20.0, stops);
  REQUIRE(e.samples.size() == stops.size() + 1);
  CHECK(e.samples.front().s == 0.0);
  for (const auto& s : e.samples) CHECK(std::abs(s.f.logmod - s.s) <= 1e-9 * std::max(1.0, s.s));

  const EquationFile frei = load("frei.ode");
  const ComplexFunc f2 = *solution(frei, "f2").closed_form;
  const auto jet2 = jet_of(f2, 0.0, 2);
  const NumericSolution n2 = integrate_ray(frei.ode, 0.0, jet2, 0.0, 20.0, stops);
  for (const auto& s : n2.samples) CHECK(std::abs(s.f.logmod - (s.s + std::exp(-s.s))) <= 1e-8);

  // sin(is) = i sinh(s)
  const LinearODE sine(2, {P("1"), P("0")});
  const NumericSolution ns = integrate_ray(sine, 0.0, std::vector<cplx>{0.0, 1.0}, kPi / 2, 20.0, stops);
  for (const auto& s : ns.samples)
    if (s.s > 0.0) CHECK(std::abs(s.f.logmod - std::log(std::sinh(s.s))) <= 1e-9 * std::max(1.0, s.s));
  CHECK(std::abs(ns.samples.back().f.logmod - (20.0 - std::log(2.0))) < 1e-9);
}

TEST_CASE("closed forms match their own jets along several rays") {
  const EquationFile frei = load("frei.ode");
  const std::vector<double> stops{0.5, 1, 2, 4, 6, 8};
  struct Case {
    const char* name;
    std::vector<double> rays;
  };
  // rays on which the solution dominates the other base member
  for (const Case& c : {Case{"f1", {0.0, kPi / 2, -kPi / 2}}, Case{"f2", {0.0, kPi / 2, kPi}}}) {
    const ComplexFunc f = *solution(frei, c.name).closed_form;
    const auto jet = jet_of(f, 0.0, 2);
    for (double theta : c.rays) {
      INFO(c.name, " theta = ", theta);
      const NumericSolution n = integrate_ray(frei.ode, 0.0, jet, theta, stops.back(), stops);
      for (const auto& s : n.samples) {
        const double exact = eval_log(f, std::polar(s.s, theta)).logmod;
        CHECK(std::abs(s.f.logmod - exact) <= 1e-7 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("ray integration stops at coefficient poles") {
  const LinearODE pole(1, {P("1/(z-1)")});
  try {
    integrate_ray(pole, 0.0, std::vector<cplx>{1.0}, 0.0, 2.0);
    FAIL("expected a step underflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepUnderflow);
  }
}

TEST_CASE("growth condition index") {
  const RadiusGrid g = standard_grid().up_to(20.0);
  const TwoLM2Result tower = check_2LM2(LinearODE(2, {P("exp(exp(z))"), P("exp(z)")}), g);
  CHECK(tower.p == 0);
  CHECK(tower.tail_limsups[0] < 1e-3);

  const TwoLM2Result ordered = check_2LM2(LinearODE(2, {P("exp(z)"), P("exp(2z)")}), standard_grid());
  CHECK(ordered.p == 1);
  CHECK(ordered.tail_limsups[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(ordered.lower_ratio == doctest::Approx(0.5).epsilon(1e-6));

  try {
    check_2LM2(LinearODE(2, {P("z^2"), P("3z")}), standard_grid());
    FAIL("expected NoneSatisfied");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoneSatisfied);
  }
}

TEST_CASE("Wittich admissibility") {
  // rational coefficients, transcendental solution; 4 pi log r / r^2 falls below 0.05 only past r = 30
  const RadiusGrid g = RadiusGrid::geometric(1.0, 120.0, 40);
  const LinearODE gauss(2, {P("-(1+z^2)"), P("0")});
  CHECK(residual(gauss, P("exp(z^2/2)"), disc_samples(200, 5.0, 2)).max_relative <= 1e-10);
  CHECK(wittich_admissible(gauss, P("exp(z^2/2)"), g).verdict == Verdict::Supported);

  const RadiusGrid s = standard_grid();
  const EquationFile frei = load("frei.ode");
  CHECK(wittich_admissible(frei.ode, *solution(frei, "f1").closed_form, s).verdict == Verdict::Violated);
  const EquationFile ex = load("example_p.ode");
  const HypothesisReport rep = wittich_admissible(ex.ode, *ex.solutions[0].closed_form, s);
  CHECK(rep.verdict == Verdict::Violated);
  // T(r, A_j) and T(r, f) are both of size r
  for (const auto& c : rep.checks) CHECK(comparable(c.ratio).verdict == Verdict::Supported);
}

TEST_CASE("standardness verdicts") {
  const RadiusGrid g = standard_grid();
  SUBCASE("constant coefficients, f = exp(z)") {
    const EquationFile e = load("exponential.ode");
    const ExprSource f(*e.solutions[0].closed_form);
    const auto v = standardness_verdicts(e.ode, f, characteristic(*e.solutions[0].closed_form, g), {}, g);
    CHECK(v.size() == 9);
    const TheoremVerdict& c24 = verdict(v, "C2.4");
    CHECK(c24.verdict == Verdict::Supported);
    CHECK(c24.corroborated);
    for (const auto& d : c24.corroboration) CHECK(d.estimate <= 0.05);
    const TheoremVerdict& t22 = verdict(v, "T2.2");
    CHECK(t22.verdict == Verdict::Inconclusive);
    CHECK(has_note(t22, "MissingSolutionBase"));
  }
  SUBCASE("sin z: E-deviations vanish") {
    const EquationFile e = load("sine.ode");
    const ComplexFunc sinz = *solution(e, "s").closed_form;
    const ExprSource f(sinz);
    const auto v = standardness_verdicts(e.ode, f, characteristic(sinz, g), {}, g);
    const TheoremVerdict& t33 = verdict(v, "T3.3");
    CHECK(t33.verdict == Verdict::Supported);
    CHECK(t33.corroborated);
    REQUIRE(t33.corroboration.size() == 3);
    for (const auto& d : t33.corroboration) CHECK(d.estimate <= 0.05);
  }
  SUBCASE("Frei f1 with its base") {
    const EquationFile e = load("frei.ode");
    const ExprSource f1(*solution(e, "f1").closed_form), f2(*solution(e, "f2").closed_form);
    const FunctionSource* base[] = {&f1, &f2};
    const RadiusGrid h = RadiusGrid::geometric(1.0, 30.0, 120);
    const auto v = standardness_verdicts(e.ode, f1, characteristic(*solution(e, "f1").closed_form, h), base, h);
    CHECK(verdict(v, "T2.2").verdict == Verdict::Violated);
    CHECK(verdict(v, "T1.1").verdict == Verdict::Violated);
    CHECK(verdict(v, "C2.4").verdict == Verdict::Violated);
  }
}

TEST_CASE("verdicts do not flip from supported to violated under refinement") {
  const EquationFile e = load("sine.ode");
  const ComplexFunc sinz = *solution(e, "s").closed_form;
  const ExprSource f(sinz);
  const RadiusGrid g = RadiusGrid::geometric(1.0, 50.0, 60);
  const auto a = standardness_verdicts(e.ode, f, characteristic(sinz, g), {}, g);
  const auto b = standardness_verdicts(e.ode, f, characteristic(sinz, g.refined()), {}, g.refined());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    INFO(a[i].theorem);
    if (a[i].verdict == Verdict::Supported) CHECK(b[i].verdict != Verdict::Violated);
  }
}

TEST_CASE("coefficient bound") {
  const RadiusGrid g = standard_grid();
  const EquationFile e = load("exponential.ode");
  const ExprSource f(*e.solutions[0].closed_form);
  const FunctionSource* base[] = {&f};
  CHECK(check_coefficient_bound(base, e.ode, g).verdict == Verdict::Supported);

  const EquationFile frei = load("frei.ode");
  const ExprSource f1(*solution(frei, "f1").closed_form), f2(*solution(frei, "f2").closed_form);
  const FunctionSource* fb[] = {&f1, &f2};
  const RadiusGrid h = RadiusGrid::geometric(1.0, 30.0, 120);
  const HypothesisReport rep = check_coefficient_bound(fb, frei.ode, h);
  CHECK(rep.verdict == Verdict::Supported);
}

TEST_CASE("growth link count on a numerically integrated base") {
  // Frei: log M(A1) = r dominates log M(A0) = 0, so p = 1 and at least one base member links
  const EquationFile frei = load("frei.ode");
  const RadiusGrid g = RadiusGrid::geometric(2.0, 12.0, 120);
  std::vector<double> radii(g.begin(), g.end());
  const NumericField n1(frei.ode, jet_of(*solution(frei, "f1").closed_form, 0.0, 2), radii, 128, {}, "f1");
  const NumericField n2(frei.ode, jet_of(*solution(frei, "f2").closed_form, 0.0, 2), radii, 128, {}, "f2");
  const FunctionSource* base[] = {&n1, &n2};
  const GrowthLinkReport rep = growth_link_count(frei.ode, base, g);
  CHECK(rep.p == 1);
  CHECK(rep.required == 1);
  CHECK(rep.count >= rep.required);
  CHECK(rep.pass);
  CHECK(rep.constants[1] > 0.5);
}
