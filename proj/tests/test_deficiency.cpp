#include <algorithm>
#include <cmath>
#include <functional>

#include <doctest.h>

#include "nevlab/deficiency.hpp"
#include "nevlab/errors.hpp"
#include "nevlab/parse.hpp"

using namespace nevlab;

namespace {

ComplexFunc P(const char* s) { return parse_expression(s); }

GrowthCurve synthetic(const RadiusGrid& g, double (*f)(double)) {
  GrowthCurve c;
  c.label = "synthetic";
  c.grid = g;
  for (double r : g) c.push(f(r), Accuracy::Ok, r);
  return c;
}

// [1, 50] with 136 intervals; the tail window holds 35 points.
RadiusGrid standard_grid() { return RadiusGrid::geometric(1.0, 50.0, 80); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Undefined;
}

}  // namespace

TEST_CASE("tail window") {
  CHECK(tail_start(101, 0.25) == 75);
  CHECK(tail_start(5, 0.5) == 2);
  const RadiusGrid g = RadiusGrid::linear(1.0, 100.0, 99);
  const GrowthCurve c = synthetic(g, [](double r) { return std::sin(r) + 2.0; });
  const TailStats s = tail_stats(c);
  CHECK(s.points == 25);
  double lo = kInf, hi = -kInf;
  for (std::size_t i = s.start; i < c.size(); ++i) {
    lo = std::min(lo, c.values[i]);
    hi = std::max(hi, c.values[i]);
  }
  CHECK(s.liminf == lo);
  CHECK(s.limsup == hi);
  const GrowthCurve short_curve = synthetic(RadiusGrid::linear(1.0, 2.0, 10), [](double r) { return r; });
  CHECK(code_of([&] { tail_stats(short_curve); }) == ErrorCode::TailTooShort);
}

TEST_CASE("tail slopes recover power and log-power growth") {
  const RadiusGrid g = RadiusGrid::geometric(10.0, 1e4, 40);
  const GrowthCurve p = synthetic(g, [](double r) { return 3.0 * std::pow(r, 1.5); });
  CHECK(order_estimate(p) == doctest::Approx(1.5).epsilon(1e-10));
  const GrowthCurve l = synthetic(g, [](double r) { return std::pow(std::log(r), 2.0); });
  CHECK(log_order_estimate(l) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("predicates on synthetic ratios") {
  const RadiusGrid g = RadiusGrid::geometric(1.0, 1e3, 40);
  CHECK(little_o(synthetic(g, [](double r) { return 1.0 / r; })).verdict == Verdict::Supported);
  CHECK(little_o(synthetic(g, [](double) { return 0.7; })).verdict == Verdict::Violated);
  CHECK(comparable(synthetic(g, [](double r) { return 2.0 + std::sin(r); })).verdict == Verdict::Supported);
  CHECK(comparable(synthetic(g, [](double r) { return r * r; })).verdict == Verdict::Violated);
  CHECK(bounded(synthetic(g, [](double) { return 3.0; })).verdict == Verdict::Supported);
}

TEST_CASE("1+exp(z) omits 1: delta_N = 1 and delta_P = pi") {
  const RadiusGrid g = standard_grid();
  const ComplexFunc f = P("1+exp(z)");
  const DeficiencyEstimate n = estimate(DeficiencyKind::N, f, Target::at(1.0), g);
  const DeficiencyEstimate p = estimate(DeficiencyKind::P, f, Target::at(1.0), g);
  CHECK(std::abs(n.estimate - 1.0) <= 0.01);
  CHECK(std::abs(p.estimate - kPi) <= 0.03);
  CHECK(n.flags.empty());
}

TEST_CASE("exp(z) takes 2 often: delta_P(2) is small") {
  const DeficiencyEstimate p = estimate(DeficiencyKind::P, P("exp(z)"), Target::at(2.0), standard_grid());
  CHECK(p.estimate <= 0.05);
}

TEST_CASE("exp(exp(z)) deviates from infinity without bound") {
  // L/T grows like sqrt(2 pi^3 r); the tail liminf sits at the window start
  const RadiusGrid g = RadiusGrid::linear(2.0, 20.0, 80);
  const DeficiencyEstimate p = estimate(DeficiencyKind::P, P("exp(exp(z))"), Target::infinity(), g);
  const double r = g[tail_start(g.size(), 0.25)];
  CHECK(std::abs(p.estimate / std::sqrt(2.0 * kPi * kPi * kPi * r) - 1.0) <= 0.02);
  const DeficiencyEstimate wider =
      estimate(DeficiencyKind::P, P("exp(exp(z))"), Target::infinity(), RadiusGrid::linear(2.0, 60.0, 80));
  CHECK(wider.estimate > 1.5 * p.estimate);
}

TEST_CASE("sum checks") {
  const RadiusGrid g = standard_grid();
  const ComplexFunc e = P("exp(z)");
  std::vector<DeficiencyEstimate> n{estimate(DeficiencyKind::N, e, Target::at(0.0), g),
                                    estimate(DeficiencyKind::N, e, Target::infinity(), g)};
  const CheckReport sn = sum_check(n);
  CHECK(std::abs(sn.value - 2.0) <= 0.05);
  CHECK(sn.pass);

  std::vector<DeficiencyEstimate> ee{estimate(DeficiencyKind::E, e, Target::at(0.0), g),
                                     estimate(DeficiencyKind::E, e, Target::infinity(), g)};
  const CheckReport se = sum_check(ee);
  CHECK(se.value <= kTwoPi + 0.1);
  CHECK(se.value >= kTwoPi - 0.2);
  CHECK(se.pass);

  const CheckReport empty = sum_check({});
  CHECK(empty.pass);
  CHECK(empty.value == 0.0);

  std::vector<DeficiencyEstimate> mixed{n[0], ee[0]};
  CHECK(code_of([&] { sum_check(mixed); }) == ErrorCode::MixedKinds);

  std::vector<DeficiencyEstimate> p{estimate(DeficiencyKind::P, e, Target::at(0.0), g)};
  const CheckReport sp = sum_check(p);
  CHECK(sp.bound == kInf);
  CHECK(sp.pass);
}

TEST_CASE("Bergweiler-Bock bound") {
  const RadiusGrid g = standard_grid();
  const CheckReport e0 = bergweiler_bock_check(P("exp(z)"), Target::at(0.0), g);
  CHECK(e0.applicable);
  CHECK(e0.pass);
  CHECK(e0.value <= kPi + 0.05);
  CHECK(e0.value >= kPi - 0.1);
  const CheckReport f1 = bergweiler_bock_check(P("1+exp(z)"), Target::at(1.0), g);
  CHECK(f1.pass);
  CHECK_FALSE(bergweiler_bock_check(P("5"), Target::at(0.0), g).applicable);
  CHECK_FALSE(bergweiler_bock_check(P("z^2+1"), Target::at(0.0), g).applicable);
}

TEST_CASE("Marchenko bound for functions of linear growth") {
  const RadiusGrid g = standard_grid();
  const CheckReport at0 = marchenko_bound_check(P("exp(z)"), Target::at(0.0), g);
  REQUIRE(at0.applicable);
  CHECK(at0.pass);
  CHECK(at0.bound == doctest::Approx(kPi).epsilon(0.02));
  const CheckReport at1 = marchenko_bound_check(P("exp(z)"), Target::at(1.0), g);
  REQUIRE(at1.applicable);
  CHECK(at1.pass);
  CHECK_FALSE(marchenko_bound_check(P("z^3"), Target::at(0.0), g).applicable);
  CHECK_FALSE(marchenko_bound_check(P("exp(z^2)"), Target::at(0.0), RadiusGrid::geometric(1.0, 8.0, 120)).applicable);
}

TEST_CASE("estimates need a transcendental function") {
  CHECK(code_of([] { estimate(DeficiencyKind::N, P("z^2"), Target::at(0.0), standard_grid()); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("ordering invariants across functions and targets") {
  const RadiusGrid g = standard_grid();
  for (const char* t : {"exp(z)", "1+exp(z)", "exp(z)+exp(-z)", "z exp(z)"}) {
    for (const Target a : {Target::at(0.0), Target::at(1.0), Target::at(cplx(0, 2)), Target::infinity()}) {
      INFO(std::string(t), " a = ", a.to_string());
      const DeficiencyEstimate n = estimate(DeficiencyKind::N, P(t), a, g);
      const DeficiencyEstimate p = estimate(DeficiencyKind::P, P(t), a, g);
      const DeficiencyEstimate v = estimate(DeficiencyKind::V, P(t), a, g);
      CHECK(n.estimate >= -1e-12);
      CHECK(n.estimate <= 1.0 + 0.02);
      CHECK(n.estimate <= p.estimate + 1e-9);
      CHECK(n.tail_liminf <= n.tail_limsup);
      CHECK(n.estimate <= v.estimate + 1e-12);
      // the circle maximum dominates the circle mean at every radius
      for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(p.ratio.values[i] >= n.ratio.values[i] - 1e-9 * std::max(1.0, n.ratio.values[i]));
    }
  }
}

TEST_CASE("estimates are coherent under grid refinement") {
  // 136 intervals, divisible by 4: the tail window starts at the same radius after doubling
  const RadiusGrid g = standard_grid();
  REQUIRE((g.size() - 1) % 4 == 0);
  const RadiusGrid h = g.refined();
  CHECK(h[tail_start(h.size(), 0.25)] == g[tail_start(g.size(), 0.25)]);
  const ComplexFunc f = P("1+exp(z)");
  for (DeficiencyKind k : {DeficiencyKind::N, DeficiencyKind::P, DeficiencyKind::E}) {
    const double a = estimate(k, f, Target::at(1.0), g).estimate;
    const double b = estimate(k, f, Target::at(1.0), h).estimate;
    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, a));
  }
}

TEST_CASE("order estimates") {
  const RadiusGrid g = standard_grid();
  CHECK(order_estimate(characteristic(P("exp(z)"), g)) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(order_estimate(characteristic(P("exp(z^2)"), RadiusGrid::geometric(1.0, 20.0, 80))) ==
        doctest::Approx(2.0).epsilon(0.02));
  CHECK(order_estimate(characteristic(P("z^3+1"), g)) < 0.5);
}

TEST_CASE("estimate JSON") {
  const DeficiencyEstimate e = estimate(DeficiencyKind::N, P("1+exp(z)"), Target::at(1.0), standard_grid());
  const auto j = to_json(e);
  for (const char* k : {"kind", "a", "estimate", "tail_liminf", "tail_limsup", "tail_fraction", "flags"})
    CHECK(j.contains(k));
  CHECK(j["kind"] == "N");
  CHECK(j["a"] == "1");
  CHECK(parse_deficiency_kind("e") == DeficiencyKind::E);
  CHECK(code_of([] { parse_deficiency_kind("Q"); }) == ErrorCode::InvalidArgument);
}
