#include <cmath>
#include <map>

#include "nevlab/errors.hpp"
#include "nevlab/odes.hpp"
#include "nevlab/serialize.hpp"

namespace nevlab {

namespace {

// Curves of the solution, computed on first use.
class SolutionCurves {
 public:
  SolutionCurves(const FunctionSource& f, const GrowthCurve& t_f, const RadiusGrid& grid,
                 const FunctionalOptions& o)
      : f_(f), t_f_(t_f), grid_(grid), o_(o) {}

  const GrowthCurve& T() const { return t_f_; }

  const GrowthCurve& A() {
    if (!area_) area_ = area_characteristic(f_, grid_, o_);
    return *area_;
  }

  const GrowthCurve& L(cplx a) { return lookup(l_, a, true); }
  const GrowthCurve& m(cplx a) { return lookup(m_, a, false); }

 private:
  struct Less {
    bool operator()(cplx x, cplx y) const {
      return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
    }
  };
  using Cache = std::map<cplx, GrowthCurve, Less>;

  const GrowthCurve& lookup(Cache& c, cplx a, bool max) {
    auto it = c.find(a);
    if (it == c.end()) {
      GrowthCurve g = max ? log_max_modulus_curve(f_, Target::at(a), grid_, o_)
                          : proximity_curve(f_, Target::at(a), grid_, o_);
      it = c.emplace(a, std::move(g)).first;
    }
    return it->second;
  }

  const FunctionSource& f_;
  const GrowthCurve& t_f_;
  const RadiusGrid& grid_;
  FunctionalOptions o_;
  std::optional<GrowthCurve> area_;
  Cache l_, m_;
};

std::string coeff_name(int j) { return "A" + std::to_string(j); }

Verdict combine(const std::vector<RatioCheck>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    if (c.result.verdict == Verdict::Violated) return Verdict::Violated;
    if (c.result.verdict != Verdict::Supported) all = false;
  }
  return all ? Verdict::Supported : Verdict::Inconclusive;
}

RatioCheck little_o_check(std::string name, const GrowthCurve& num, const GrowthCurve& den,
                          const HypothesisOptions& o) {
  RatioCheck c;
  c.name = std::move(name);
  c.ratio = ratio_curve(num, den, c.name);
  c.result = little_o(c.ratio, o.predicates);
  return c;
}

GrowthCurve coefficient_L(const ComplexFunc& a, Target t, const RadiusGrid& grid, const FunctionalOptions& o) {
  const ExprSource src(a);
  return log_max_modulus_curve(src, t, grid, o);
}

// x (log+ x)^m pointwise.
GrowthCurve log_power(GrowthCurve c, double m, const std::string& label) {
  for (auto& v : c.values) {
    const double l = v > 1.0 ? std::log(v) : 0.0;
    v = v * std::pow(l, m);
  }
  c.label = label;
  return c;
}

void corroborate(TheoremVerdict& v, DeficiencyKind kind, SolutionCurves& curves, const HypothesisOptions& o) {
  if (v.verdict != Verdict::Supported) return;
  EstimateOptions eo;
  eo.functionals = o.functionals;
  eo.tail = o.predicates.tail;
  v.corroborated = true;
  for (const cplx a : o.targets) {
    try {
      const GrowthCurve& num = kind == DeficiencyKind::N ? curves.m(a) : curves.L(a);
      const GrowthCurve& den = kind == DeficiencyKind::E ? curves.A() : curves.T();
      DeficiencyEstimate e = estimate_from_curves(kind, Target::at(a), num, den, eo);
      if (!(e.estimate <= o.corroboration_threshold)) v.corroborated = false;
      v.corroboration.push_back(std::move(e));
    } catch (const Error& err) {
      v.corroborated = false;
      v.notes.push_back(std::string("corroboration at a = ") + Target::at(a).to_string() + " failed: " + err.what());
    }
  }
}

}  // namespace

std::vector<TheoremVerdict> standardness_verdicts(const LinearODE& ode, const FunctionSource& f,
                                                  const GrowthCurve& t_f,
                                                  std::span<const FunctionSource* const> base,
                                                  const RadiusGrid& grid, const HypothesisOptions& options) {
  const auto& fo = options.functionals;
  const int n = ode.order;
  SolutionCurves curves(f, t_f, grid, fo);
  std::vector<TheoremVerdict> out;
  const bool entire = ode.entire_coefficients();
  const bool polynomial = ode.polynomial_coefficients();
  const std::string density_note = "exceptional sets of density < 1 are not separated from finite-measure sets";

  std::vector<GrowthCurve> t_a, l_inf;
  for (int j = 0; j < n; ++j) {
    t_a.push_back(characteristic(ode.A(j), grid, fo));
    l_inf.push_back(coefficient_L(ode.A(j), Target::infinity(), grid, fo));
  }
  const GrowthCurve l_zero_a0 = coefficient_L(ode.A(0), Target::at(0.0), grid, fo);

  {
    TheoremVerdict v;
    v.theorem = "T1.1";
    for (int j = 0; j < n; ++j) v.hypotheses.push_back(little_o_check("T(r," + coeff_name(j) + ")/T(r,f)", t_a[j], t_f, options));
    v.verdict = combine(v.hypotheses);
    corroborate(v, DeficiencyKind::N, curves, options);
    out.push_back(std::move(v));
  }
  {
    TheoremVerdict v;
    v.theorem = "T1.3/5.1";
    try {
      const TwoLM2Result r = check_2LM2(ode, grid, options);
      RatioCheck c;
      c.name = "growth condition at p = " + std::to_string(r.p);
      c.ratio = r.ratios[r.p];
      c.result.verdict = Verdict::Supported;
      c.result.tail_limsup = r.tail_limsups[r.p];
      c.result.note = "tail limsup below 1";
      v.hypotheses.push_back(std::move(c));
      v.verdict = Verdict::Supported;
      v.notes.push_back("at least " + std::to_string(n - r.p) + " members of every base are P-standard");
      if (!base.empty()) {
        const GrowthLinkReport g = growth_link_count(ode, base, grid, options);
        v.notes.push_back("base members with log T ~ log M(r, A_p): " + std::to_string(g.count) + " of " +
                          std::to_string(base.size()) + ", required " + std::to_string(g.required));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoneSatisfied) throw;
      v.verdict = Verdict::Violated;
      v.notes.push_back(e.what());
    }
    corroborate(v, DeficiencyKind::P, curves, options);
    out.push_back(std::move(v));
  }
  {
    TheoremVerdict v;
    v.theorem = "T2.2";
    if (!entire) {
      v.verdict = Verdict::Violated;
      v.notes.push_back("coefficients are not entire");
    } else if (base.empty()) {
      v.verdict = Verdict::Inconclusive;
      v.notes.push_back("MissingSolutionBase: T(r) needs a solution base");
    } else {
      GrowthCurve tb = base_characteristic(base, grid, fo);
      for (auto& x : tb.values) x = x > 1.0 ? std::log(x) : 0.0;
      const GrowthCurve lhs = log_power(tb, options.m_exponent, "log T(r) log^m log T(r)");
      v.hypotheses.push_back(little_o_check("log T(r) log^m(log T(r))/T(r,f)", lhs, t_f, options));
      v.verdict = combine(v.hypotheses);
      v.notes.push_back(density_note);
    }
    corroborate(v, DeficiencyKind::P, curves, options);
    out.push_back(std::move(v));
  }
  {
    TheoremVerdict v;
    v.theorem = "T2.3";
    for (int j = 0; j < n; ++j)
      v.hypotheses.push_back(little_o_check("L(r,inf," + coeff_name(j) + ")/T(r,f)", l_inf[j], t_f, options));
    v.hypotheses.push_back(little_o_check("L(r,0,A0)/T(r,f)", l_zero_a0, t_f, options));
    v.verdict = combine(v.hypotheses);
    v.notes.push_back(density_note);
    corroborate(v, DeficiencyKind::P, curves, options);
    out.push_back(std::move(v));
  }
  {
    TheoremVerdict v;
    v.theorem = "C2.4";
    v.verdict = polynomial ? Verdict::Supported : Verdict::Violated;
    v.notes.push_back(polynomial ? "all coefficients are polynomials" : "a coefficient is not a polynomial");
    corroborate(v, DeficiencyKind::P, curves, options);
    out.push_back(std::move(v));
  }
  {
    TheoremVerdict v;
    v.theorem = "T2.6";
    if (!is_entire(ode.A(0))) {
      v.verdict = Verdict::Violated;
      v.notes.push_back("A0 is not entire");
    } else {
      for (int j = 0; j < n; ++j)
        v.hypotheses.push_back(little_o_check("L(r,inf," + coeff_name(j) + ")/T(r,f)", l_inf[j], t_f, options));
      const GrowthCurve lhs = log_power(l_inf[0], options.m_exponent, "L log^m L");
      v.hypotheses.push_back(little_o_check("L(r,inf,A0) log^m L(r,inf,A0)/T(r,f)", lhs, t_f, options));
      v.verdict = combine(v.hypotheses);
    }
    corroborate(v, DeficiencyKind::P, curves, options);
    out.push_back(std::move(v));
  }
  {
    TheoremVerdict v;
    v.theorem = "T3.3";
    for (int j = 0; j < n; ++j)
      v.hypotheses.push_back(little_o_check("T(r," + coeff_name(j) + ")/A(r,f)", t_a[j], curves.A(), options));
    v.verdict = combine(v.hypotheses);
    corroborate(v, DeficiencyKind::E, curves, options);
    out.push_back(std::move(v));
  }
  {
    TheoremVerdict v;
    v.theorem = "T3.4";
    const double rho_log = log_order_estimate(t_f, options.predicates.tail);
    v.notes.push_back("measured logarithmic order " + format_number(rho_log));
    for (int j = 0; j < n; ++j)
      v.hypotheses.push_back(little_o_check("L(r,inf," + coeff_name(j) + ")/A(r,f)", l_inf[j], curves.A(), options));
    v.hypotheses.push_back(little_o_check("L(r,0,A0)/A(r,f)", l_zero_a0, curves.A(), options));
    v.verdict = combine(v.hypotheses);
    if (!entire && !(rho_log > 2.0) && v.verdict == Verdict::Supported) {
      v.verdict = Verdict::Inconclusive;
      v.notes.push_back("logarithmic order not above 2 and coefficients not entire");
    }
    corroborate(v, DeficiencyKind::E, curves, options);
    out.push_back(std::move(v));
  }
  {
    TheoremVerdict v;
    v.theorem = "C3.6";
    v.verdict = polynomial ? Verdict::Supported : Verdict::Violated;
    v.notes.push_back(polynomial ? "all coefficients are polynomials" : "a coefficient is not a polynomial");
    corroborate(v, DeficiencyKind::E, curves, options);
    out.push_back(std::move(v));
  }
  return out;
}

nlohmann::ordered_json to_json(const ResidualReport& r) {
  nlohmann::ordered_json j;
  j["max_relative_residual"] = json_number(r.max_relative);
  j["max_log_relative"] = json_number(r.max_log_relative);
  j["worst_point"] = {json_number(r.worst_point.real()), json_number(r.worst_point.imag())};
  j["samples"] = r.samples;
  return j;
}

nlohmann::ordered_json to_json(const TheoremVerdict& v) {
  nlohmann::ordered_json j;
  j["theorem"] = v.theorem;
  j["verdict"] = to_string(v.verdict);
  auto& h = j["hypotheses"] = nlohmann::ordered_json::array();
  for (const auto& c : v.hypotheses) h.push_back(to_json(c));
  if (!v.corroboration.empty()) {
    auto& c = j["corroboration"] = nlohmann::ordered_json::array();
    for (const auto& e : v.corroboration) c.push_back(to_json(e));
    j["corroborated"] = v.corroborated;
  }
  j["notes"] = v.notes;
  return j;
}

}  // namespace nevlab
