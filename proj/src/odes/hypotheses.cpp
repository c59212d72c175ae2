#include <algorithm>
#include <cmath>

#include "nevlab/errors.hpp"
#include "nevlab/odes.hpp"
#include "nevlab/serialize.hpp"

namespace nevlab {

namespace {

GrowthCurve positive_part(GrowthCurve c) {
  for (auto& v : c.values) v = std::max(0.0, v);
  return c;
}

Verdict combine(const std::vector<RatioCheck>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    if (c.result.verdict == Verdict::Violated) return Verdict::Violated;
    if (c.result.verdict != Verdict::Supported) all = false;
  }
  return all ? Verdict::Supported : Verdict::Inconclusive;
}

std::string coeff_name(int j) { return "A" + std::to_string(j); }

}  // namespace

TwoLM2Result check_2LM2(const LinearODE& ode, const RadiusGrid& grid, const HypothesisOptions& options) {
  if (!ode.entire_coefficients()) throw Error(ErrorCode::NoneSatisfied, "coefficients must be entire");
  if (!ode.has_transcendental_coefficient())
    throw Error(ErrorCode::NoneSatisfied, "no transcendental coefficient: the growth condition has no witness");
  const int n = ode.order;
  std::vector<GrowthCurve> logm;
  for (int j = 0; j < n; ++j) {
    const ExprSource src(ode.A(j));
    GrowthCurve c = positive_part(max_modulus_curve(src, grid, options.functionals));
    c.label = "log+M(" + coeff_name(j) + ")";
    logm.push_back(std::move(c));
  }
  TwoLM2Result out;
  for (int p = 0; p < n; ++p) {
    GrowthCurve num;
    num.label = "sum";
    num.grid = grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double s = 0.0;
      Accuracy f = Accuracy::Ok;
      for (int j = p + 1; j < n; ++j) {
        s += logm[j].values[i];
        f = worst(f, logm[j].flags[i]);
      }
      num.push(s, f, grid[i]);
    }
    GrowthCurve ratio = ratio_curve(num, logm[p], "sum_{j>" + std::to_string(p) + "} log+M(A_j)/log+M(A_" +
                                                      std::to_string(p) + ")");
    // 0/0 (nothing above p and A_p bounded by 1) counts as failing.
    for (auto& v : ratio.values)
      if (std::isnan(v)) v = kInf;
    const double sup = tail_stats(ratio, options.predicates.tail).limsup;
    out.tail_limsups.push_back(sup);
    out.ratios.push_back(std::move(ratio));
    if (out.p < 0 && sup < 1.0) out.p = p;
  }
  if (out.p < 0) throw Error(ErrorCode::NoneSatisfied, "no index p satisfies the growth condition");
  if (out.p > 0) {
    GrowthCurve below;
    below.grid = grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double s = 0.0;
      for (int j = 0; j < out.p; ++j) s += logm[j].values[i];
      below.push(s, Accuracy::Ok, grid[i]);
    }
    out.lower_ratio = tail_stats(ratio_curve(below, logm[out.p], "below"), options.predicates.tail).limsup;
    out.note = "coefficients below p grow at most lower_ratio times as fast as A_p";
  }
  if (!is_transcendental(ode.A(out.p))) out.note += (out.note.empty() ? "" : "; ") + std::string("A_p is not transcendental");
  return out;
}

HypothesisReport wittich_admissible(const LinearODE& ode, const GrowthCurve& t_f, const HypothesisOptions& options) {
  HypothesisReport rep;
  for (int j = 0; j < ode.order; ++j) {
    const GrowthCurve t_a = characteristic(ode.A(j), t_f.grid, options.functionals);
    RatioCheck c;
    c.name = "T(r," + coeff_name(j) + ")/T(r,f)";
    c.ratio = ratio_curve(t_a, t_f, c.name);
    c.result = little_o(c.ratio, options.predicates);
    rep.checks.push_back(std::move(c));
  }
  rep.verdict = combine(rep.checks);
  return rep;
}

HypothesisReport wittich_admissible(const LinearODE& ode, const FunctionSource& f, const RadiusGrid& grid,
                                    const HypothesisOptions& options) {
  return wittich_admissible(ode, characteristic(f, grid, options.functionals), options);
}

HypothesisReport wittich_admissible(const LinearODE& ode, const ComplexFunc& f, const RadiusGrid& grid,
                                    const HypothesisOptions& options) {
  return wittich_admissible(ode, characteristic(f, grid, options.functionals), options);
}

HypothesisReport check_coefficient_bound(std::span<const FunctionSource* const> base, const LinearODE& ode,
                                         const RadiusGrid& grid, const HypothesisOptions& options) {
  if (base.empty()) throw Error(ErrorCode::MissingSolutionBase, "coefficient bound needs solutions");
  GrowthCurve den;
  den.label = "log r + max log T(r,f_k)";
  den.grid = grid;
  std::vector<GrowthCurve> ts;
  for (const auto* s : base) ts.push_back(characteristic(*s, grid, options.functionals));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double best = -kInf;
    Accuracy f = Accuracy::Ok;
    for (const auto& t : ts) {
      best = std::max(best, std::log(t.values[i]));
      f = worst(f, t.flags[i]);
    }
    den.push(std::log(grid[i]) + best, f, grid[i]);
  }
  HypothesisReport rep;
  for (int j = 0; j < ode.order; ++j) {
    const ExprSource src(ode.A(j));
    const GrowthCurve l = log_max_modulus_curve(src, Target::infinity(), grid, options.functionals);
    RatioCheck c;
    c.name = "L(r,inf," + coeff_name(j) + ")/(log r + max log T(r,f_k))";
    c.ratio = ratio_curve(l, den, c.name);
    c.result = bounded(c.ratio, options.predicates);
    rep.checks.push_back(std::move(c));
  }
  rep.verdict = combine(rep.checks);
  return rep;
}

GrowthLinkReport growth_link_count(const LinearODE& ode, std::span<const FunctionSource* const> base,
                                   const RadiusGrid& grid, const HypothesisOptions& options, double c_min) {
  if (base.empty()) throw Error(ErrorCode::MissingSolutionBase, "growth link count needs a solution base");
  const TwoLM2Result cond = check_2LM2(ode, grid, options);
  GrowthLinkReport rep;
  rep.p = cond.p;
  rep.required = ode.order - cond.p;
  const ExprSource ap(ode.A(cond.p));
  const GrowthCurve logm = max_modulus_curve(ap, grid, options.functionals);
  for (const auto* s : base) {
    GrowthCurve lt = characteristic(*s, grid, options.functionals);
    for (auto& v : lt.values) v = std::log(v);
    const double c = tail_stats(ratio_curve(lt, logm, "logT/logM"), options.predicates.tail).liminf;
    rep.constants.push_back(c);
    if (c >= c_min) ++rep.count;
  }
  rep.pass = rep.count >= rep.required;
  return rep;
}

nlohmann::ordered_json to_json(const RatioCheck& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["verdict"] = to_string(c.result.verdict);
  j["tail_liminf"] = json_number(c.result.tail_liminf);
  j["tail_limsup"] = json_number(c.result.tail_limsup);
  j["truncated_limsup"] = json_number(c.result.truncated_limsup);
  if (!c.result.note.empty()) j["note"] = c.result.note;
  return j;
}

nlohmann::ordered_json to_json(const HypothesisReport& r) {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(r.verdict);
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::ordered_json to_json(const TwoLM2Result& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  auto& sups = j["tail_limsups"] = nlohmann::ordered_json::array();
  for (double v : r.tail_limsups) sups.push_back(json_number(v));
  j["lower_ratio"] = json_number(r.lower_ratio);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::ordered_json to_json(const GrowthLinkReport& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  auto& cs = j["constants"] = nlohmann::ordered_json::array();
  for (double v : r.constants) cs.push_back(json_number(v));
  j["count"] = r.count;
  j["required"] = r.required;
  j["pass"] = r.pass;
  return j;
}

}  // namespace nevlab
