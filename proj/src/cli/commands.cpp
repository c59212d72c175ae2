#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "nevlab/cli.hpp"
#include "nevlab/errors.hpp"
#include "nevlab/odes.hpp"
#include "nevlab/parse.hpp"
#include "nevlab/serialize.hpp"
#include "nevlab/sets.hpp"

namespace nevlab::cli {

namespace {

HypothesisOptions hypothesis_options(const RunConfig& c) {
  HypothesisOptions o;
  o.functionals = c.functionals();
  o.predicates.tail = c.tail();
  o.m_exponent = c.m_exponent;
  return o;
}

nlohmann::ordered_json header(const std::string& command, const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config"] = c.to_json();
  return j;
}

ComplexFunc parse_in(const std::string& text, const std::string& variable) {
  ParseOptions o;
  o.variable = variable;
  return parse_expression(text, o);
}

// Closed forms become expression sources; jets at the origin are integrated.
std::unique_ptr<FunctionSource> solution_source(const EquationFile& eq, const SolutionSpec& s,
                                                const RadiusGrid& grid, int rays) {
  if (s.closed_form) return std::make_unique<ExprSource>(*s.closed_form);
  if (s.jet.empty()) throw Error(ErrorCode::InvalidArgument, "solution " + s.name + " has neither form nor jet");
  if (s.anchor != cplx{0.0, 0.0})
    throw Error(ErrorCode::InvalidArgument, "numeric solutions need initial values at 0");
  return std::make_unique<NumericField>(eq.ode, s.jet, grid.radii(), rays, RayOptions{}, s.name);
}

GrowthCurve solution_characteristic(const SolutionSpec& s, const FunctionSource& src, const RadiusGrid& grid,
                                    const FunctionalOptions& fo) {
  return s.closed_form ? characteristic(*s.closed_form, grid, fo) : characteristic(src, grid, fo);
}

}  // namespace

CommandResult cmd_curve(const std::string& expr, const std::vector<std::string>& functionals,
                        const std::string& target, const RunConfig& config) {
  const ComplexFunc f = parse_expression(expr);
  const RadiusGrid grid = config.grid();
  const FunctionalOptions fo = config.functionals();
  const Target a = Target::parse(target);
  const ExprSource src(f);
  std::vector<GrowthCurve> curves;
  for (const auto& name : functionals) {
    GrowthCurve c;
    if (name == "m")
      c = proximity_curve(src, a, grid, fo);
    else if (name == "N")
      c = integrated_count(f, a, grid);
    else if (name == "T")
      c = characteristic(f, grid, fo);
    else if (name == "T0")
      c = ahlfors_shimizu(src, grid, fo);
    else if (name == "A")
      c = area_characteristic(src, grid, fo);
    else if (name == "L")
      c = log_max_modulus_curve(src, a, grid, fo);
    else if (name == "M")
      c = max_modulus_curve(src, grid, fo);
    else
      throw Error(ErrorCode::InvalidArgument, "unknown functional '" + name + "' (m, N, T, T0, A, L, M)");
    c.label = name;
    curves.push_back(std::move(c));
  }
  CommandResult res;
  res.report = header("curve", config);
  res.report["expr"] = f.to_string();
  res.report["target"] = a.to_string();
  auto& cs = res.report["curves"] = nlohmann::ordered_json::array();
  for (const auto& c : curves) cs.push_back(to_json(c));
  res.csv = to_csv(curves);
  return res;
}

CommandResult cmd_deficiency(const std::string& expr, const std::string& kind_text,
                             const std::vector<std::string>& targets, const RunConfig& config) {
  const ComplexFunc f = parse_expression(expr);
  const DeficiencyKind kind = parse_deficiency_kind(kind_text);
  if (targets.empty()) throw Error(ErrorCode::InvalidArgument, "at least one target is needed");
  const RadiusGrid grid = config.grid();
  EstimateOptions eo;
  eo.functionals = config.functionals();
  eo.tail = config.tail();

  CommandResult res;
  res.report = header("deficiency", config);
  res.report["expr"] = f.to_string();
  res.report["kind"] = std::string(to_string(kind));
  std::vector<DeficiencyEstimate> est;
  auto& arr = res.report["estimates"] = nlohmann::ordered_json::array();
  std::vector<GrowthCurve> ratios;
  for (const auto& t : targets) {
    est.push_back(estimate(kind, f, Target::parse(t), grid, eo));
    arr.push_back(to_json(est.back()));
    ratios.push_back(est.back().ratio);
  }
  res.csv = to_csv(ratios);
  auto& checks = res.report["checks"] = nlohmann::ordered_json::array();
  bool ok = true;
  if (est.size() > 1) {
    const CheckReport s = sum_check(est);
    checks.push_back(to_json(s));
    ok = ok && (!s.applicable || s.pass);
  }
  if (kind == DeficiencyKind::E) {
    BoundCheckOptions bo;
    bo.estimate = eo;
    for (const auto& t : targets) {
      const CheckReport b = bergweiler_bock_check(f, Target::parse(t), grid, bo);
      checks.push_back(to_json(b));
      ok = ok && (!b.applicable || b.pass);
    }
  }
  res.report["pass"] = ok;
  res.exit_code = ok ? Pass : Violated;
  return res;
}

CommandResult cmd_verify_ode(const std::filesystem::path& file, const RunConfig& config,
                             const VerifyOptions& options) {
  const EquationFile eq = load_equation_file(file);
  const RadiusGrid grid = config.grid();
  const HypothesisOptions ho = hypothesis_options(config);
  const std::vector<cplx> pts = disc_samples(options.samples, options.radius, config.seed);

  CommandResult res;
  res.report = header("verify-ode", config);
  res.report["equation"] = eq.ode.to_string();
  res.report["residual_tolerance"] = json_number(options.residual_tolerance);
  bool ok = true;

  std::vector<std::unique_ptr<FunctionSource>> owned;
  std::vector<const FunctionSource*> base;
  const bool full_base = static_cast<int>(eq.solutions.size()) == eq.ode.order &&
                         std::all_of(eq.solutions.begin(), eq.solutions.end(),
                                     [](const SolutionSpec& s) { return s.closed_form.has_value(); });
  if (full_base)
    for (const auto& s : eq.solutions) {
      owned.push_back(std::make_unique<ExprSource>(*s.closed_form));
      base.push_back(owned.back().get());
    }

  auto& sols = res.report["solutions"] = nlohmann::ordered_json::array();
  for (const auto& s : eq.solutions) {
    nlohmann::ordered_json js;
    js["name"] = s.name;
    if (!s.closed_form) {
      js["note"] = "no closed form; residual not applicable";
      sols.push_back(std::move(js));
      continue;
    }
    js["expr"] = s.closed_form->to_string();
    const ResidualReport r = residual(eq.ode, *s.closed_form, pts);
    const bool pass = r.max_relative <= options.residual_tolerance;
    ok = ok && pass;
    js["residual"] = to_json(r);
    js["residual_pass"] = pass;
    const ExprSource src(*s.closed_form);
    const GrowthCurve t_f = characteristic(*s.closed_form, grid, ho.functionals);
    js["wittich"] = to_json(wittich_admissible(eq.ode, t_f, ho));
    auto& vs = js["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& v : standardness_verdicts(eq.ode, src, t_f, base, grid, ho)) vs.push_back(to_json(v));
    sols.push_back(std::move(js));
  }
  res.report["pass"] = ok;
  res.exit_code = ok ? Pass : Violated;
  return res;
}

CommandResult cmd_standardness(const std::filesystem::path& file, const RunConfig& config,
                               const StandardnessOptions& options) {
  const EquationFile eq = load_equation_file(file);
  if (eq.solutions.empty()) throw Error(ErrorCode::InvalidArgument, "the equation file lists no solution");
  const RadiusGrid grid = config.grid();
  const HypothesisOptions ho = hypothesis_options(config);

  const SolutionSpec* chosen = &eq.solutions.front();
  if (!options.solution.empty()) {
    chosen = nullptr;
    for (const auto& s : eq.solutions)
      if (s.name == options.solution) chosen = &s;
    if (!chosen) throw Error(ErrorCode::InvalidArgument, "no solution named '" + options.solution + "'");
  }

  std::vector<std::unique_ptr<FunctionSource>> owned;
  std::vector<const FunctionSource*> base;
  const FunctionSource* f = nullptr;
  const bool full_base = static_cast<int>(eq.solutions.size()) == eq.ode.order;
  for (const auto& s : eq.solutions) {
    if (&s != chosen && !full_base) continue;
    owned.push_back(solution_source(eq, s, grid, options.rays));
    if (&s == chosen) f = owned.back().get();
    if (full_base) base.push_back(owned.back().get());
  }
  const GrowthCurve t_f = solution_characteristic(*chosen, *f, grid, ho.functionals);

  CommandResult res;
  res.report = header("standardness", config);
  res.report["equation"] = eq.ode.to_string();
  res.report["solution"] = chosen->name;
  res.report["numeric"] = !chosen->closed_form.has_value();
  res.report["wittich"] = to_json(wittich_admissible(eq.ode, t_f, ho));
  auto& vs = res.report["verdicts"] = nlohmann::ordered_json::array();
  bool any = false;
  for (const auto& v : standardness_verdicts(eq.ode, *f, t_f, base, grid, ho)) {
    any = any || v.verdict == Verdict::Supported;
    vs.push_back(to_json(v));
  }
  res.csv = to_csv(std::span<const GrowthCurve>(&t_f, 1));
  res.report["any_supported"] = any;
  res.exit_code = any ? Pass : Violated;
  return res;
}

CommandResult cmd_lemma(const std::string& lemma, const LemmaParams& p, const RunConfig& config) {
  CommandResult res;
  res.report = header("lemma", config);
  res.report["lemma"] = lemma;
  bool pass = false;
  if (lemma == "borel") {
    const ComplexFunc F = parse_in(p.F, "r");
    const ComplexFunc phi = parse_in(p.phi, "r");
    const ComplexFunc xi = parse_in(p.xi, "L");
    BorelProblem bp;
    bp.log_F = [F](double r) { return eval_log(F, r).logmod; };
    bp.phi = [phi](double r) { return eval_log(phi, r).to_complex().real(); };
    bp.xi_log = [xi](double l) { return eval_log(xi, l).to_complex().real(); };
    bp.C = p.C;
    bp.r0 = p.r0;
    bp.R = p.R;
    if (!(bp.C > 1.0)) throw Error(ErrorCode::InvalidArgument, "the Borel constant C must exceed 1");
    if (!(bp.R > bp.r0 && bp.r0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "need 0 < r0 < R");
    const BorelReport r = borel_exceptional(bp, RadiusGrid::geometric(bp.r0, bp.R, config.density));
    res.report["F"] = F.to_string();
    res.report["phi"] = phi.to_string();
    res.report["xi_of_log"] = xi.to_string();
    res.report["C"] = json_number(bp.C);
    res.report["report"] = to_json(r);
    pass = r.pass;
  } else if (lemma == "zero-count" || lemma == "min-modulus" || lemma == "log-deriv") {
    if (p.expr.empty()) throw Error(ErrorCode::InvalidArgument, "lemma " + lemma + " needs --expr");
    const ComplexFunc g = parse_expression(p.expr);
    const RadiusGrid grid = config.grid();
    LemmaReport r;
    if (lemma == "zero-count") {
      ZeroCountOptions o;
      o.m = config.m_exponent;
      o.functionals = config.functionals();
      r = zero_count_lemma_check(g, grid, o);
    } else if (lemma == "min-modulus") {
      MinModulusOptions o;
      o.m = config.m_exponent;
      o.delta = p.delta;
      o.functionals = config.functionals();
      r = min_modulus_check(g, grid, o);
    } else {
      r = log_deriv_check(g, p.k, p.j, grid, config.functionals());
    }
    res.report["expr"] = g.to_string();
    res.report["report"] = to_json(r);
    std::ostringstream csv;
    csv << "r,value,bound,violated\n";
    for (const auto& row : r.rows)
      csv << format_number(row.r) << ',' << format_number(row.value) << ',' << format_number(row.bound) << ','
          << (row.violated ? 1 : 0) << '\n';
    res.csv = csv.str();
    pass = r.pass;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown lemma '" + lemma + "' (borel, zero-count, min-modulus, log-deriv)");
  }
  res.report["pass"] = pass;
  res.exit_code = pass ? Pass : Violated;
  return res;
}

CommandResult cmd_density(const std::string& source, double horizon) {
  IntervalUnion e;
  std::istringstream words(source);
  std::string head;
  words >> head;
  if (head == "empty") {
  } else if (head == "comb") {
    double a = 0.0, len = 0.0;
    if (!(words >> a >> len)) throw Error(ErrorCode::InvalidArgument, "comb needs a period and a length");
    e = comb_set(a, len, horizon);
  } else if (head == "decay") {
    std::string b;
    words >> b;
    if (b.empty()) b = "2";
    if (const auto caret = b.find('^'); caret != std::string::npos) {
      if (b.substr(caret) != "^-n") throw Error(ErrorCode::InvalidArgument, "decay spec is 'decay B^-n'");
      b.resize(caret);
    }
    double base = 0.0;
    try {
      base = std::stod(b);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad decay base '" + b + "'");
    }
    e = decay_set(base, horizon);
  } else {
    std::ifstream in(source);
    if (!in) throw Error(ErrorCode::InvalidArgument, "'" + source + "' is neither a generator nor a readable file");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::InvalidArgument, std::string("interval file: ") + ex.what());
    }
    e = interval_union_from_json(j);
  }
  CommandResult res;
  res.report["command"] = "density";
  res.report["source"] = source;
  res.report["intervals"] = e.size();
  res.report["density"] = to_json(measures(e, horizon));
  return res;
}

}  // namespace nevlab::cli
