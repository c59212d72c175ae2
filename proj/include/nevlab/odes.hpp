#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nevlab/deficiency.hpp"
#include "nevlab/expr.hpp"
#include "nevlab/grid.hpp"
#include "nevlab/nevanlinna.hpp"
#include "nevlab/source.hpp"

namespace nevlab {

/// f^(n) + A_{n-1} f^(n-1) + ... + A_1 f' + A_0 f = 0.
struct LinearODE {
  int order = 0;
  std::vector<ComplexFunc> coefficients;  // A_0 .. A_{n-1}

  LinearODE() = default;
  LinearODE(int n, std::vector<ComplexFunc> a);

  const ComplexFunc& A(int j) const { return coefficients.at(j); }
  bool entire_coefficients() const;
  bool polynomial_coefficients() const;
  bool constant_coefficients() const;
  bool has_transcendental_coefficient() const;
  std::string to_string() const;
};

/// A claimed solution: a closed form, initial values at an anchor, or both.
struct SolutionSpec {
  std::string name;
  std::optional<ComplexFunc> closed_form;
  std::vector<cplx> jet;  // f, f', ..., f^(n-1) at anchor
  cplx anchor{0.0, 0.0};
};

struct EquationFile {
  LinearODE ode;
  std::map<std::string, ComplexFunc, std::less<>> parameters;
  std::vector<SolutionSpec> solutions;
};

/// Line-oriented text: "order: n", "A<j>: expr", "param P: expr",
/// "solution [name]: expr", "jet [name]: v0, v1, ... @ z0". '#' starts a
/// comment. Unlisted coefficients are 0. Errors carry the line number.
EquationFile parse_equation(std::string_view text);
EquationFile load_equation_file(const std::filesystem::path& path);

/// The jet of a closed form at z0.
std::vector<cplx> jet_of(const ComplexFunc& f, cplx z0, int order);

struct ResidualReport {
  /// max over samples of log|f^(n) + sum A_j f^(j)| - log(max_j |A_j f^(j)|).
  double max_log_relative = -kInf;
  double max_relative = 0.0;
  cplx worst_point{0.0, 0.0};
  std::size_t samples = 0;
};

ResidualReport residual(const LinearODE& ode, const ComplexFunc& f, std::span<const cplx> samples);

/// n seeded points uniformly distributed in |z| <= radius.
std::vector<cplx> disc_samples(std::size_t n, double radius, std::uint64_t seed);

struct RayOptions {
  int taylor_order = 20;
  /// Local error bound per step, relative to the scaled state.
  double tolerance = 1e-14;
  double min_step = 1e-12;
};

struct RaySample {
  double s = 0.0;
  LogComplex f;
  LogComplex df;  // f'
};

/// Samples of one solution along z = anchor + s e^{i theta}.
struct NumericSolution {
  double theta = 0.0;
  cplx anchor{0.0, 0.0};
  std::vector<cplx> jet;
  std::vector<RaySample> samples;
  std::size_t steps = 0;
  double max_local_error = 0.0;
};

/// Taylor-series integration from the anchor to s_max. The state is kept as
/// a unit vector times a real scale exp(L), so growth like exp(exp(s)) cannot
/// overflow. Samples are recorded at s = 0 and at every s in `stops` (sorted, in
/// (0, s_max]).
/// Throws StepUnderflow near coefficient singularities.
NumericSolution integrate_ray(const LinearODE& ode, cplx anchor, std::span<const cplx> jet, double theta,
                              double s_max, std::span<const double> stops, const RayOptions& options = {});
NumericSolution integrate_ray(const LinearODE& ode, cplx anchor, std::span<const cplx> jet, double theta,
                              double s_max, const RayOptions& options = {});

/// A solution known numerically on the circles |z| = r for r in `radii`, at
/// the angles 2pi j / rays (a fan of rays from the origin).
class NumericField final : public FunctionSource {
 public:
  NumericField(const LinearODE& ode, std::vector<cplx> jet_at_origin, std::vector<double> radii, int rays,
               const RayOptions& options = {}, std::string name = "numeric");

  Parts parts(cplx z) const override;
  double area_flux_density(cplx z) const override;
  int uniform_points() const override { return rays_; }
  /// log+ kinks between fixed angles limit the trapezoid rule to second order.
  double sampling_tolerance() const override { return 1e-5; }
  std::string describe() const override { return name_; }

  const std::vector<double>& radii() const { return radii_; }
  double max_local_error() const { return max_local_error_; }

 private:
  std::pair<std::size_t, std::size_t> locate(cplx z) const;
  std::vector<double> radii_;
  int rays_;
  std::string name_;
  // values_[ray * radii + k]
  std::vector<RaySample> values_;
  double max_local_error_ = 0.0;
};

struct HypothesisOptions {
  FunctionalOptions functionals;
  PredicateOptions predicates;
  /// Exponent m > 1 in the log-power conditions.
  double m_exponent = 1.5;
  /// Finite nonzero targets used for corroboration.
  std::vector<cplx> targets{cplx{1.0, 0.0}, cplx{2.0, 0.0}, cplx{0.0, 1.0}};
  double corroboration_threshold = 0.05;
};

struct TwoLM2Result {
  int p = -1;
  std::vector<GrowthCurve> ratios;     // index p: sum_{j>p} log+M(A_j) / log+M(A_p)
  std::vector<double> tail_limsups;
  /// sum_{j<p} log+M(A_j) / log+M(A_p), tail limsup (how far below p the others sit).
  double lower_ratio = 0.0;
  std::string note;
};

/// Smallest p whose ratio has tail limsup below 1. Throws NoneSatisfied, also
/// when no coefficient is transcendental.
TwoLM2Result check_2LM2(const LinearODE& ode, const RadiusGrid& grid, const HypothesisOptions& options = {});

struct RatioCheck {
  std::string name;
  GrowthCurve ratio;
  PredicateResult result;
};

struct HypothesisReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<RatioCheck> checks;
  std::string note;
};

/// T(r, A_j) / T(r, f) = o(1) for every j.
HypothesisReport wittich_admissible(const LinearODE& ode, const GrowthCurve& t_f,
                                    const HypothesisOptions& options = {});
HypothesisReport wittich_admissible(const LinearODE& ode, const FunctionSource& f, const RadiusGrid& grid,
                                    const HypothesisOptions& options = {});
HypothesisReport wittich_admissible(const LinearODE& ode, const ComplexFunc& f, const RadiusGrid& grid,
                                    const HypothesisOptions& options = {});

/// L(r, inf, A_j) / (log r + max_k log T(r, f_k)) bounded on the tail.
HypothesisReport check_coefficient_bound(std::span<const FunctionSource* const> base, const LinearODE& ode,
                                         const RadiusGrid& grid, const HypothesisOptions& options = {});

struct GrowthLinkReport {
  int p = -1;
  std::vector<double> constants;  // tail liminf of log T(r, f_k) / log M(r, A_p)
  int count = 0;
  int required = 0;
  bool pass = false;
};

/// Members of a base with log T(r, f) >= c log M(r, A_p) on the tail, c >= c_min.
GrowthLinkReport growth_link_count(const LinearODE& ode, std::span<const FunctionSource* const> base,
                                   const RadiusGrid& grid, const HypothesisOptions& options = {},
                                   double c_min = 0.05);

struct TheoremVerdict {
  std::string theorem;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<RatioCheck> hypotheses;
  std::vector<DeficiencyEstimate> corroboration;
  bool corroborated = false;
  std::vector<std::string> notes;
};

/// Evaluates the hypotheses of the standardness results for one solution.
/// `base` may be empty; verdicts that need T(r) are then inconclusive with a
/// MissingSolutionBase note.
std::vector<TheoremVerdict> standardness_verdicts(const LinearODE& ode, const FunctionSource& f,
                                                  const GrowthCurve& t_f,
                                                  std::span<const FunctionSource* const> base,
                                                  const RadiusGrid& grid, const HypothesisOptions& options = {});

nlohmann::ordered_json to_json(const ResidualReport& r);
nlohmann::ordered_json to_json(const RatioCheck& c);
nlohmann::ordered_json to_json(const HypothesisReport& r);
nlohmann::ordered_json to_json(const TwoLM2Result& r);
nlohmann::ordered_json to_json(const GrowthLinkReport& r);
nlohmann::ordered_json to_json(const TheoremVerdict& v);

}  // namespace nevlab
