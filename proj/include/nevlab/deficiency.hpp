#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nevlab/expr.hpp"
#include "nevlab/grid.hpp"
#include "nevlab/nevanlinna.hpp"
#include "nevlab/source.hpp"

namespace nevlab {

struct TailOptions {
  double fraction = 0.25;
  std::size_t min_points = 20;
};

/// First index of the tail window: ceil((1 - fraction)(n - 1)). For geometric
/// grids refined by doubling the window starts at the same radius.
std::size_t tail_start(std::size_t n, double fraction);

struct TailStats {
  double liminf = 0.0;
  double limsup = 0.0;
  std::size_t start = 0;
  std::size_t points = 0;
};

/// Min and max of the curve over its tail window. Throws TailTooShort.
TailStats tail_stats(const GrowthCurve& curve, const TailOptions& options = {});

/// Least-squares slope of log(curve) against log(r) (or log log r) over the tail.
double tail_log_slope(const GrowthCurve& curve, const TailOptions& options, bool log_log_r);

/// Pointwise numerator / denominator on a shared grid.
GrowthCurve ratio_curve(const GrowthCurve& numerator, const GrowthCurve& denominator, const std::string& label);

enum class Verdict { Supported, Violated, Inconclusive };
std::string_view to_string(Verdict v);

struct PredicateResult {
  Verdict verdict = Verdict::Inconclusive;
  double tail_liminf = 0.0;
  double tail_limsup = 0.0;
  /// Tail limsup of the same ratio with the last quarter of the grid removed.
  double truncated_limsup = 0.0;
  std::string note;
};

struct PredicateOptions {
  TailOptions tail;
  double little_o_threshold = 0.05;
  double comparability_constant = 10.0;
};

/// "ratio = o(1)": supported when the tail limsup is at most the threshold and
/// does not exceed the tail limsup of the grid shortened by a quarter;
/// violated when the tail liminf is at least 1/C.
PredicateResult little_o(const GrowthCurve& ratio, const PredicateOptions& options = {});

/// "ratio is bounded above and below": supported when the whole tail lies in
/// [1/C, C]; violated when it lies entirely outside that band.
PredicateResult comparable(const GrowthCurve& ratio, const PredicateOptions& options = {});

/// "ratio is bounded": supported when the tail limsup is at most C.
PredicateResult bounded(const GrowthCurve& ratio, const PredicateOptions& options = {});

enum class DeficiencyKind { N, P, E, V };
std::string_view to_string(DeficiencyKind k);
DeficiencyKind parse_deficiency_kind(std::string_view text);

struct EstimateOptions {
  FunctionalOptions functionals;
  TailOptions tail;
  double cap = 1e6;
};

struct DeficiencyEstimate {
  DeficiencyKind kind = DeficiencyKind::N;
  Target target = Target::infinity();
  GrowthCurve ratio;
  double tail_liminf = 0.0;
  double tail_limsup = 0.0;
  double tail_fraction = 0.25;
  /// tail_liminf for N, P, E; tail_limsup for V; capped at EstimateOptions::cap.
  double estimate = 0.0;
  std::vector<std::string> flags;
};

/// Builds the estimate from an already computed numerator (m or L) and
/// denominator (T or A) curve.
DeficiencyEstimate estimate_from_curves(DeficiencyKind kind, Target a, const GrowthCurve& numerator,
                                        const GrowthCurve& denominator, const EstimateOptions& options = {});

/// Denominator T includes N(r, inf, f) for functions with poles.
DeficiencyEstimate estimate(DeficiencyKind kind, const ComplexFunc& f, Target a, const RadiusGrid& grid,
                            const EstimateOptions& options = {});
/// For pole-free sources such as numeric ODE solutions (T = m(r, inf, f)).
DeficiencyEstimate estimate(DeficiencyKind kind, const FunctionSource& f, Target a, const RadiusGrid& grid,
                            const EstimateOptions& options = {});

nlohmann::ordered_json to_json(const DeficiencyEstimate& e);

struct CheckReport {
  std::string name;
  bool applicable = true;
  bool pass = true;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  std::string note;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const CheckReport& r);

struct SumCheckOptions {
  double tolerance = 0.05;
};

/// Sum over targets: at most 2 for kind N, at most 2pi for kind E unless a
/// single target alone exceeds 2pi. Kinds P and V have no sum bound and are
/// reported as informational. Throws MixedKinds.
CheckReport sum_check(const std::vector<DeficiencyEstimate>& estimates, const SumCheckOptions& options = {});

/// Order estimate: tail slope of log T against log r, capped at 1e6.
double order_estimate(const GrowthCurve& characteristic, const TailOptions& options = {});
/// Logarithmic order: tail slope of log T against log log r.
double log_order_estimate(const GrowthCurve& characteristic, const TailOptions& options = {});

struct BoundCheckOptions {
  EstimateOptions estimate;
  double tolerance = 0.05;
};

/// Applicable when the measured order is at least 1/2; then delta_E(a) <= pi.
CheckReport bergweiler_bock_check(const ComplexFunc& f, Target a, const RadiusGrid& grid,
                                  const BoundCheckOptions& options = {});

/// delta_E(a) <= pi sqrt(delta_V (2 - delta_V)) for functions with T(r) ~ C r.
/// Applicable when the measured order lies within 0.15 of 1.
CheckReport marchenko_bound_check(const ComplexFunc& f, Target a, const RadiusGrid& grid,
                                  const BoundCheckOptions& options = {});

}  // namespace nevlab
