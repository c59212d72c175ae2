#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nevlab/expr.hpp"
#include "nevlab/grid.hpp"
#include "nevlab/nevanlinna.hpp"

namespace nevlab {

/// Finite union of half-open intervals [a, b) with 0 <= a < b, kept sorted,
/// disjoint and with touching intervals merged.
class IntervalUnion {
 public:
  using Interval = std::pair<double, double>;

  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> intervals);

  void add(double a, double b);
  IntervalUnion unite(const IntervalUnion& other) const;
  IntervalUnion intersect(const IntervalUnion& other) const;
  /// Intersection with [lo, hi).
  IntervalUnion clip(double lo, double hi) const;

  bool contains(double r) const;
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  const std::vector<Interval>& intervals() const { return parts_; }

  double linear_measure() const;
  /// Sum of log(b / a) over the part in [1, inf).
  double log_measure() const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  void normalize();
  std::vector<Interval> parts_;
};

nlohmann::ordered_json to_json(const IntervalUnion& e);
IntervalUnion interval_union_from_json(const nlohmann::json& j);

struct DensityReport {
  double horizon = 0.0;
  double linear_measure = 0.0;  // of E in [0, R]
  double log_measure = 0.0;     // of E in [1, R]
  /// sup over r in [R/10, R] of |E in [0, r]| / r.
  double upper_linear_density = 0.0;
  /// sup over r in [max(R/10, e), R] of logmeas(E in [1, r]) / log r.
  double upper_log_density = 0.0;
};

DensityReport measures(const IntervalUnion& e, double horizon);
nlohmann::ordered_json to_json(const DensityReport& d);

/// Generators for test sets on [0, R): "comb" is the union of
/// [n period, n period + width) for n >= 1; "decay" the union of
/// [n, n + base^-n) for n >= 1.
IntervalUnion comb_set(double period, double width, double horizon);
IntervalUnion decay_set(double base, double horizon);

struct PredicateSetOptions {
  /// Endpoint accuracy relative to r.
  double rel_tol = 1e-8;
  /// Grid refinements tried before giving up on a stable interval count.
  int refinements = 2;
};

/// {r in [grid.front(), grid.back()] : pred(r)}, scanned on the grid with
/// endpoints refined by bisection. The scan is repeated on refined grids until
/// the interval count settles; PredicateOscillation otherwise.
IntervalUnion predicate_set(const std::function<bool(double)>& pred, const RadiusGrid& grid,
                            const PredicateSetOptions& options = {});

/// F, phi and xi for the Borel-type lemma, given in the log domain so that
/// towers like exp(exp(r)) stay finite.
struct BorelProblem {
  std::function<double(double)> log_F;   // r -> log F(r), must be >= 1
  std::function<double(double)> phi;     // r -> phi(r) > 0
  std::function<double(double)> xi_log;  // l -> xi(e^l) > 0
  double C = 2.0;
  double r0 = 2.0;
  double R = 100.0;
};

struct BorelReport {
  IntervalUnion exceptional;
  double lhs = 0.0;  // integral of dr / phi over E in [r0, R]
  double rhs = 0.0;  // 1/xi(e) + (1/log C) integral_e^F(R) dx / (x xi(x))
  double slack = 0.0;
  bool pass = false;
};

/// Builds E = {r : F(r + phi(r)/xi(F(r))) >= C F(r)} on [r0, R] and checks
/// the measure bound numerically. Throws InvalidArgument when C <= 1 or
/// F < e on the range.
BorelReport borel_exceptional(const BorelProblem& problem, const RadiusGrid& grid,
                              const PredicateSetOptions& options = {});

/// Integral of dl / xi_log(l) over [1, L], by substitution l = e^u.
double borel_rhs_integral(const std::function<double(double)>& xi_log, double log_F_R);

struct RadiusRow {
  double r = 0.0;
  double value = 0.0;
  double bound = 0.0;
  bool violated = false;
};

struct LemmaReport {
  std::string lemma;
  bool pass = false;
  std::vector<RadiusRow> rows;
  IntervalUnion violating;
  DensityReport violating_measures;
  double constant = 0.0;
  std::vector<std::string> notes;
};

nlohmann::ordered_json to_json(const LemmaReport& r);
nlohmann::ordered_json to_json(const BorelReport& r);

struct ZeroCountOptions {
  double m = 1.5;
  /// Pass when the violating set has at most this logarithmic measure.
  double max_log_measure = 0.5;
  FunctionalOptions functionals;
  CountOptions count;
};

/// n(r) <= 2r/(R - r) L(R, inf, g) with R = r + r / log^m L(r, inf, g).
/// Requires g entire with g(0) = 1.
LemmaReport zero_count_lemma_check(const ComplexFunc& g, const RadiusGrid& grid, const ZeroCountOptions& options = {});

struct MinModulusOptions {
  double delta = 0.1;
  double m = 1.5;
  FunctionalOptions functionals;
};

/// min log|g| >= -K (1 + log 1/delta) L log^m L with the smallest K in
/// {1, 2, 4, 8} whose violating set has upper density proxy below delta.
LemmaReport min_modulus_check(const ComplexFunc& g, const RadiusGrid& grid, const MinModulusOptions& options = {});

/// max over |z| = r of log+|f^(k)/f^(j)| against log T(r, f) + log r; the
/// constant is the largest quotient on the tail window, and the violating set
/// collects the radii where that constant does not suffice.
LemmaReport log_deriv_check(const ComplexFunc& f, int k, int j, const RadiusGrid& grid,
                            const FunctionalOptions& functionals = {});

/// {r : A(r, f) >= r^alpha} on the grid range.
IntervalUnion area_growth_set(const FunctionSource& f, double alpha, const RadiusGrid& grid,
                              const FunctionalOptions& functionals = {}, const PredicateSetOptions& options = {});

}  // namespace nevlab
