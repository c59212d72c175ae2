#include <algorithm>
#include <array>
#include <cmath>

#include "nevlab/deficiency.hpp"
#include "nevlab/errors.hpp"
#include "nevlab/serialize.hpp"
#include "nevlab/sets.hpp"

namespace nevlab {

namespace {

void require_normalized_entire(const ComplexFunc& g) {
  if (!is_entire(g)) throw Error(ErrorCode::InvalidArgument, "the lemma needs an entire function");
  const cplx g0 = eval_log(g, 0.0).to_complex();
  if (std::abs(g0 - 1.0) > 1e-9) throw Error(ErrorCode::InvalidArgument, "the lemma needs g(0) = 1");
}

double log_power(double l, double m) { return l > 1.0 ? std::pow(std::log(l), m) : 0.0; }

// Grid cells [r_i, r_{i+1}) whose left radius is flagged.
IntervalUnion flagged_cells(const RadiusGrid& grid, const std::vector<RadiusRow>& rows) {
  std::vector<IntervalUnion::Interval> v;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].violated) continue;
    const double r = rows[i].r;
    auto it = std::upper_bound(grid.begin(), grid.end(), r);
    const double next = it == grid.end() ? r * (1.0 + 1e-9) : *it;
    v.emplace_back(r, next);
  }
  return IntervalUnion(std::move(v));
}

int count_zeros(const ComplexFunc& g, double r, const CountOptions& o) {
  for (int k = 0; k < 4; ++k) {
    try {
      return count(g, Target::at(0.0), r * (1.0 + 1e-6 * k), o);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WindingUnstable) throw;
    }
  }
  throw Error(ErrorCode::WindingUnstable, "zero count unstable near r = " + format_number(r));
}

}  // namespace

LemmaReport zero_count_lemma_check(const ComplexFunc& g, const RadiusGrid& grid, const ZeroCountOptions& o) {
  require_normalized_entire(g);
  if (!(o.m > 1.0)) throw Error(ErrorCode::InvalidArgument, "the exponent m must exceed 1");
  const ExprSource src(g);
  LemmaReport rep;
  rep.lemma = "zero-count";
  int skipped = 0;
  for (double r : grid) {
    const double l = log_max_modulus(src, Target::infinity(), r, o.functionals).value;
    const double lp = log_power(l, o.m);
    RadiusRow row;
    row.r = r;
    row.value = count_zeros(g, r, o.count);
    if (!(lp > 0.0)) {
      // R is undefined while L(r) <= e^0; only n(r) = 0 is consistent with Jensen there.
      ++skipped;
      row.bound = kInf;
      row.violated = row.value > 0.0;
    } else {
      const double big_r = r + r / lp;
      const double l_big = log_max_modulus(src, Target::infinity(), big_r, o.functionals).value;
      row.bound = 2.0 * r / (big_r - r) * l_big;
      row.violated = row.value > row.bound;
      if (l > 1.0) rep.constant = std::max(rep.constant, row.value / (l * lp));
    }
    rep.rows.push_back(row);
  }
  rep.violating = flagged_cells(grid, rep.rows);
  rep.violating_measures = measures(rep.violating, grid.back());
  rep.pass = rep.violating.log_measure() <= o.max_log_measure;
  if (skipped) rep.notes.push_back(std::to_string(skipped) + " radii with L(r) <= 1 where R is undefined");
  rep.notes.push_back("constant is max n(r) / (L log^m L), the implicit factor of the lemma");
  return rep;
}

LemmaReport min_modulus_check(const ComplexFunc& g, const RadiusGrid& grid, const MinModulusOptions& o) {
  require_normalized_entire(g);
  if (!(o.delta > 0.0 && o.delta < 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  const ExprSource src(g);
  std::vector<double> min_log, unit;
  for (double r : grid) {
    // L(r, 0, g) = max log+ 1/|g| = -min(0, min log|g|)
    min_log.push_back(-log_max_modulus(src, Target::at(0.0), r, o.functionals).value);
    const double l = log_max_modulus(src, Target::infinity(), r, o.functionals).value;
    unit.push_back((1.0 + std::log(1.0 / o.delta)) * l * log_power(l, o.m));
  }
  LemmaReport rep;
  rep.lemma = "min-modulus";
  for (double k : std::array{1.0, 2.0, 4.0, 8.0}) {
    rep.rows.clear();
    for (std::size_t i = 0; i < grid.size(); ++i)
      rep.rows.push_back({grid[i], min_log[i], -k * unit[i], min_log[i] < -k * unit[i]});
    rep.violating = flagged_cells(grid, rep.rows);
    rep.violating_measures = measures(rep.violating, grid.back());
    rep.constant = k;
    rep.pass = rep.violating_measures.upper_linear_density < o.delta;
    if (rep.pass) break;
  }
  rep.notes.push_back("value is min(0, min log|g|) on the circle; constant is the smallest dyadic K that works");
  return rep;
}

LemmaReport log_deriv_check(const ComplexFunc& f, int k, int j, const RadiusGrid& grid,
                            const FunctionalOptions& functionals) {
  if (k <= j || j < 0) throw Error(ErrorCode::InvalidArgument, "need 0 <= j < k");
  if (!is_transcendental(f)) throw Error(ErrorCode::InvalidArgument, "the estimate is for transcendental f");
  const ComplexFunc q = (j == 0 && k == 1) ? log_derivative(f) : diff(f, k) / diff(f, j);
  const ExprSource src(q);
  const GrowthCurve t = characteristic(f, grid, functionals);
  std::vector<double> quotient;
  LemmaReport rep;
  rep.lemma = "log-deriv";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = log_max_modulus(src, Target::infinity(), grid[i], functionals).value;
    const double den = std::log(t.values[i]) + std::log(grid[i]);
    quotient.push_back(v == 0.0 ? 0.0 : (den > 0.0 ? v / den : kInf));
    rep.rows.push_back({grid[i], v, den, false});
  }
  const std::size_t start = tail_start(grid.size(), TailOptions{}.fraction);
  rep.constant = *std::max_element(quotient.begin() + static_cast<std::ptrdiff_t>(start), quotient.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rep.rows[i].bound *= rep.constant;
    rep.rows[i].violated = quotient[i] > rep.constant;
  }
  rep.violating = flagged_cells(grid, rep.rows);
  rep.violating_measures = measures(rep.violating, grid.back());
  rep.pass = std::isfinite(rep.constant);
  rep.notes.push_back("constant is the largest quotient over the tail window");
  return rep;
}

IntervalUnion area_growth_set(const FunctionSource& f, double alpha, const RadiusGrid& grid,
                              const FunctionalOptions& functionals, const PredicateSetOptions& options) {
  auto pred = [&](double r) { return area(f, r, functionals).value >= std::pow(r, alpha); };
  return predicate_set(pred, grid, options);
}

nlohmann::ordered_json to_json(const LemmaReport& r) {
  nlohmann::ordered_json j;
  j["lemma"] = r.lemma;
  j["pass"] = r.pass;
  j["constant"] = json_number(r.constant);
  j["violating_set"] = to_json(r.violating);
  j["violating_measures"] = to_json(r.violating_measures);
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"r", json_number(row.r)},
                    {"value", json_number(row.value)},
                    {"bound", json_number(row.bound)},
                    {"violated", row.violated}});
  j["notes"] = r.notes;
  return j;
}

}  // namespace nevlab
