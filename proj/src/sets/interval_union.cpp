#include <algorithm>
#include <cmath>
#include <numbers>

#include "nevlab/errors.hpp"
#include "nevlab/serialize.hpp"
#include "nevlab/sets.hpp"

namespace nevlab {

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) : parts_(std::move(intervals)) { normalize(); }

void IntervalUnion::normalize() {
  for (const auto& [a, b] : parts_)
    if (!(a >= 0.0) || std::isnan(b)) throw Error(ErrorCode::InvalidArgument, "intervals must lie in [0, inf)");
  std::erase_if(parts_, [](const Interval& p) { return !(p.first < p.second); });
  std::sort(parts_.begin(), parts_.end());
  std::vector<Interval> merged;
  for (const auto& p : parts_) {
    if (!merged.empty() && p.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, p.second);
    else
      merged.push_back(p);
  }
  parts_ = std::move(merged);
}

void IntervalUnion::add(double a, double b) {
  parts_.emplace_back(a, b);
  normalize();
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalUnion(std::move(all));
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const double a = std::max(parts_[i].first, other.parts_[j].first);
    const double b = std::min(parts_[i].second, other.parts_[j].second);
    if (a < b) out.emplace_back(a, b);
    if (parts_[i].second < other.parts_[j].second)
      ++i;
    else
      ++j;
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::clip(double lo, double hi) const {
  return intersect(IntervalUnion({{std::max(lo, 0.0), hi}}));
}

bool IntervalUnion::contains(double r) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), r,
                             [](double x, const Interval& p) { return x < p.first; });
  if (it == parts_.begin()) return false;
  --it;
  return r < it->second;
}

double IntervalUnion::linear_measure() const {
  double s = 0.0;
  for (const auto& [a, b] : parts_) s += b - a;
  return s;
}

double IntervalUnion::log_measure() const {
  double s = 0.0;
  for (const auto& [a, b] : parts_) {
    if (b <= 1.0) continue;
    s += std::log(b / std::max(a, 1.0));
  }
  return s;
}

nlohmann::ordered_json to_json(const IntervalUnion& e) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& [a, b] : e.intervals()) j.push_back({json_number(a), json_number(b)});
  return j;
}

IntervalUnion interval_union_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "an interval union is a JSON array of [a, b] pairs");
  std::vector<IntervalUnion::Interval> v;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw Error(ErrorCode::InvalidArgument, "interval entries must be [a, b] number pairs");
    v.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return IntervalUnion(std::move(v));
}

DensityReport measures(const IntervalUnion& e, double horizon) {
  if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidArgument, "density horizon must be positive");
  DensityReport d;
  d.horizon = horizon;
  const IntervalUnion part = e.clip(0.0, horizon);
  d.linear_measure = part.linear_measure();
  d.log_measure = part.log_measure();

  // Both quotients increase on E and decrease off it, so the sup over the
  // window sits at a window end or at the right end of a component.
  const double lo = horizon / 10.0;
  std::vector<double> cand{lo, horizon};
  for (const auto& [a, b] : part.intervals())
    if (b >= lo) cand.push_back(b);

  for (double r : cand) {
    if (r < lo || r > horizon || r <= 0.0) continue;
    d.upper_linear_density = std::max(d.upper_linear_density, part.clip(0.0, r).linear_measure() / r);
  }
  const double log_lo = std::max(lo, std::numbers::e);
  if (horizon >= log_lo) {
    cand.push_back(log_lo);
    for (double r : cand) {
      if (r < log_lo || r > horizon) continue;
      d.upper_log_density = std::max(d.upper_log_density, part.clip(0.0, r).log_measure() / std::log(r));
    }
  }
  d.upper_linear_density = std::min(d.upper_linear_density, 1.0);
  d.upper_log_density = std::min(d.upper_log_density, 1.0);
  return d;
}

nlohmann::ordered_json to_json(const DensityReport& d) {
  nlohmann::ordered_json j;
  j["horizon"] = json_number(d.horizon);
  j["linear_measure"] = json_number(d.linear_measure);
  j["log_measure"] = json_number(d.log_measure);
  j["upper_linear_density"] = json_number(d.upper_linear_density);
  j["upper_log_density"] = json_number(d.upper_log_density);
  return j;
}

IntervalUnion comb_set(double period, double width, double horizon) {
  if (!(period > 0.0) || !(width > 0.0)) throw Error(ErrorCode::InvalidArgument, "comb period and width must be positive");
  std::vector<IntervalUnion::Interval> v;
  for (double n = 1.0; n * period < horizon; n += 1.0)
    v.emplace_back(n * period, std::min(n * period + width, horizon));
  return IntervalUnion(std::move(v));
}

IntervalUnion decay_set(double base, double horizon) {
  if (!(base > 1.0)) throw Error(ErrorCode::InvalidArgument, "decay base must exceed 1");
  std::vector<IntervalUnion::Interval> v;
  for (double n = 1.0; n < horizon; n += 1.0) v.emplace_back(n, std::min(n + std::pow(base, -n), horizon));
  return IntervalUnion(std::move(v));
}

namespace {

double bisect(const std::function<bool(double)>& pred, double lo, double hi, bool at_lo, double rel_tol) {
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid) == at_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

IntervalUnion scan(const std::function<bool(double)>& pred, const RadiusGrid& grid, double rel_tol) {
  std::vector<IntervalUnion::Interval> v;
  bool prev = pred(grid[0]);
  double start = grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const bool cur = pred(grid[i]);
    if (cur != prev) {
      const double t = bisect(pred, grid[i - 1], grid[i], prev, rel_tol);
      if (cur)
        start = t;
      else
        v.emplace_back(start, t);
      prev = cur;
    }
  }
  if (prev) v.emplace_back(start, grid.back());
  return IntervalUnion(std::move(v));
}

}  // namespace

IntervalUnion predicate_set(const std::function<bool(double)>& pred, const RadiusGrid& grid,
                            const PredicateSetOptions& options) {
  if (grid.size() < 2) throw Error(ErrorCode::InvalidArgument, "predicate scan needs at least two radii");
  IntervalUnion prev = scan(pred, grid, options.rel_tol);
  RadiusGrid g = grid;
  for (int k = 0; k < options.refinements; ++k) {
    g = g.refined();
    IntervalUnion cur = scan(pred, g, options.rel_tol);
    if (cur.size() == prev.size()) return cur;
    prev = std::move(cur);
  }
  throw Error(ErrorCode::PredicateOscillation,
              "interval count still changing after " + std::to_string(options.refinements) + " grid refinements");
}

}  // namespace nevlab
