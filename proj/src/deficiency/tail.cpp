#include <algorithm>
#include <cmath>

#include "nevlab/deficiency.hpp"
#include "nevlab/errors.hpp"

namespace nevlab {

std::size_t tail_start(std::size_t n, double fraction) {
  if (n == 0) return 0;
  if (!(fraction > 0.0 && fraction < 1.0)) throw Error(ErrorCode::InvalidArgument, "tail fraction must lie in (0, 1)");
  // Small slack so that 0.75 * 4k lands on 3k despite rounding.
  const double x = (1.0 - fraction) * static_cast<double>(n - 1);
  return std::min(n - 1, static_cast<std::size_t>(std::ceil(x - 1e-9)));
}

TailStats tail_stats(const GrowthCurve& curve, const TailOptions& options) {
  const std::size_t n = curve.size();
  const std::size_t start = tail_start(n, options.fraction);
  TailStats s;
  s.start = start;
  s.points = n - start;
  if (n == 0 || s.points < options.min_points)
    throw Error(ErrorCode::TailTooShort, "tail window holds " + std::to_string(s.points) + " points, need " +
                                             std::to_string(options.min_points));
  s.liminf = kInf;
  s.limsup = -kInf;
  for (std::size_t i = start; i < n; ++i) {
    s.liminf = std::min(s.liminf, curve.values[i]);
    s.limsup = std::max(s.limsup, curve.values[i]);
  }
  return s;
}

double tail_log_slope(const GrowthCurve& curve, const TailOptions& options, bool log_log_r) {
  const TailStats s = tail_stats(curve, options);
  std::vector<double> xs, ys;
  for (std::size_t i = s.start; i < curve.size(); ++i) {
    const double r = curve.grid[i];
    const double v = curve.values[i];
    if (!(v > 0.0) || !std::isfinite(v)) continue;
    if (log_log_r && !(r > 1.0)) continue;
    xs.push_back(log_log_r ? std::log(std::log(r)) : std::log(r));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= xs.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

GrowthCurve ratio_curve(const GrowthCurve& numerator, const GrowthCurve& denominator, const std::string& label) {
  if (numerator.size() != denominator.size())
    throw Error(ErrorCode::InvalidArgument, "ratio of curves on different grids");
  GrowthCurve out;
  out.label = label;
  out.grid = numerator.grid;
  for (std::size_t i = 0; i < numerator.size(); ++i) {
    const double d = denominator.values[i];
    const double v = numerator.values[i] / d;
    out.push(v, worst(numerator.flags[i], denominator.flags[i]), numerator.radii_used[i]);
  }
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Supported: return "supported";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

GrowthCurve truncated(const GrowthCurve& c, std::size_t n) {
  GrowthCurve out;
  out.label = c.label;
  out.grid = c.grid.up_to(c.grid[n - 1]);
  out.values.assign(c.values.begin(), c.values.begin() + n);
  out.flags.assign(c.flags.begin(), c.flags.begin() + n);
  out.radii_used.assign(c.radii_used.begin(), c.radii_used.begin() + n);
  return out;
}

}  // namespace

PredicateResult little_o(const GrowthCurve& ratio, const PredicateOptions& options) {
  const TailStats full = tail_stats(ratio, options.tail);
  PredicateResult out;
  out.tail_liminf = full.liminf;
  out.tail_limsup = full.limsup;
  // The same window on the grid without its last quarter: an o(1) ratio must
  // not grow when the grid is extended.
  const std::size_t shorter = tail_start(ratio.size(), 0.25) + 1;
  TailOptions relaxed = options.tail;
  relaxed.min_points = 2;
  out.truncated_limsup = tail_stats(truncated(ratio, shorter), relaxed).limsup;
  const bool small = full.limsup <= options.little_o_threshold;
  const bool settling = full.limsup <= out.truncated_limsup * (1.0 + 1e-9) + 1e-12;
  if (small && settling) {
    out.verdict = Verdict::Supported;
    out.note = "tail limsup below threshold and not increasing under extension";
  } else if (full.liminf >= 1.0 / options.comparability_constant) {
    out.verdict = Verdict::Violated;
    out.note = "ratio stays bounded below on the tail";
  } else {
    out.note = small ? "tail limsup small but increased under extension" : "tail limsup above threshold";
  }
  return out;
}

PredicateResult comparable(const GrowthCurve& ratio, const PredicateOptions& options) {
  const TailStats s = tail_stats(ratio, options.tail);
  const double c = options.comparability_constant;
  PredicateResult out;
  out.tail_liminf = s.liminf;
  out.tail_limsup = s.limsup;
  out.truncated_limsup = s.limsup;
  if (s.liminf >= 1.0 / c && s.limsup <= c) {
    out.verdict = Verdict::Supported;
    out.note = "tail within [1/C, C]";
  } else if (s.limsup < 1.0 / c || s.liminf > c) {
    out.verdict = Verdict::Violated;
    out.note = "tail entirely outside [1/C, C]";
  } else {
    out.note = "tail leaves [1/C, C]";
  }
  return out;
}

PredicateResult bounded(const GrowthCurve& ratio, const PredicateOptions& options) {
  const TailStats s = tail_stats(ratio, options.tail);
  PredicateResult out;
  out.tail_liminf = s.liminf;
  out.tail_limsup = s.limsup;
  out.truncated_limsup = s.limsup;
  if (s.limsup <= options.comparability_constant) {
    out.verdict = Verdict::Supported;
    out.note = "tail limsup at most C";
  } else {
    out.note = "tail limsup above C";
  }
  return out;
}

}  // namespace nevlab
