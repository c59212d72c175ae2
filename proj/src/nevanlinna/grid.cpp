#include "nevlab/grid.hpp"

#include <algorithm>
#include <cmath>

#include "nevlab/errors.hpp"

namespace nevlab {

RadiusGrid::RadiusGrid(std::vector<double> radii, Spacing spacing)
    : radii_(std::move(radii)), spacing_(spacing) {}

RadiusGrid RadiusGrid::geometric(double r_min, double r_max, double points_per_decade) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !(points_per_decade > 0.0))
    throw Error(ErrorCode::InvalidArgument, "geometric grid needs 0 < r_min < r_max and a positive density");
  const double decades = std::log10(r_max / r_min);
  const auto k = static_cast<std::size_t>(std::max(1.0, std::round(points_per_decade * decades)));
  std::vector<double> radii(k + 1);
  const double log_ratio = std::log(r_max / r_min);
  for (std::size_t i = 0; i <= k; ++i)
    radii[i] = r_min * std::exp(log_ratio * static_cast<double>(i) / static_cast<double>(k));
  radii.front() = r_min;
  radii.back() = r_max;
  return RadiusGrid(std::move(radii), Spacing::Geometric);
}

RadiusGrid RadiusGrid::linear(double r_min, double r_max, std::size_t intervals) {
  if (!(r_min > 0.0) || !(r_max > r_min) || intervals == 0)
    throw Error(ErrorCode::InvalidArgument, "linear grid needs 0 < r_min < r_max and at least one interval");
  std::vector<double> radii(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i)
    radii[i] = r_min + (r_max - r_min) * static_cast<double>(i) / static_cast<double>(intervals);
  radii.back() = r_max;
  return RadiusGrid(std::move(radii), Spacing::Linear);
}

RadiusGrid RadiusGrid::from_radii(std::vector<double> radii, Spacing spacing) {
  if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "empty radius list");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i]))
      throw Error(ErrorCode::InvalidArgument, "radii must be finite and positive");
    if (i && !(radii[i] > radii[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "radii must be strictly increasing");
  }
  return RadiusGrid(std::move(radii), spacing);
}

RadiusGrid RadiusGrid::refined() const {
  if (radii_.size() < 2) return *this;
  std::vector<double> out;
  out.reserve(2 * radii_.size() - 1);
  for (std::size_t i = 0; i + 1 < radii_.size(); ++i) {
    out.push_back(radii_[i]);
    out.push_back(spacing_ == Spacing::Geometric ? std::sqrt(radii_[i] * radii_[i + 1])
                                                 : 0.5 * (radii_[i] + radii_[i + 1]));
  }
  out.push_back(radii_.back());
  return RadiusGrid(std::move(out), spacing_);
}

RadiusGrid RadiusGrid::up_to(double r_max) const {
  std::vector<double> out;
  for (double r : radii_)
    if (r <= r_max) out.push_back(r);
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "no radii below the requested bound");
  return RadiusGrid(std::move(out), spacing_);
}

std::string_view to_string(Accuracy a) {
  switch (a) {
    case Accuracy::Ok: return "ok";
    case Accuracy::Perturbed: return "perturbed";
    case Accuracy::Capped: return "capped";
    case Accuracy::NotConverged: return "not_converged";
  }
  return "unknown";
}

Accuracy worst(Accuracy a, Accuracy b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Target Target::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "inf" || s == "oo" || s == "infinity" || s == "\xE2\x88\x9E") return infinity();
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty target");
  // a, bi, a+bi, a-bi, i, -i
  auto parse_real = [&](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad target '" + std::string(text) + "'");
    }
    if (used != t.size()) throw Error(ErrorCode::InvalidArgument, "bad target '" + std::string(text) + "'");
    return v;
  };
  if (s.back() != 'i') return at({parse_real(s), 0.0});
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return at({0.0, parse_real(body)});
  return at({parse_real(body.substr(0, split)), parse_real(body.substr(split))});
}

std::string Target::to_string() const {
  if (is_infinity()) return "inf";
  const auto a = *point_;
  if (a.imag() == 0.0) return format_double(a.real());
  if (a.real() == 0.0) return format_double(a.imag()) + "i";
  return format_double(a.real()) + (a.imag() < 0.0 ? "-" : "+") + format_double(std::abs(a.imag())) + "i";
}

void GrowthCurve::push(double value, Accuracy flag, double radius_used) {
  values.push_back(value);
  flags.push_back(flag);
  radii_used.push_back(radius_used);
}

bool GrowthCurve::nondecreasing(double tol) const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1] - tol * std::max(1.0, std::abs(values[i - 1]))) return false;
  return true;
}

Accuracy GrowthCurve::worst_flag() const {
  Accuracy w = Accuracy::Ok;
  for (auto f : flags) w = worst(w, f);
  return w;
}

}  // namespace nevlab
