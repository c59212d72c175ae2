#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nevlab {

enum class Spacing { Linear, Geometric };

/// Strictly increasing positive radii.
class RadiusGrid {
 public:
  RadiusGrid() = default;

  /// r_k = r_min (r_max/r_min)^(k/K) with K = round(points_per_decade * decades).
  static RadiusGrid geometric(double r_min, double r_max, double points_per_decade);
  /// intervals + 1 equally spaced radii.
  static RadiusGrid linear(double r_min, double r_max, std::size_t intervals);
  static RadiusGrid from_radii(std::vector<double> radii, Spacing spacing = Spacing::Geometric);

  /// Same endpoints with twice as many intervals; every old radius is kept.
  RadiusGrid refined() const;
  /// Radii not exceeding r_max.
  RadiusGrid up_to(double r_max) const;

  const std::vector<double>& radii() const { return radii_; }
  Spacing spacing() const { return spacing_; }
  std::size_t size() const { return radii_.size(); }
  bool empty() const { return radii_.empty(); }
  double operator[](std::size_t i) const { return radii_[i]; }
  double front() const { return radii_.front(); }
  double back() const { return radii_.back(); }
  auto begin() const { return radii_.begin(); }
  auto end() const { return radii_.end(); }

 private:
  RadiusGrid(std::vector<double> radii, Spacing spacing);
  std::vector<double> radii_;
  Spacing spacing_ = Spacing::Geometric;
};

enum class Accuracy { Ok, Perturbed, Capped, NotConverged };

std::string_view to_string(Accuracy a);
Accuracy worst(Accuracy a, Accuracy b);

/// A value a in the extended plane; no point means infinity.
class Target {
 public:
  static Target infinity() { return Target(); }
  static Target at(std::complex<double> a) { return Target(a); }
  /// "inf", "oo", "∞" or a complex literal such as 1, -2.5, i, 2+3i.
  static Target parse(std::string_view text);

  bool is_infinity() const { return !point_.has_value(); }
  std::complex<double> value() const { return *point_; }
  std::string to_string() const;

 private:
  Target() = default;
  explicit Target(std::complex<double> a) : point_(a) {}
  std::optional<std::complex<double>> point_;
};

/// A functional sampled over a radius grid.
struct GrowthCurve {
  std::string label;
  RadiusGrid grid;
  std::vector<double> values;
  std::vector<Accuracy> flags;
  /// Radius actually used at each grid point (differs after a perturbation).
  std::vector<double> radii_used;

  std::size_t size() const { return values.size(); }
  void push(double value, Accuracy flag, double radius_used);
  /// Drops smaller than tol * max(1, |value|) are ignored.
  bool nondecreasing(double tol = 0.0) const;
  Accuracy worst_flag() const;
};

}  // namespace nevlab
