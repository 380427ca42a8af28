#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/exponents.hpp"
#include "blowup/quadrature.hpp"

namespace blowup {

/// A radial spatial profile w(|x|), continuous and globally integrable.
class SpatialProfile {
 public:
  using Func = std::function<double(double)>;

  static SpatialProfile zero() { return SpatialProfile(GaussianF{0.0, 1.0}); }

  /// amplitude * exp(-(r/width)^2)
  static SpatialProfile gaussian(double amplitude, double width) {
    require(width > 0.0, "gaussian width must be positive");
    return SpatialProfile(GaussianF{amplitude, width});
  }

  /// amplitude * exp(1 - 1/(1 - (r/radius)^2)) inside r < radius, 0 outside
  static SpatialProfile compact_bump(double amplitude, double radius) {
    require(radius > 0.0, "bump radius must be positive");
    return SpatialProfile(BumpF{amplitude, radius});
  }

  /// a1 exp(-(r/w1)^2) - a2 exp(-(r/w2)^2); the integral can take either sign
  static SpatialProfile signed_gaussian_pair(double a1, double w1, double a2, double w2) {
    require(w1 > 0.0 && w2 > 0.0, "gaussian widths must be positive");
    return SpatialProfile(PairF{a1, w1, a2, w2});
  }

  /// Linear interpolation of (r, value) samples; constant below the first
  /// radius, zero beyond the last.
  static SpatialProfile sampled(std::vector<std::pair<double, double>> grid) {
    require(grid.size() >= 2, "sampled profile needs at least two points");
    SampledF s;
    for (const auto& [r, v] : grid) {
      require(s.r.empty() || r > s.r.back(), "sampled radii must be strictly increasing");
      require(r >= 0.0, "sampled radii must be >= 0");
      s.r.push_back(r);
      s.v.push_back(v);
    }
    return SpatialProfile(std::move(s));
  }

  /// Arbitrary radial evaluator with an effective support radius for
  /// quadrature truncation.
  static SpatialProfile custom(Func f, double support_radius, std::string description) {
    require(static_cast<bool>(f), "custom profile needs an evaluator");
    require(support_radius > 0.0, "custom profile needs a positive support radius");
    return SpatialProfile(CustomF{std::move(f), support_radius, std::move(description)});
  }

  double operator()(double r) const {
    return std::visit([&](const auto& f) { return eval(f, r); }, v_);
  }

  /// Radius beyond which the profile is negligible (or exactly zero).
  double support_radius() const {
    return std::visit(
        [](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, GaussianF>) return 13.0 * f.width;
          else if constexpr (std::is_same_v<T, BumpF>) return f.radius;
          else if constexpr (std::is_same_v<T, PairF>) return 13.0 * std::max(f.w1, f.w2);
          else if constexpr (std::is_same_v<T, SampledF>) return f.r.back();
          else return f.support_radius;
        },
        v_);
  }

  /// ∫_{R^N} w dx computed by radial quadrature with the surface factor.
  double integral(int dim, const QuadratureConfig& cfg = {}) const {
    const double surf = unit_sphere_surface(dim);
    auto f = [&](double r) { return (*this)(r); };
    return surf * integrate_power_weighted(f, dim - 1.0, support_radius(), cfg);
  }

  /// Sign classification of ∫ w dx: Positive, NonPositive, or Unknown when
  /// cancellation leaves the sign numerically unresolved.
  WIntegralSign integral_sign(int dim, const QuadratureConfig& cfg = {}) const {
    const double surf = unit_sphere_surface(dim);
    auto fabsval = [&](double r) { return std::abs((*this)(r)); };
    const double mass = surf * integrate_power_weighted(fabsval, dim - 1.0, support_radius(), cfg);
    const double I = integral(dim, cfg);
    const double tol = 1e-10 * mass;
    if (I > tol) return WIntegralSign::Positive;
    if (I < -tol || mass == 0.0 || I <= 0.0) return WIntegralSign::NonPositive;
    return WIntegralSign::Unknown;
  }

  std::string describe() const {
    char buf[128];
    return std::visit(
        [&](const auto& f) -> std::string {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, GaussianF>) {
            if (f.amplitude == 0.0) return "zero";
            std::snprintf(buf, sizeof buf, "gaussian(amplitude=%g,width=%g)", f.amplitude, f.width);
          } else if constexpr (std::is_same_v<T, BumpF>) {
            std::snprintf(buf, sizeof buf, "compact_bump(amplitude=%g,radius=%g)", f.amplitude,
                          f.radius);
          } else if constexpr (std::is_same_v<T, PairF>) {
            std::snprintf(buf, sizeof buf, "signed_gaussian_pair(a1=%g,w1=%g,a2=%g,w2=%g)", f.a1,
                          f.w1, f.a2, f.w2);
          } else if constexpr (std::is_same_v<T, SampledF>) {
            std::snprintf(buf, sizeof buf, "sampled(%zu points)", f.r.size());
          } else {
            return f.description;
          }
          return buf;
        },
        v_);
  }

 private:
  struct GaussianF { double amplitude, width; };
  struct BumpF { double amplitude, radius; };
  struct PairF { double a1, w1, a2, w2; };
  struct SampledF { std::vector<double> r, v; };
  struct CustomF { Func f; double support_radius; std::string description; };
  using V = std::variant<GaussianF, BumpF, PairF, SampledF, CustomF>;

  explicit SpatialProfile(V v) : v_(std::move(v)) {}

  static void require(bool ok, const char* msg) {
    if (!ok) throw ValidationError(msg);
  }

  static double eval(const GaussianF& f, double r) {
    const double z = r / f.width;
    return f.amplitude * std::exp(-z * z);
  }
  static double eval(const BumpF& f, double r) {
    const double z = r / f.radius;
    if (z >= 1.0) return 0.0;
    return f.amplitude * std::exp(1.0 - 1.0 / (1.0 - z * z));
  }
  static double eval(const PairF& f, double r) {
    const double z1 = r / f.w1, z2 = r / f.w2;
    return f.a1 * std::exp(-z1 * z1) - f.a2 * std::exp(-z2 * z2);
  }
  static double eval(const SampledF& f, double r) {
    if (r <= f.r.front()) return f.v.front();
    if (r >= f.r.back()) return 0.0;
    auto it = std::lower_bound(f.r.begin(), f.r.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - f.r.begin());
    const double w = (r - f.r[i - 1]) / (f.r[i] - f.r[i - 1]);
    return (1.0 - w) * f.v[i - 1] + w * f.v[i];
  }
  static double eval(const CustomF& f, double r) { return f.f(r); }

  V v_;
};

}  // namespace blowup
