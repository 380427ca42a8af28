#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "blowup/errors.hpp"

namespace blowup {

/// Tuning knobs for the composite quadrature rules. Panel counts scale with
/// the interval length; `feature` arguments below cap the panel width to a
/// fraction of the integrand's shortest length scale (e.g. a period).
struct QuadratureConfig {
  int min_panels = 64;
  int max_panels = 1 << 21;
  double panels_per_unit = 32.0;
  /// Size of the closed-form head cell at a power singularity, as a fraction
  /// of the interval length.
  double head_fraction = 1e-12;
};

/// Composite Simpson rule on [a, b] with n panels (2n + 1 evaluations).
template <class F>
double simpson(F&& f, double a, double b, int n) {
  if (n < 1) n = 1;
  const double h = (b - a) / (2.0 * n);
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < 2 * n; i += 2) odd += f(a + i * h);
  for (int i = 2; i < 2 * n; i += 2) even += f(a + i * h);
  return (h / 3.0) * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

inline int panel_count(const QuadratureConfig& cfg, double length, double feature = 0.0) {
  double want = length * cfg.panels_per_unit;
  if (feature > 0.0) want = std::max(want, length / feature * 24.0);
  want = std::clamp(want, static_cast<double>(cfg.min_panels),
                    static_cast<double>(cfg.max_panels));
  return static_cast<int>(std::ceil(want));
}

/// Composite Simpson with the panel count scaled to the interval length.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {},
                 double feature = 0.0) {
  if (!(b > a)) return 0.0;
  return simpson(f, a, b, panel_count(cfg, b - a, feature));
}

/// ∫_0^b f(r) r^beta dr for f continuous at 0 and beta > -1.
///
/// The head cell [0, eps] uses the closed form of the leading power,
/// f(0) eps^{beta+1}/(beta+1); the remainder is integrated on dyadic spans so
/// the panel grading follows the power weight. For nonnegative integer beta
/// the integrand is smooth and a plain composite rule is used.
template <class F>
double integrate_power_weighted(F&& f, double beta, double b,
                                const QuadratureConfig& cfg = {},
                                double feature = 0.0) {
  if (beta <= -1.0)
    throw QuadratureFailure("integrate_power_weighted: exponent " +
                            std::to_string(beta) + " is not integrable at 0");
  if (!(b > 0.0)) return 0.0;
  auto weighted = [&](double r) { return f(r) * std::pow(r, beta); };
  if (beta == std::floor(beta) && beta >= 0.0)
    return integrate(weighted, 0.0, b, cfg, feature);

  const double eps = b * cfg.head_fraction;
  double total = f(0.0) * std::pow(eps, beta + 1.0) / (beta + 1.0);
  double lo = eps;
  while (lo < b) {
    const double hi = std::min(2.0 * lo, b);
    int n = std::max(64, panel_count(cfg, hi - lo, feature) / 16);
    total += simpson(weighted, lo, hi, n);
    lo = hi;
  }
  return total;
}

/// Trapezoid rule over tabulated (x, y) pairs with arbitrary spacing.
inline double trapezoid(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    sum += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  return sum;
}

/// Trapezoid weights for a uniform grid of m+1 nodes with spacing h.
inline std::vector<double> trapezoid_weights(std::size_t nodes, double h) {
  std::vector<double> w(nodes, h);
  if (!w.empty()) {
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
  }
  return w;
}

/// Surface area of the unit sphere in R^N: N pi^{N/2} / Gamma(N/2 + 1).
inline double unit_sphere_surface(int dim) {
  if (dim < 1) throw InvalidParameters("unit_sphere_surface: dim must be >= 1");
  return dim * std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line through (x_i, y_i).
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) throw InsufficientGrid("fit_line: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

/// Golden-section search for the minimizer of a unimodal f on [a, b].
template <class F>
double golden_section_minimize(F&& f, double a, double b, int iters = 200) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && b - a > 0.0; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

/// n equally spaced points covering [a, b] inclusive.
inline std::vector<double> uniform_grid(double a, double b, int n) {
  if (n < 2) throw InvalidParameters("uniform_grid: need n >= 2");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

/// n logarithmically spaced points covering [a, b] inclusive, a > 0.
inline std::vector<double> log_grid(double a, double b, int n) {
  if (!(a > 0.0) || !(b > a) || n < 2)
    throw InvalidParameters("log_grid: need 0 < a < b and n >= 2");
  std::vector<double> g(n);
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < n; ++i) g[i] = std::exp(la + (lb - la) * i / (n - 1));
  return g;
}

}  // namespace blowup
