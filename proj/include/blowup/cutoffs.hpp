#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/quadrature.hpp"

namespace blowup {

namespace detail {

// The standard exponential bump h(s) = exp(-1/s) for s > 0, flat to all
// orders at s = 0, with its first two derivatives.
inline double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
inline double bump_d1(double s) { return s > 0.0 ? std::exp(-1.0 / s) / (s * s) : 0.0; }
inline double bump_d2(double s) {
  return s > 0.0 ? std::exp(-1.0 / s) * (1.0 - 2.0 * s) / (s * s * s * s) : 0.0;
}

// Smooth transition equal to 1 on (-inf, lo] and 0 on [hi, inf), built as
// u/(u+v) with u = h(hi-s), v = h(s-lo). Flat to all orders at both ends.
struct Fall {
  double lo, hi;

  double value(double s) const {
    if (s <= lo) return 1.0;
    if (s >= hi) return 0.0;
    const double u = bump(hi - s), v = bump(s - lo);
    return u / (u + v);
  }
  double d1(double s) const {
    if (s <= lo || s >= hi) return 0.0;
    const double u = bump(hi - s), v = bump(s - lo);
    const double up = -bump_d1(hi - s), vp = bump_d1(s - lo);
    const double D = u + v;
    return (up * v - u * vp) / (D * D);
  }
  double d2(double s) const {
    if (s <= lo || s >= hi) return 0.0;
    const double u = bump(hi - s), v = bump(s - lo);
    const double up = -bump_d1(hi - s), vp = bump_d1(s - lo);
    const double upp = bump_d2(hi - s), vpp = bump_d2(s - lo);
    const double D = u + v;
    return ((upp * v - u * vpp) * D - 2.0 * (up * v - u * vp) * (up + vp)) / (D * D * D);
  }
};

// Mirror image: 0 on (-inf, lo], 1 on [hi, inf).
struct Rise {
  Fall fall;
  Rise(double lo, double hi) : fall{lo, hi} {}
  double value(double s) const { return 1.0 - fall.value(s); }
  double d1(double s) const { return -fall.d1(s); }
  double d2(double s) const { return -fall.d2(s); }
};

}  // namespace detail

/// Values of phi that underflow past this floor are treated as outside the
/// support in ratio checks; both sides of the certified bounds vanish there.
inline constexpr double kSupportFloor = 1e-300;

/// The radial cutoff phi(x) = zeta(|x|)^kappa with zeta a smooth transition
/// equal to 1 on [0, 1] and 0 on [2, inf).
///
/// Because zeta is flat to all orders at the transition endpoints, the normal
/// derivative vanishes on both boundary spheres, and |laplacian phi| is
/// controlled by C_theta phi^theta on the annulus. The generic smoothstep
/// argument certifies exponents theta <= (kappa-2)/kappa.
class CutoffFamily {
 public:
  CutoffFamily(int kappa, int dim) : kappa_(kappa), dim_(dim) {
    if (kappa < 2) throw ValidationError("cutoff kappa must be >= 2");
    if (dim < 1) throw ValidationError("cutoff dimension must be >= 1");
  }

  int kappa() const { return kappa_; }
  int dim() const { return dim_; }

  /// Largest theta certified by this family: (kappa - 2)/kappa.
  double theta_capacity() const { return (kappa_ - 2.0) / kappa_; }

  double phi(double r) const { return std::pow(zeta_.value(r), kappa_); }

  double phi_d1(double r) const {
    const double z = zeta_.value(r);
    if (z <= 0.0) return 0.0;
    return kappa_ * std::pow(z, kappa_ - 1) * zeta_.d1(r);
  }

  double phi_d2(double r) const {
    const double z = zeta_.value(r);
    if (z <= 0.0) return 0.0;
    const double z1 = zeta_.d1(r), z2 = zeta_.d2(r);
    return kappa_ * (kappa_ - 1) * std::pow(z, kappa_ - 2) * z1 * z1 +
           kappa_ * std::pow(z, kappa_ - 1) * z2;
  }

  /// Radial Laplacian phi'' + (N-1)/r phi'; N phi'' in the r -> 0 limit
  /// (moot here since phi is constant near the origin).
  double phi_laplacian(double r) const {
    if (r <= zeta_.lo) return 0.0;
    return phi_d2(r) + (dim_ - 1) / r * phi_d1(r);
  }

  /// phi_R(x) = phi(x/R).
  double phi_scaled(double R, double r) const { return phi(r / R); }

  /// Laplacian of phi_R: R^{-2} (laplacian phi)(x/R).
  double phi_scaled_laplacian(double R, double r) const {
    return phi_laplacian(r / R) / (R * R);
  }

 private:
  int kappa_, dim_;
  detail::Fall zeta_{1.0, 2.0};
};

/// Builds the cutoff family certifying theta up to theta_max:
/// kappa = ceil(2/(1 - theta_max)).
inline CutoffFamily build_phi(double theta_max, int dim = 3) {
  if (!(theta_max > 0.0 && theta_max < 1.0))
    throw ValidationError("build_phi: theta_max must lie in (0, 1)");
  const int kappa = std::max(2, static_cast<int>(std::ceil(2.0 / (1.0 - theta_max))));
  return CutoffFamily(kappa, dim);
}

/// Fitted constant sup |laplacian phi| / phi^theta over the annulus grid.
/// Grid points where phi underflows past kSupportFloor are excluded.
inline double verify_phi3(const CutoffFamily& family, double theta,
                          std::span<const double> grid) {
  if (!(theta > 0.0 && theta < 1.0))
    throw ValidationError("verify_phi3: theta must lie in (0, 1)");
  if (theta > family.theta_capacity() + 1e-15)
    throw ThetaExceedsFamilyCapacity("verify_phi3: theta exceeds (kappa-2)/kappa");
  double best = 0.0;
  for (double r : grid) {
    const double p = family.phi(r);
    if (p < kSupportFloor) continue;
    best = std::max(best, std::abs(family.phi_laplacian(r)) / std::pow(p, theta));
  }
  return best;
}

inline double verify_phi3(const CutoffFamily& family, double theta, int grid_points = 4096) {
  const auto grid = uniform_grid(1.0, 2.0, grid_points);
  return verify_phi3(family, theta, grid);
}

struct ScaledPhi {
  double value;
  double laplacian;
};

/// Evaluates phi_R and its Laplacian at radius r.
inline ScaledPhi scaled_phi(const CutoffFamily& family, double R, double r) {
  if (!(R > 0.0)) throw ValidationError("scaled_phi: R must be positive");
  return {family.phi_scaled(R, r), family.phi_scaled_laplacian(R, r)};
}

/// The space-time cutoffs of the test-function argument:
///   f_T(t) = f(t/T)^{p/(p-1)}   with f = 1 on [1/2, 2/3], 0 off [1/4, 3/4],
///   g_R(x) = g(|x|^2/R^2)^{2p/(p-1)} with g = 1 on [0, 1], 0 on [2, inf),
///   psi(t, x) = f_T(t) g_R(x).
/// Evaluators are C^1 in t and C^2 in x; psi(0, x) = 0 for all x.
class SpacetimeCutoffs {
 public:
  SpacetimeCutoffs(double p, double T, double R, int dim)
      : p_(p), T_(T), R_(R), dim_(dim) {
    if (!(p > 1.0)) throw ValidationError("spacetime cutoffs need p > 1");
    if (!(T > 0.0) || !(R > 0.0)) throw ValidationError("spacetime cutoffs need T, R > 0");
    if (dim < 1) throw ValidationError("spacetime cutoffs need dim >= 1");
  }

  double p() const { return p_; }
  double T() const { return T_; }
  double R() const { return R_; }
  int dim() const { return dim_; }

  double f(double tau) const { return rise_.value(tau) * fall_.value(tau); }
  double f_d1(double tau) const {
    return rise_.d1(tau) * fall_.value(tau) + rise_.value(tau) * fall_.d1(tau);
  }
  double g(double tau) const { return g_.value(tau); }

  double f_T(double t) const { return std::pow(f(t / T_), p_ / (p_ - 1.0)); }

  /// d/dt f_T; the exponent p/(p-1) - 1 = 1/(p-1) is positive, so this
  /// vanishes smoothly at the support edges.
  double f_T_dt(double t) const {
    const double tau = t / T_;
    const double base = f(tau);
    if (base <= 0.0) return 0.0;
    const double e = p_ / (p_ - 1.0);
    return e * std::pow(base, e - 1.0) * f_d1(tau) / T_;
  }

  double g_R(double r) const { return std::pow(g_.value(r * r / (R_ * R_)), 2.0 * p_ / (p_ - 1.0)); }

  /// Laplacian of g_R in dimension dim. With G(tau) = g(tau)^{2p/(p-1)} and
  /// tau = r^2/R^2 this is (4 tau G'' + 2 N G') / R^2, a function of tau
  /// alone once multiplied by R^2.
  double g_R_laplacian(double r) const {
    const double tau = r * r / (R_ * R_);
    const double base = g_.value(tau);
    if (base <= 0.0) return 0.0;
    const double e = 2.0 * p_ / (p_ - 1.0);
    const double g1 = g_.d1(tau), g2 = g_.d2(tau);
    const double G1 = e * std::pow(base, e - 1.0) * g1;
    const double G2 = e * (e - 1.0) * std::pow(base, e - 2.0) * g1 * g1 +
                      e * std::pow(base, e - 1.0) * g2;
    return (4.0 * tau * G2 + 2.0 * dim_ * G1) / (R_ * R_);
  }

  double psi(double t, double r) const { return f_T(t) * g_R(r); }

 private:
  double p_, T_, R_;
  int dim_;
  detail::Rise rise_{0.25, 0.5};
  detail::Fall fall_{2.0 / 3.0, 0.75};
  detail::Fall g_{1.0, 2.0};
};

inline SpacetimeCutoffs build_spacetime_cutoffs(double p, double T, double R, int dim = 3) {
  return SpacetimeCutoffs(p, T, R, dim);
}

/// sup over the annulus of |laplacian g_R| R^2 / g_R^{1/p} for one R.
inline double laplacian_bound_constant(double p, double R, int dim, int grid_points = 4096) {
  const SpacetimeCutoffs c(p, 1.0, R, dim);
  double best = 0.0;
  for (double r : uniform_grid(R, std::sqrt(2.0) * R, grid_points)) {
    const double g = c.g_R(r);
    if (g < kSupportFloor) continue;
    best = std::max(best, std::abs(c.g_R_laplacian(r)) * R * R / std::pow(g, 1.0 / p));
  }
  return best;
}

/// Fitted constant of the bound |laplacian g_R| <~ R^{-2} g_R^{1/p}: the sup
/// of the ratio over all R in the grid. R^2 laplacian g_R depends on x/R
/// only, so the per-R constants agree up to grid placement.
inline double verify_laplacian_bound(double p, std::span<const double> R_grid, int dim = 3) {
  if (R_grid.empty()) throw ValidationError("verify_laplacian_bound: empty R grid");
  double best = 0.0;
  for (double R : R_grid) best = std::max(best, laplacian_bound_constant(p, R, dim));
  return best;
}

}  // namespace blowup
