#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "blowup/forcing.hpp"
#include "blowup/solver.hpp"
#include "blowup/spatial.hpp"

namespace testutil {

// Fourth-order central differences, used as oracles against the analytic
// derivatives in the library.
inline double fd_d1(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double fd_d2(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
         (12 * h * h);
}

// Synthetic trace with snapshots u(r, t) on a uniform grid; for exercising
// the verification functionals without running the solver.
inline blowup::SolutionTrace make_trace(int N, double alpha, double p, double R_max, int M,
                                        const std::vector<double>& times,
                                        const std::function<double(double, double)>& u_rt,
                                        blowup::ForcingProfile forcing =
                                            blowup::ForcingProfile::constant(0.0),
                                        blowup::SpatialProfile w = blowup::SpatialProfile::zero()) {
  blowup::SolutionTrace trace;
  trace.problem.N = N;
  trace.problem.alpha = alpha;
  trace.problem.p = p;
  trace.problem.R_max = R_max;
  trace.problem.T_end = times.back();
  trace.problem.forcing = std::move(forcing);
  trace.problem.w = std::move(w);
  trace.solver.M = M;
  const double h = R_max / M;
  for (int i = 0; i <= M; ++i) trace.r.push_back(i * h);
  for (double t : times) {
    trace.times.push_back(t);
    std::vector<double> snap(trace.r.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < trace.r.size(); ++i) {
      snap[i] = u_rt(trace.r[i], t);
      sup = std::max(sup, std::abs(snap[i]));
    }
    trace.snapshots.push_back(std::move(snap));
    trace.boundary_monitor.push_back(0.0);
    trace.supnorm_history.emplace_back(t, sup);
  }
  return trace;
}

// a(t) = 1/t as sampled data on a dense logarithmic grid. The paper-style
// power family requires exponents above -1 for integrability at zero, so the
// borderline decay enters as data over the probed window.
inline blowup::ForcingProfile one_over_t_profile(double t_lo = 0.25, double t_hi = 3.0e4) {
  std::vector<std::pair<double, double>> grid;
  const int n = 20000;
  for (int i = 0; i <= n; ++i) {
    const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / n);
    grid.emplace_back(t, 1.0 / t);
  }
  return blowup::ForcingProfile::sampled(std::move(grid));
}

// Supnorm-history-only trace following the exact solution of y' = y^p from
// y(0) = 1, sampled geometrically in y up to U_max.
inline blowup::SolutionTrace ode_blowup_trace(double p, double U_max, int samples = 400) {
  blowup::SolutionTrace trace;
  trace.problem.p = p;
  trace.solver.U_max = U_max;
  const double T = 1.0 / (p - 1.0);  // blow-up time of y' = y^p, y(0) = 1
  for (int k = 0; k <= samples; ++k) {
    const double y = std::pow(U_max, static_cast<double>(k) / samples);
    const double t = T - std::pow(y, 1.0 - p) / (p - 1.0);
    trace.supnorm_history.emplace_back(t, y);
  }
  return trace;
}

}  // namespace testutil
