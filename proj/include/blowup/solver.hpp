#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/forcing.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/spatial.hpp"

namespace blowup {

/// One instance of the forced problem, restricted to radially symmetric data
/// on a truncated domain [0, R_max] with homogeneous Dirichlet boundary.
struct ProblemSpec {
  int N = 1;
  double alpha = 0.0;
  double p = 2.0;
  ForcingProfile forcing = ForcingProfile::constant(0.0);
  SpatialProfile w = SpatialProfile::zero();
  SpatialProfile u0 = SpatialProfile::zero();
  double R_max = 20.0;
  double T_end = 10.0;

  void validate() const {
    if (N < 1) throw ValidationError("problem: N must be >= 1");
    if (!(p > 1.0)) throw ValidationError("problem: p must exceed 1");
    if (!(alpha > -2.0)) throw ValidationError("problem: alpha must exceed -2");
    if (!(R_max > 0.0)) throw ValidationError("problem: R_max must be positive");
    if (!(T_end > 0.0)) throw ValidationError("problem: T_end must be positive");
  }
};

struct SolverConfig {
  int M = 512;                 // radial cell count
  double cfl_safety = 0.2;     // fraction of both stability limits
  double dt_min = 0.0;         // 0 selects the automatic floor
  double U_max = 1e8;          // blow-up threshold
  int snapshot_stride = 32;    // steps between stored snapshots

  void validate() const {
    if (M < 64) throw ValidationError("solver: M must be >= 64");
    if (!(cfl_safety > 0.0 && cfl_safety < 1.0))
      throw ValidationError("solver: cfl_safety must lie in (0, 1)");
    if (dt_min < 0.0) throw ValidationError("solver: dt_min must be >= 0");
    if (!(U_max > 0.0)) throw ValidationError("solver: U_max must be positive");
    if (snapshot_stride < 1) throw ValidationError("solver: snapshot_stride must be >= 1");
  }
};

/// Time-indexed radial snapshots plus per-step step-size and sup-norm logs.
struct SolutionTrace {
  ProblemSpec problem;
  SolverConfig solver;
  std::vector<double> r;  // grid nodes, M + 1 of them

  std::vector<double> times;
  std::vector<std::vector<double>> snapshots;
  std::vector<double> boundary_monitor;  // max |u| on the outer 10%, per snapshot

  std::vector<std::pair<double, double>> supnorm_history;  // (t, max |u|) per step
  std::vector<std::pair<double, double>> dt_history;       // (t, dt) per step
  std::vector<double> boundary_history;                    // per step, for the trace CSV
};

enum class VerdictClass { BlownUp, GlobalUpTo, Inconclusive };

inline const char* to_string(VerdictClass c) {
  switch (c) {
    case VerdictClass::BlownUp: return "blown_up";
    case VerdictClass::GlobalUpTo: return "global_up_to";
    default: return "inconclusive";
  }
}

/// Classification of a run. BlownUp requires the sup-norm to exceed U_max,
/// the step size to have contracted below 10 dt_min, and a positive fitted
/// growth rate; anything weaker is Inconclusive with a reason.
struct BlowupVerdict {
  VerdictClass cls = VerdictClass::Inconclusive;
  double t_b = std::numeric_limits<double>::quiet_NaN();
  double rate_exponent = std::numeric_limits<double>::quiet_NaN();
  double T_end = std::numeric_limits<double>::quiet_NaN();
  std::string reason;
  double final_supnorm = 0.0;
  double final_dt = 0.0;
  bool boundary_contaminated = false;
};

/// Method-of-lines discretization: uniform radial grid r_i = i h, Laplacian
/// u'' + (N-1)/r u' with the N u'' limit at the origin via a symmetry ghost
/// point, homogeneous Dirichlet at R_max, and the potential evaluated as
/// max(r, h/2)^alpha when alpha < 0.
class DiscreteSystem {
 public:
  DiscreteSystem(const ProblemSpec& spec, const SolverConfig& cfg) : spec_(spec), cfg_(cfg) {
    spec.validate();
    cfg.validate();
    const int M = cfg.M;
    h_ = spec.R_max / M;
    if (!(h_ > 0.0) || !std::isfinite(h_)) throw InvalidGrid("discretize: bad grid spacing");
    r_.resize(M + 1);
    pot_.resize(M + 1);
    wv_.resize(M + 1);
    cross_.resize(M + 1, 0.0);
    for (int i = 0; i <= M; ++i) {
      r_[i] = i * h_;
      const double rr = spec.alpha < 0.0 ? std::max(r_[i], 0.5 * h_) : r_[i];
      pot_[i] = std::pow(rr, spec.alpha);
      wv_[i] = spec.w(r_[i]);
      if (i > 0) cross_[i] = (spec.N - 1) / (2.0 * h_ * r_[i]);
    }
    singular_forcing_ = false;
    if (auto head = spec.forcing.power_head()) singular_forcing_ = head->second < 0.0;
    k1_.resize(M + 1);
    k2_.resize(M + 1);
    k3_.resize(M + 1);
    k4_.resize(M + 1);
    tmp_.resize(M + 1);
  }

  const ProblemSpec& problem() const { return spec_; }
  const SolverConfig& config() const { return cfg_; }
  double h() const { return h_; }
  const std::vector<double>& grid() const { return r_; }
  const std::vector<double>& w_values() const { return wv_; }
  const std::vector<double>& potential() const { return pot_; }
  bool singular_forcing() const { return singular_forcing_; }

  double max_potential() const {
    return *std::max_element(pot_.begin(), pot_.end());
  }

  double diffusion_dt_limit() const {
    return cfg_.cfl_safety * h_ * h_ / (2.0 * spec_.N);
  }

  double reaction_dt_limit(double umax) const {
    return cfg_.cfl_safety /
           (spec_.p * power_abs(umax, spec_.p - 1.0) * max_potential() + 1.0);
  }

  std::vector<double> initial_state() const {
    std::vector<double> u(r_.size());
    for (std::size_t i = 0; i < r_.size(); ++i) u[i] = spec_.u0(r_[i]);
    u.back() = 0.0;  // Dirichlet
    return u;
  }

  /// du/dt for the interior system; the Dirichlet node is pinned to zero.
  /// `forcing_amplitude` < 0 requests evaluation of a(t); passing a value
  /// overrides it (used by the split first step for singular forcings).
  void rhs(double t, std::span<const double> u, std::span<double> out,
           double forcing_amplitude = -1.0) const {
    const int M = cfg_.M;
    const double inv_h2 = 1.0 / (h_ * h_);
    const double a = forcing_amplitude >= 0.0 ? forcing_amplitude : spec_.forcing.at(t);
    out[0] = 2.0 * spec_.N * (u[1] - u[0]) * inv_h2 + pot_[0] * reaction(u[0]) + a * wv_[0];
    for (int i = 1; i < M; ++i) {
      const double lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2 +
                         cross_[i] * (u[i + 1] - u[i - 1]);
      out[i] = lap + pot_[i] * reaction(u[i]) + a * wv_[i];
    }
    out[M] = 0.0;
  }

  /// One classical RK4 step in place. Not shareable across threads.
  void rk4_step(double t, double dt, std::vector<double>& u, bool zero_forcing = false) {
    const std::size_t n = u.size();
    const double fa = zero_forcing ? 0.0 : -1.0;
    rhs(t, u, k1_, fa);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + 0.5 * dt * k1_[i];
    rhs(t + 0.5 * dt, tmp_, k2_, fa);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + 0.5 * dt * k2_[i];
    rhs(t + 0.5 * dt, tmp_, k3_, fa);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + dt * k3_[i];
    rhs(t + dt, tmp_, k4_, fa);
    for (std::size_t i = 0; i < n; ++i)
      u[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    u.back() = 0.0;
  }

  double reaction(double u) const { return power_abs(std::abs(u), spec_.p); }

 private:
  static double power_abs(double base, double expo) {
    const int e = static_cast<int>(expo);
    if (expo == e && e >= 0 && e <= 8) {
      double acc = 1.0;
      for (int k = 0; k < e; ++k) acc *= base;
      return acc;
    }
    return std::pow(base, expo);
  }

  ProblemSpec spec_;
  SolverConfig cfg_;
  double h_ = 0.0;
  std::vector<double> r_, pot_, wv_, cross_;
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
  bool singular_forcing_ = false;
};

inline DiscreteSystem discretize(const ProblemSpec& spec, const SolverConfig& cfg) {
  return DiscreteSystem(spec, cfg);
}

/// One checked explicit step. Enforces both stability preconditions.
inline void step(DiscreteSystem& system, std::vector<double>& u, double t, double dt) {
  double umax = 0.0;
  for (double x : u) umax = std::max(umax, std::abs(x));
  if (dt > system.diffusion_dt_limit() * (1.0 + 1e-12) ||
      dt > system.reaction_dt_limit(umax) * (1.0 + 1e-12))
    throw StabilityViolation("step: dt exceeds the stability limits");
  system.rk4_step(t, dt, u);
}

/// Least-squares fit of log max|u| against -log(t_b - t) over the samples
/// with sup-norm in [1e3, U_max]. The blow-up time t_b is chosen to minimize
/// the fit residual, searched logarithmically beyond the last sample.
struct RateFit {
  double slope = 0.0;
  double t_b = 0.0;
  int samples_used = 0;
};

inline constexpr double kRateFitFloor = 1e3;

inline RateFit fit_blowup_rate(const SolutionTrace& trace) {
  std::vector<double> ts, ys;
  for (const auto& [t, y] : trace.supnorm_history) {
    if (y >= kRateFitFloor && y <= trace.solver.U_max) {
      ts.push_back(t);
      ys.push_back(std::log(y));
    }
  }
  if (ts.size() < 20)
    throw InsufficientSamples("fit_blowup_rate: need >= 20 samples with sup-norm in [1e3, U_max]");
  if (ts.size() > 512) {
    std::vector<double> t2, y2;
    const std::size_t stride = ts.size() / 512 + 1;
    for (std::size_t i = 0; i < ts.size(); i += stride) {
      t2.push_back(ts[i]);
      y2.push_back(ys[i]);
    }
    t2.push_back(ts.back());
    y2.push_back(ys.back());
    ts.swap(t2);
    ys.swap(y2);
  }

  const double t_last = ts.back();
  const double span = t_last - ts.front();
  const double lo = std::log(std::max(1e-13 * std::max(t_last, 1.0), span * 1e-12));
  const double hi = std::log(std::max(span, 1e-12));

  std::vector<double> xs(ts.size());
  auto sse = [&](double log_gap) {
    const double t_b = t_last + std::exp(log_gap);
    for (std::size_t i = 0; i < ts.size(); ++i) xs[i] = -std::log(t_b - ts[i]);
    const LineFit f = fit_line(xs, ys);
    double s = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double r = ys[i] - (f.slope * xs[i] + f.intercept);
      s += r * r;
    }
    return s;
  };
  const double best_gap = golden_section_minimize(sse, lo, hi, 120);

  RateFit fit;
  fit.t_b = t_last + std::exp(best_gap);
  for (std::size_t i = 0; i < ts.size(); ++i) xs[i] = -std::log(fit.t_b - ts[i]);
  fit.slope = fit_line(xs, ys).slope;
  fit.samples_used = static_cast<int>(ts.size());
  return fit;
}

namespace detail {

inline double supnorm(std::span<const double> u) {
  double m = 0.0;
  for (double x : u) m = std::max(m, std::abs(x));
  return m;
}

inline double boundary_max(std::span<const double> u, std::span<const double> r, double R_max) {
  double m = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (r[i] >= 0.9 * R_max) m = std::max(m, std::abs(u[i]));
  return m;
}

}  // namespace detail

inline constexpr long kMaxSolveSteps = 50'000'000;

/// Integrates the problem until T_end, the blow-up threshold, or step-size
/// collapse, and classifies the outcome. Failures surface as Inconclusive
/// verdicts, never as exceptions.
inline std::pair<SolutionTrace, BlowupVerdict> solve(const ProblemSpec& spec,
                                                     const SolverConfig& cfg) {
  DiscreteSystem system(spec, cfg);

  SolutionTrace trace;
  trace.problem = spec;
  trace.solver = cfg;
  trace.r = system.grid();

  BlowupVerdict verdict;
  verdict.T_end = spec.T_end;

  std::vector<double> u = system.initial_state();
  const double u0_sup = detail::supnorm(u);
  if (!(cfg.U_max > u0_sup)) {
    verdict.cls = VerdictClass::Inconclusive;
    verdict.reason = "U_max does not exceed the initial sup-norm";
    return {std::move(trace), verdict};
  }
  const double dt_min = cfg.dt_min > 0.0 ? cfg.dt_min : system.reaction_dt_limit(cfg.U_max) / 4.0;
  trace.solver.dt_min = dt_min;

  auto snapshot = [&](double t) {
    trace.times.push_back(t);
    trace.snapshots.push_back(u);
    trace.boundary_monitor.push_back(detail::boundary_max(u, trace.r, spec.R_max));
  };
  snapshot(0.0);
  trace.supnorm_history.emplace_back(0.0, u0_sup);

  double t = 0.0;
  double dt = 0.0;
  double umax = u0_sup;
  long steps = 0;
  enum class Stop { Threshold, Horizon, DtCollapse, NonFinite, StepBudget, ForcingRange };
  Stop stop;

  try {
    while (true) {
      if (umax > cfg.U_max) { stop = Stop::Threshold; break; }
      if (t >= spec.T_end * (1.0 - 1e-14)) { stop = Stop::Horizon; break; }
      if (!std::isfinite(umax)) { stop = Stop::NonFinite; break; }
      if (steps >= kMaxSolveSteps) { stop = Stop::StepBudget; break; }

      double dt_stab = std::min(system.diffusion_dt_limit(), system.reaction_dt_limit(umax));
      if (t + dt_stab >= spec.T_end) {
        dt = spec.T_end - t;  // horizon clip, not a collapse
      } else {
        if (dt_stab < dt_min) { stop = Stop::DtCollapse; break; }
        dt = dt_stab;
      }

      if (t == 0.0 && system.singular_forcing()) {
        // Split first step: diffusion and reaction by RK4, the singular
        // forcing head by its exact integral.
        system.rk4_step(t, dt, u, /*zero_forcing=*/true);
        const double mass = integrate_profile(spec.forcing, 0.0, dt);
        const auto& wv = system.w_values();
        for (std::size_t i = 0; i + 1 < u.size(); ++i) u[i] += mass * wv[i];
      } else {
        system.rk4_step(t, dt, u);
      }
      t += dt;
      ++steps;
      umax = detail::supnorm(u);
      trace.supnorm_history.emplace_back(t, umax);
      trace.dt_history.emplace_back(t, dt);
      trace.boundary_history.push_back(detail::boundary_max(u, trace.r, spec.R_max));
      if (steps % cfg.snapshot_stride == 0) snapshot(t);
    }
  } catch (const OutsideSampleRange&) {
    stop = Stop::ForcingRange;
  }
  if (trace.times.back() != t) snapshot(t);

  verdict.final_supnorm = umax;
  verdict.final_dt = dt;
  for (double b : trace.boundary_monitor)
    if (b > 1e-6 * cfg.U_max) verdict.boundary_contaminated = true;

  switch (stop) {
    case Stop::Threshold: {
      if (!(dt < 10.0 * dt_min)) {
        verdict.cls = VerdictClass::Inconclusive;
        verdict.reason = "sup-norm exceeded U_max but the step size never contracted";
        break;
      }
      try {
        const RateFit fit = fit_blowup_rate(trace);
        if (fit.slope > 0.0) {
          verdict.cls = VerdictClass::BlownUp;
          verdict.t_b = fit.t_b;
          verdict.rate_exponent = fit.slope;
        } else {
          verdict.cls = VerdictClass::Inconclusive;
          verdict.reason = "threshold exceeded but the fitted growth rate is not positive";
        }
      } catch (const InsufficientSamples&) {
        verdict.cls = VerdictClass::Inconclusive;
        verdict.reason = "threshold exceeded with too few samples for a rate fit";
      }
      break;
    }
    case Stop::Horizon:
      verdict.cls = VerdictClass::GlobalUpTo;
      break;
    case Stop::DtCollapse:
      verdict.cls = VerdictClass::Inconclusive;
      verdict.reason = "step size collapsed below dt_min before the threshold";
      break;
    case Stop::NonFinite:
      verdict.cls = VerdictClass::Inconclusive;
      verdict.reason = "field became non-finite";
      break;
    case Stop::StepBudget:
      verdict.cls = VerdictClass::Inconclusive;
      verdict.reason = "step budget exhausted";
      break;
    case Stop::ForcingRange:
      verdict.cls = VerdictClass::Inconclusive;
      verdict.reason = "forcing sample range exhausted before the horizon";
      break;
  }

  if (verdict.boundary_contaminated && verdict.cls != VerdictClass::Inconclusive) {
    verdict.reason = std::string("boundary contamination: downgraded from ") +
                     to_string(verdict.cls);
    verdict.cls = VerdictClass::Inconclusive;
  }
  return {std::move(trace), verdict};
}

}  // namespace blowup
