#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "blowup/solver.hpp"
#include "helpers.hpp"

using namespace blowup;

namespace {

ProblemSpec forced_blowup_problem(int N) {
  ProblemSpec spec;
  spec.N = N;
  spec.alpha = 0.0;
  spec.p = 2.0;
  spec.forcing = ForcingProfile::constant(1.0);
  spec.w = SpatialProfile::gaussian(1.0, 1.0);
  spec.u0 = SpatialProfile::zero();
  spec.R_max = 20.0;
  spec.T_end = 50.0;
  return spec;
}

// Nearly uniform initial data: a Gaussian with an enormous width.
ProblemSpec uniform_reaction_problem(double p, double u0) {
  ProblemSpec spec;
  spec.N = 3;
  spec.alpha = 0.0;
  spec.p = p;
  spec.forcing = ForcingProfile::constant(0.0);
  spec.w = SpatialProfile::zero();
  spec.u0 = SpatialProfile::gaussian(u0, 1e12);
  spec.R_max = 40.0;
  spec.T_end = 10.0;
  return spec;
}

}  // namespace

TEST_CASE("discrete laplacian of a quadratic", "[solver]") {
  ProblemSpec spec;
  spec.N = 1;
  spec.p = 2.0;
  spec.R_max = 10.0;
  SolverConfig cfg;
  cfg.M = 100;
  DiscreteSystem sys(spec, cfg);
  std::vector<double> u(cfg.M + 1), out(cfg.M + 1);
  for (int i = 0; i <= cfg.M; ++i) u[i] = sys.grid()[i] * sys.grid()[i];
  sys.rhs(1.0, u, out, 0.0);
  // out = lap(u) + |u|^p at interior nodes; lap(r^2) = 2 exactly for N = 1.
  for (int i = 1; i < cfg.M; ++i) {
    const double lap = out[i] - u[i] * u[i];
    CHECK(lap == Catch::Approx(2.0).margin(1e-8));
  }

  spec.N = 3;
  DiscreteSystem sys3(spec, cfg);
  sys3.rhs(1.0, u, out, 0.0);
  CHECK(out[0] - u[0] * u[0] == Catch::Approx(6.0).margin(1e-8));  // N u'' at the origin
  for (int i = 1; i < cfg.M; ++i)
    CHECK(out[i] - u[i] * u[i] == Catch::Approx(6.0).margin(1e-7));
}

TEST_CASE("origin potential regularization", "[solver]") {
  ProblemSpec spec;
  spec.N = 1;
  spec.alpha = -1.0;
  spec.R_max = 10.0;
  SolverConfig cfg;
  cfg.M = 100;
  DiscreteSystem sys(spec, cfg);
  const double h = spec.R_max / cfg.M;
  CHECK(sys.potential()[0] == Catch::Approx(std::pow(0.5 * h, -1.0)));
  CHECK(sys.potential()[1] == Catch::Approx(std::pow(h, -1.0)));
}

TEST_CASE("grid validation", "[solver]") {
  ProblemSpec spec;
  SolverConfig cfg;
  cfg.M = 32;  // below the floor
  CHECK_THROWS_AS(discretize(spec, cfg), ValidationError);
  spec.p = 0.9;
  cfg.M = 128;
  CHECK_THROWS_AS(discretize(spec, cfg), ValidationError);
}

TEST_CASE("zero field with zero forcing is a fixed point", "[solver]") {
  ProblemSpec spec;
  spec.forcing = ForcingProfile::constant(0.0);
  spec.w = SpatialProfile::zero();
  spec.u0 = SpatialProfile::zero();
  SolverConfig cfg;
  cfg.M = 64;
  DiscreteSystem sys(spec, cfg);
  std::vector<double> u = sys.initial_state();
  step(sys, u, 0.0, sys.diffusion_dt_limit());
  for (double x : u) CHECK(x == 0.0);
}

TEST_CASE("explicit step enforces stability", "[solver]") {
  ProblemSpec spec;
  SolverConfig cfg;
  cfg.M = 64;
  DiscreteSystem sys(spec, cfg);
  std::vector<double> u = sys.initial_state();
  CHECK_THROWS_AS(step(sys, u, 0.0, 100.0 * sys.diffusion_dt_limit()), StabilityViolation);
}

TEST_CASE("pure heat decays in sup norm", "[solver]") {
  // Data small enough that |u|^p sits far below roundoff of the heat part.
  ProblemSpec spec;
  spec.N = 1;
  spec.p = 8.0;
  spec.forcing = ForcingProfile::constant(0.0);
  spec.w = SpatialProfile::zero();
  spec.u0 = SpatialProfile::gaussian(1e-4, 2.0);
  spec.R_max = 30.0;
  spec.T_end = 0.5;
  SolverConfig cfg;
  cfg.M = 128;
  auto [trace, verdict] = solve(spec, cfg);
  CHECK(verdict.cls == VerdictClass::GlobalUpTo);
  for (std::size_t i = 0; i + 1 < trace.supnorm_history.size(); ++i)
    CHECK(trace.supnorm_history[i + 1].second <=
          trace.supnorm_history[i].second * (1.0 + 1e-12));
}

TEST_CASE("uniform data reproduces the reaction equation", "[solver]") {
  // u' = u^p with u(0) = 1 has the solution (1 - (p-1) t)^{-1/(p-1)}.
  ProblemSpec spec = uniform_reaction_problem(2.0, 1.0);
  spec.T_end = 0.9;
  SolverConfig cfg;
  cfg.M = 256;
  cfg.cfl_safety = 0.04;
  auto [trace, verdict] = solve(spec, cfg);
  REQUIRE(verdict.cls == VerdictClass::GlobalUpTo);
  for (std::size_t j = 0; j < trace.times.size(); ++j) {
    const double t = trace.times[j];
    const double exact = 1.0 / (1.0 - t);
    const double got = trace.snapshots[j][0];
    CHECK(got == Catch::Approx(exact).epsilon(1e-6));
  }
}

TEST_CASE("rate fit on exact reaction traces", "[solver]") {
  {
    const auto trace = testutil::ode_blowup_trace(2.0, 1e8);
    const RateFit fit = fit_blowup_rate(trace);
    CHECK(fit.slope == Catch::Approx(1.0).margin(0.05));
    CHECK(fit.t_b == Catch::Approx(1.0).margin(1e-4));
  }
  {
    const auto trace = testutil::ode_blowup_trace(3.0, 1e8);
    const RateFit fit = fit_blowup_rate(trace);
    CHECK(fit.slope == Catch::Approx(0.5).margin(0.05));
  }
}

TEST_CASE("rate fit needs enough samples", "[solver]") {
  SolutionTrace trace;
  trace.solver.U_max = 1e8;
  for (int k = 0; k < 10; ++k) trace.supnorm_history.emplace_back(0.1 * k, 1e4 + k);
  CHECK_THROWS_AS(fit_blowup_rate(trace), InsufficientSamples);
}

TEST_CASE("forced problem blows up with a unit rate", "[solver]") {
  ProblemSpec spec = forced_blowup_problem(1);
  SolverConfig cfg;
  cfg.M = 128;
  auto [trace, verdict] = solve(spec, cfg);
  REQUIRE(verdict.cls == VerdictClass::BlownUp);
  CHECK(verdict.rate_exponent == Catch::Approx(1.0).margin(0.2));
  CHECK(verdict.t_b > 0.0);
  CHECK(verdict.final_dt < 10.0 * trace.solver.dt_min);
  CHECK_FALSE(verdict.boundary_contaminated);

  // Positivity: nonnegative data, forcing, and mass keep the field
  // nonnegative up to the explicit-scheme tolerance.
  for (const auto& snap : trace.snapshots) {
    double sup = 0.0;
    for (double x : snap) sup = std::max(sup, std::abs(x));
    for (double x : snap) CHECK(x >= -1e-10 * sup);
  }
}

TEST_CASE("zero data with zero forcing stays global", "[solver]") {
  ProblemSpec spec;
  spec.N = 1;
  spec.forcing = ForcingProfile::constant(0.0);
  spec.w = SpatialProfile::gaussian(1.0, 1.0);
  spec.u0 = SpatialProfile::zero();
  spec.T_end = 1.0;
  SolverConfig cfg;
  cfg.M = 64;
  auto [trace, verdict] = solve(spec, cfg);
  CHECK(verdict.cls == VerdictClass::GlobalUpTo);
  CHECK(verdict.final_supnorm == 0.0);
}

TEST_CASE("boundary contamination downgrades the verdict", "[solver]") {
  ProblemSpec spec;
  spec.N = 1;
  spec.p = 2.0;
  spec.forcing = ForcingProfile::constant(0.0);
  spec.w = SpatialProfile::zero();
  spec.u0 = SpatialProfile::gaussian(300.0, 100.0);  // mass sitting on the boundary
  spec.R_max = 20.0;
  spec.T_end = 1e-4;  // stop before the large data can react
  SolverConfig cfg;
  cfg.M = 64;
  auto [trace, verdict] = solve(spec, cfg);
  CHECK(verdict.boundary_contaminated);
  CHECK(verdict.cls == VerdictClass::Inconclusive);
  CHECK(verdict.reason.find("contamination") != std::string::npos);
}

TEST_CASE("refinement consistency before large amplitudes", "[solver]") {
  ProblemSpec spec = forced_blowup_problem(1);
  spec.T_end = 1.5;
  SolverConfig coarse;
  coarse.M = 64;
  SolverConfig fine;
  fine.M = 128;
  fine.cfl_safety = coarse.cfl_safety / 2.0;
  auto [tc, vc] = solve(spec, coarse);
  auto [tf, vf] = solve(spec, fine);
  REQUIRE(vc.cls == VerdictClass::GlobalUpTo);
  REQUIRE(vf.cls == VerdictClass::GlobalUpTo);

  auto supnorm_at = [](const SolutionTrace& tr, double t) {
    const auto& h = tr.supnorm_history;
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
      if (h[i].first <= t && t <= h[i + 1].first) {
        const double w = (t - h[i].first) / (h[i + 1].first - h[i].first);
        return (1.0 - w) * h[i].second + w * h[i + 1].second;
      }
    }
    return h.back().second;
  };
  for (double t : {0.25, 0.5, 0.75, 1.0, 1.25, 1.45}) {
    const double a = supnorm_at(tc, t);
    const double b = supnorm_at(tf, t);
    if (b < 1e3) CHECK(a == Catch::Approx(b).epsilon(0.01));
  }
}

TEST_CASE("singular forcing head splits the first step", "[solver]") {
  ProblemSpec spec;
  spec.N = 1;
  spec.p = 2.0;
  spec.forcing = ForcingProfile::power(1.0, -0.5);
  spec.w = SpatialProfile::gaussian(1.0, 1.0);
  spec.u0 = SpatialProfile::zero();
  spec.R_max = 20.0;
  spec.T_end = 0.01;
  SolverConfig cfg;
  cfg.M = 128;
  auto [trace, verdict] = solve(spec, cfg);
  CHECK(verdict.cls == VerdictClass::GlobalUpTo);
  // After the first instants u(0, x) ~ w(x) * integral of t^{-1/2} = 2 sqrt(t).
  const double got = trace.snapshots.back()[0];
  const double approx = 2.0 * std::sqrt(spec.T_end);
  CHECK(got == Catch::Approx(approx).epsilon(0.05));
}
