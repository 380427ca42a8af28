#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "blowup/forcing.hpp"
#include "helpers.hpp"

using namespace blowup;
using std::numbers::pi;

namespace {
ForcingProfile cos2(double period = pi) {
  return ForcingProfile::periodic([](double t) { double c = std::cos(t); return c * c; },
                                  period);
}
}  // namespace

TEST_CASE("profile evaluation", "[forcing]") {
  CHECK(ForcingProfile::constant(1.0)(7.0) == 1.0);
  CHECK(ForcingProfile::power(2.0, 1.0)(3.0) == Catch::Approx(6.0));
  CHECK(cos2()(pi) == Catch::Approx(1.0).margin(1e-12));
  CHECK(ForcingProfile::exp_growth(-1, 1.0)(2.0) == Catch::Approx(std::exp(-2.0)));

  const auto sampled = ForcingProfile::sampled({{1.0, 0.0}, {3.0, 4.0}});
  CHECK(sampled(2.0) == Catch::Approx(2.0));
  CHECK_THROWS_AS(sampled(0.5), OutsideSampleRange);
  CHECK_THROWS_AS(sampled(3.5), OutsideSampleRange);
}

TEST_CASE("evaluation needs positive time", "[forcing]") {
  CHECK_THROWS_AS(ForcingProfile::constant(1.0)(0.0), NonPositiveTime);
  CHECK_THROWS_AS(ForcingProfile::constant(1.0)(-1.0), NonPositiveTime);
}

TEST_CASE("families reject invalid parameters", "[forcing]") {
  CHECK_THROWS_AS(ForcingProfile::constant(-1.0), ValidationError);
  CHECK_THROWS_AS(ForcingProfile::power(1.0, -1.0), ValidationError);
  CHECK_THROWS_AS(ForcingProfile::power(-2.0, 1.0), ValidationError);
  CHECK_THROWS_AS(ForcingProfile::sampled({{1.0, 0.0}, {1.0, 1.0}}), ValidationError);
  CHECK_THROWS_AS(ForcingProfile::sampled({{0.0, 1.0}, {1.0, -0.5}}), ValidationError);
  CHECK_THROWS_AS(ForcingProfile::exp_growth(2, 1.0), ValidationError);
}

TEST_CASE("negative periodic factors clamp to zero", "[forcing]") {
  const auto prof = ForcingProfile::periodic([](double t) { return std::cos(t); }, 2 * pi);
  CHECK(prof(pi) == 0.0);
  CHECK(prof(0.1) == Catch::Approx(std::cos(0.1)));
}

TEST_CASE("cesaro mean closed cases", "[forcing]") {
  CHECK(cesaro_mean(ForcingProfile::constant(2.5), 7.0) == Catch::Approx(2.5).epsilon(1e-12));
  CHECK(cesaro_mean(ForcingProfile::power(1.0, 1.0), 4.0) == Catch::Approx(2.0).epsilon(1e-12));
  CHECK(cesaro_mean(cos2(), 1e4) == Catch::Approx(0.5).margin(1e-3));
  // Singular family: (1/t) * integral of s^{-1/2} over (0, t) = 2 t^{-1/2}.
  CHECK(cesaro_mean(ForcingProfile::power(1.0, -0.5), 1.0) == Catch::Approx(2.0).epsilon(1e-6));
  CHECK_THROWS_AS(cesaro_mean(ForcingProfile::constant(1.0), 0.0), NonPositiveTime);
  // Sampled data not anchored at zero cannot be averaged from zero.
  CHECK_THROWS_AS(cesaro_mean(ForcingProfile::sampled({{1.0, 1.0}, {2.0, 1.0}}), 1.5),
                  OutsideSampleRange);
}

TEST_CASE("cesaro mean is nonnegative", "[forcing]") {
  for (double t : {0.5, 2.0, 37.0}) {
    CHECK(cesaro_mean(cos2(), t) >= 0.0);
    CHECK(cesaro_mean(ForcingProfile::exp_growth(-1, 2.0), t) >= 0.0);
  }
}

TEST_CASE("ell classification closed forms", "[forcing]") {
  const auto sin2 =
      ForcingProfile::periodic([](double t) { double s = std::sin(t); return s * s; }, pi);
  auto est = classify_ell(sin2, 1e4);
  CHECK(est.ell_class == EllClass::Finite);
  CHECK(est.value == Catch::Approx(0.5).margin(1e-6));

  CHECK(classify_ell(ForcingProfile::power(1.0, 2.0), 1e4).ell_class == EllClass::Infinite);
  CHECK(classify_ell(ForcingProfile::exp_growth(-1, 1.0), 1e4).ell_class == EllClass::Zero);
  CHECK(classify_ell(ForcingProfile::exp_growth(1, 1.0), 1e4).ell_class == EllClass::Infinite);
  CHECK(classify_ell(ForcingProfile::constant(0.0), 1e4).ell_class == EllClass::Zero);
  CHECK(classify_ell(ForcingProfile::power(1.0, -0.5), 1e4).ell_class == EllClass::Zero);
  CHECK(classify_ell(ForcingProfile::power_log(1.0, 0.0, 1.0), 1e4).ell_class ==
        EllClass::Infinite);
  CHECK(classify_ell(ForcingProfile::power_log(1.0, 0.0, -1.0), 1e4).ell_class ==
        EllClass::Zero);
  CHECK(classify_ell(ForcingProfile::oscillating_power(
                         1.0, [](double t) { double s = std::sin(t); return s * s; }, pi),
                     1e4)
            .ell_class == EllClass::Infinite);
}

TEST_CASE("ell classification fits sampled trends", "[forcing]") {
  // Data following 3 + 1/(1+t): the mean settles near 3.
  std::vector<std::pair<double, double>> grid;
  for (int i = 0; i <= 4000; ++i) {
    const double t = 1e-3 * std::pow(1e7 / 1e-3, i / 4000.0);
    grid.emplace_back(t, 3.0 + 1.0 / (1.0 + t));
  }
  auto est = classify_ell(ForcingProfile::sampled(grid), 1e7);
  CHECK(est.ell_class == EllClass::Finite);
  CHECK(est.value == Catch::Approx(3.0).epsilon(0.01));

  // Samples are monotone in t.
  for (std::size_t i = 0; i + 1 < est.samples.size(); ++i)
    CHECK(est.samples[i].t < est.samples[i + 1].t);

  // Too short a probe range stays undetermined.
  auto short_est = classify_ell(ForcingProfile::sampled({{1.0, 1.0}, {2.0, 1.0}}), 2.0);
  CHECK(short_est.ell_class == EllClass::Undetermined);
}

TEST_CASE("window integral values", "[forcing]") {
  CHECK(window_integral(ForcingProfile::constant(1.0), 6.0) == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(window_integral(ForcingProfile::power(1.0, 1.0), 6.0) ==
        Catch::Approx(3.5).epsilon(1e-12));
  CHECK(window_integral(ForcingProfile::exp_growth(-1, 1.0), 120.0) < 1e-20);
}

TEST_CASE("q0 recovery on power families", "[forcing]") {
  for (double m : {-0.5, 0.0, 1.0, 2.0}) {
    const auto est = q0_estimate(ForcingProfile::power(1.0, m));
    CHECK(est.j_class == JClass::HalfLine);
    CHECK(est.q0 == Catch::Approx(-1.0 - m).margin(0.05));
  }
}

TEST_CASE("q0 on the borderline decay 1/t", "[forcing]") {
  const auto est = q0_estimate(testutil::one_over_t_profile());
  CHECK(est.j_class == JClass::HalfLine);
  CHECK(est.q0 == Catch::Approx(0.0).margin(0.05));
}

TEST_CASE("exponential growth and decay classify J", "[forcing]") {
  CHECK(q0_estimate(ForcingProfile::exp_growth(1, 1.0)).j_class == JClass::AllReals);
  CHECK(q0_estimate(ForcingProfile::exp_growth(-1, 1.0)).j_class == JClass::Empty);
}

TEST_CASE("membership in J is monotone in q", "[forcing]") {
  for (auto prof : {ForcingProfile::power(1.0, 1.0), ForcingProfile::constant(1.0),
                    ForcingProfile::exp_growth(-1, 0.5)}) {
    const auto est = q0_estimate(prof);
    bool seen_in_j = false;
    for (const auto& probe : est.diagnostics) {
      if (seen_in_j) CHECK(probe.in_j);  // diagnostics are in increasing q order
      seen_in_j = seen_in_j || probe.in_j;
    }
  }
}

TEST_CASE("q0 grid preconditions", "[forcing]") {
  const std::vector<double> short_grid{1, 2, 4, 8};
  CHECK_THROWS_AS(q0_estimate(ForcingProfile::constant(1.0), short_grid, kDefaultQWindow),
                  InsufficientGrid);
  const std::vector<double> slow_grid{1, 1.5, 2.25, 3.4, 5.1, 7.6, 11.4, 17.1};
  CHECK_THROWS_AS(q0_estimate(ForcingProfile::constant(1.0), slow_grid, kDefaultQWindow),
                  InsufficientGrid);
  CHECK_THROWS_AS(q0_estimate(ForcingProfile::constant(1.0), {1.0, 0.0}), InvalidParameters);
}

TEST_CASE("periodic averaging values", "[forcing]") {
  auto one = [](double) { return 1.0; };
  auto cos_sq = [](double s) { double c = std::cos(s); return c * c; };
  auto sine = [](double s) { return std::sin(s); };
  const std::vector<double> lam{1000.0};

  auto r1 = riemann_lebesgue_average(one, cos_sq, pi, 0.0, 1.0, lam);
  CHECK(r1.back().second == Catch::Approx(0.5).margin(1e-2));

  auto r2 = riemann_lebesgue_average(one, sine, 2 * pi, 0.0, 2 * pi, lam);
  CHECK(r2.back().second == Catch::Approx(0.0).margin(1e-2));

  // Independent high-resolution oracle for g(s) = s against cos^2.
  auto lin = [](double s) { return s; };
  const double lambda = 1000.0;
  auto integrand = [&](double s) { return s * cos_sq(lambda * s); };
  const double oracle = simpson(integrand, 0.0, 2.0, 1 << 20);
  auto r3 = riemann_lebesgue_average(lin, cos_sq, pi, 0.0, 2.0, lam);
  CHECK(r3.back().second == Catch::Approx(oracle).margin(1e-6));
  CHECK(r3.back().second == Catch::Approx(1.0).margin(1e-2));
}

TEST_CASE("periodic averaging converges at rate 1/lambda", "[forcing]") {
  // The defect oscillates through zeros, so compare small neighborhoods of
  // each lambda (an envelope) rather than single values.
  auto lin = [](double s) { return s; };
  auto cos_sq = [](double s) { double c = std::cos(s); return c * c; };
  auto envelope = [&](double lambda) {
    double worst = 0.0;
    for (double f : {1.0, 1.043, 1.107, 1.171}) {
      const std::vector<double> lam{lambda * f};
      const double v = riemann_lebesgue_average(lin, cos_sq, pi, 0.0, 2.0, lam).back().second;
      worst = std::max(worst, std::abs(v - 1.0));
    }
    return worst;
  };
  const double e1 = envelope(200.0);
  const double e2 = envelope(400.0);
  const double e4 = envelope(800.0);
  CHECK(e2 <= 0.55 * e1);
  CHECK(e4 <= 0.55 * e2);
}

TEST_CASE("profile rescaling", "[forcing]") {
  const auto prof = ForcingProfile::power(2.0, 1.0).scaled(3.0);
  CHECK(prof(2.0) == Catch::Approx(12.0));
  const auto zero = ForcingProfile::constant(5.0).scaled(0.0);
  CHECK(zero(1.0) == 0.0);
}
