#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "blowup/cutoffs.hpp"
#include "helpers.hpp"

using namespace blowup;

TEST_CASE("phi plateau, support, and bounds", "[cutoffs]") {
  const CutoffFamily fam = build_phi(0.75, 3);
  CHECK(fam.kappa() == 8);
  CHECK(fam.phi(0.0) == 1.0);
  CHECK(fam.phi(2.5) == 0.0);
  for (double r : uniform_grid(0.0, 3.0, 3001)) {
    const double v = fam.phi(r);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    if (r <= 1.0) CHECK(v == Catch::Approx(1.0).margin(1e-12));
    if (r >= 2.0) CHECK(v == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("normal derivative vanishes at the annulus boundary", "[cutoffs]") {
  const CutoffFamily fam = build_phi(0.75, 3);
  CHECK(std::abs(fam.phi_d1(1.0)) <= 1e-8);
  CHECK(std::abs(fam.phi_d1(2.0)) <= 1e-8);
}

TEST_CASE("analytic derivatives match finite differences", "[cutoffs]") {
  const CutoffFamily fam = build_phi(0.75, 3);
  auto phi = [&](double r) { return fam.phi(r); };
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> mid(1.1, 1.9);
  for (int k = 0; k < 24; ++k) {
    const double r = mid(rng);
    const double d1 = testutil::fd_d1(phi, r, 1e-5);
    const double d2 = testutil::fd_d2(phi, r, 1e-4);
    CHECK(fam.phi_d1(r) == Catch::Approx(d1).margin(1e-7));
    CHECK(fam.phi_d2(r) == Catch::Approx(d2).margin(2e-4));
    const double lap = d2 + (fam.dim() - 1) / r * fam.phi_d1(r);
    CHECK(fam.phi_laplacian(r) == Catch::Approx(lap).margin(2e-4));
  }
}

TEST_CASE("phi3 constants are finite and grow with theta", "[cutoffs]") {
  const CutoffFamily fam = build_phi(0.75, 3);
  const double c25 = verify_phi3(fam, 0.25);
  const double c50 = verify_phi3(fam, 0.5);
  const double c75 = verify_phi3(fam, 0.75);
  CHECK(c25 > 0.0);
  CHECK(std::isfinite(c25));
  CHECK(std::isfinite(c50));
  CHECK(std::isfinite(c75));
  CHECK(c50 >= c25);
  CHECK(c75 >= c50);
}

TEST_CASE("phi3 dense-grid oracle agrees", "[cutoffs]") {
  // Oracle route: finite-difference Laplacian maximized over a denser,
  // shifted grid, all independent of the analytic derivative path.
  const CutoffFamily fam = build_phi(0.75, 3);
  auto phi = [&](double r) { return fam.phi(r); };
  double oracle = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double r = 1.0 + (i + 0.5) / n;
    const double p = fam.phi(r);
    if (p < 1e-300) continue;
    const double lap =
        testutil::fd_d2(phi, r, 1e-4) + (fam.dim() - 1) / r * testutil::fd_d1(phi, r, 1e-5);
    oracle = std::max(oracle, std::abs(lap) / std::pow(p, 0.5));
  }
  const double got = verify_phi3(fam, 0.5, 20001);
  CHECK(got == Catch::Approx(oracle).epsilon(0.02));
}

TEST_CASE("theta beyond the family capacity is rejected", "[cutoffs]") {
  const CutoffFamily fam(4, 3);
  CHECK(fam.theta_capacity() == Catch::Approx(0.5));
  CHECK_THROWS_AS(verify_phi3(fam, 0.9), ThetaExceedsFamilyCapacity);
}

TEST_CASE("kappa selection covers the requested theta", "[cutoffs]") {
  CHECK(build_phi(0.75, 1).kappa() == 8);
  CHECK(build_phi(0.5, 1).kappa() == 4);
  for (double theta : {0.1, 0.33, 0.6, 0.9}) {
    const CutoffFamily fam = build_phi(theta, 1);
    CHECK(fam.theta_capacity() >= theta - 1e-12);
  }
  CHECK_THROWS_AS(build_phi(1.0, 1), ValidationError);
}

TEST_CASE("scaled cutoff identities", "[cutoffs]") {
  const CutoffFamily fam = build_phi(0.75, 3);
  const auto inside = scaled_phi(fam, 10.0, 5.0);
  CHECK(inside.value == 1.0);
  CHECK(inside.laplacian == 0.0);
  const auto outside = scaled_phi(fam, 10.0, 25.0);
  CHECK(outside.value == 0.0);
  CHECK(outside.laplacian == 0.0);
  const auto mid = scaled_phi(fam, 2.0, 3.0);
  CHECK(mid.value == fam.phi(1.5));
  CHECK(mid.laplacian == Catch::Approx(fam.phi_laplacian(1.5) / 4.0).epsilon(1e-14));

  // Scaling law to roundoff on scattered points.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> rad(0.5, 2.5);
  for (double R : {0.5, 3.0, 64.0}) {
    for (int k = 0; k < 16; ++k) {
      const double x = rad(rng) * R;
      CHECK(fam.phi_scaled_laplacian(R, x) * R * R ==
            Catch::Approx(fam.phi_laplacian(x / R)).margin(1e-14));
    }
  }
}

TEST_CASE("spacetime cutoff plateaus and supports", "[cutoffs]") {
  const SpacetimeCutoffs stc = build_spacetime_cutoffs(2.0, 10.0, 4.0, 3);
  CHECK(stc.f_T(6.0) == 1.0);               // t = 0.6 T on the plateau
  CHECK(stc.f_T(0.0) == 0.0);
  CHECK(stc.f_T(2.0) == 0.0);               // below T/4
  CHECK(stc.f_T(8.0) == 0.0);               // above 3T/4
  CHECK(stc.g_R(2.0) == 1.0);               // |x| = 0.5 R
  CHECK(stc.g_R(4.0) == 1.0);               // tau = 1 is still on the plateau
  CHECK(stc.g_R(6.0) == 0.0);               // tau = 2.25 beyond the support
  for (double r : {0.0, 1.0, 3.0, 5.0, 7.0}) CHECK(stc.psi(0.0, r) == 0.0);
}

TEST_CASE("psi separates exactly", "[cutoffs]") {
  const SpacetimeCutoffs stc = build_spacetime_cutoffs(2.5, 3.0, 2.0, 2);
  for (double t : {0.4, 1.0, 1.7, 2.2})
    for (double r : {0.3, 1.5, 2.4, 2.7})
      CHECK(stc.psi(t, r) == stc.f_T(t) * stc.g_R(r));
}

TEST_CASE("spacetime cutoff derivatives match finite differences", "[cutoffs]") {
  const SpacetimeCutoffs stc = build_spacetime_cutoffs(2.0, 10.0, 4.0, 3);
  auto fT = [&](double t) { return stc.f_T(t); };
  for (double t : {3.0, 4.0, 7.0, 7.4}) {
    CHECK(stc.f_T_dt(t) == Catch::Approx(testutil::fd_d1(fT, t, 1e-5)).margin(1e-7));
  }
  auto gR = [&](double r) { return stc.g_R(r); };
  for (double r : {4.3, 4.8, 5.2, 5.5}) {
    const double lap = testutil::fd_d2(gR, r, 1e-4) +
                       (stc.dim() - 1) / r * testutil::fd_d1(gR, r, 1e-5);
    CHECK(stc.g_R_laplacian(r) == Catch::Approx(lap).margin(1e-5));
  }
}

TEST_CASE("laplacian bound constants are R independent", "[cutoffs]") {
  const double c1 = laplacian_bound_constant(2.0, 1.0, 3);
  const double c4 = laplacian_bound_constant(2.0, 4.0, 3);
  const double c16 = laplacian_bound_constant(2.0, 16.0, 3);
  CHECK(std::isfinite(c1));
  CHECK(c1 > 0.0);
  CHECK(c4 == Catch::Approx(c1).epsilon(0.05));
  CHECK(c16 == Catch::Approx(c1).epsilon(0.05));
  const std::vector<double> grid{1.0, 4.0, 16.0};
  CHECK(verify_laplacian_bound(2.0, grid, 3) ==
        Catch::Approx(std::max({c1, c4, c16})).epsilon(1e-12));
}

TEST_CASE("laplacian of g_R vanishes on the inner plateau", "[cutoffs]") {
  const SpacetimeCutoffs stc = build_spacetime_cutoffs(2.0, 1.0, 8.0, 3);
  for (double r : {0.0, 2.0, 5.0, 8.0}) CHECK(stc.g_R_laplacian(r) == 0.0);
}
