#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "blowup/exponents.hpp"

using namespace blowup;

TEST_CASE("fujita exponent values", "[exponents]") {
  CHECK(fujita_exponent(1, 0.0) == 3.0);
  CHECK(fujita_exponent(2, 0.0) == 2.0);
  CHECK(fujita_exponent(3, -2.0) == 1.0);
}

TEST_CASE("lower critical exponent", "[exponents]") {
  CHECK(p_lower(4, 0.0) == 1.0);
  CHECK(p_lower(2, 4.0) == 3.0);
  CHECK(p_lower(5, -1.0) == Catch::Approx(0.8));
}

TEST_CASE("upper critical exponent", "[exponents]") {
  CHECK(p_upper(3, 0.0) == 3.0);
  CHECK(std::isinf(p_upper(2, 5.0)));
  CHECK(std::isinf(p_upper(1, -1.0)));
  CHECK(p_upper(4, 2.0) == 3.0);
}

TEST_CASE("sigma exponent with infinity branch", "[exponents]") {
  CHECK(sigma_exponent(3, -0.5) == 2.0);
  CHECK(std::isinf(sigma_exponent(3, 1.0)));
  CHECK(sigma_exponent(4, 0.0) == 2.0);
  CHECK_THROWS_AS(sigma_exponent(3, -1.0), SigmaNotLocallyIntegrable);
  CHECK_THROWS_AS(sigma_exponent(3, -1.5), SigmaNotLocallyIntegrable);
}

TEST_CASE("m-alpha exponent with infinity branch", "[exponents]") {
  CHECK(m_alpha_exponent(4, 0.0, 0.0) == 2.0);
  CHECK(std::isinf(m_alpha_exponent(3, 1.0, 0.0)));
  CHECK(m_alpha_exponent(5, 0.0, 1.0) == 2.0);
}

TEST_CASE("ordering of the exponents", "[exponents]") {
  for (int N : {1, 2, 3, 4, 5})
    for (double alpha : {-1.0, 0.0, 1.0, 2.0}) {
      CHECK(p_lower(N, alpha) <= fujita_exponent(N, alpha));
      if (N >= 3 && alpha > -2.0) CHECK(fujita_exponent(N, alpha) < p_upper(N, alpha) + 1e-12);
    }
}

namespace {
CesaroEstimate ell_of(EllClass c, double v = std::numeric_limits<double>::quiet_NaN()) {
  CesaroEstimate est;
  est.ell_class = c;
  est.value = v;
  return est;
}
QZeroEstimate half_line(double q0) {
  QZeroEstimate est;
  est.j_class = JClass::HalfLine;
  est.q0 = q0;
  return est;
}
}  // namespace

TEST_CASE("criterion fires the half-line theorem", "[exponents]") {
  // a = 1 gives q0 = -1; with N = 3, p = 2 the J-based test predicts blow-up.
  MediaParams params{3, 0.0, 2.0, WIntegralSign::Positive};
  const auto v = blowup_criterion(params, ell_of(EllClass::Undetermined), half_line(-1.0));
  REQUIRE(v.blowup_predicted);
  CHECK(*v.theorem == TheoremTag::JHalfLine);
}

TEST_CASE("criterion reports the first failing hypothesis", "[exponents]") {
  MediaParams params{3, 0.0, 4.0, WIntegralSign::Positive};
  const auto v = blowup_criterion(params, ell_of(EllClass::Finite, 1.0), half_line(-1.0));
  CHECK_FALSE(v.blowup_predicted);
  CHECK(v.reason.find("p < p^*") != std::string::npos);
  // lhs = 4/3 - 5/2 = -7/6 < -1, so the half-line test fails as well.
  const double lhs = (2.0 * 4.0 + 0.0) / (2.0 * 3.0) - 1.5 - 1.0;
  CHECK(lhs < -1.0);
}

TEST_CASE("criterion fires the infinite-ell theorem", "[exponents]") {
  MediaParams params{3, 0.0, 10.0, WIntegralSign::Positive};
  const auto v = blowup_criterion(params, ell_of(EllClass::Infinite), std::nullopt);
  REQUIRE(v.blowup_predicted);
  CHECK(*v.theorem == TheoremTag::EllInfinite);
}

TEST_CASE("criterion priority order is ell first", "[exponents]") {
  MediaParams params{3, 0.0, 2.0, WIntegralSign::Positive};
  const auto v = blowup_criterion(params, ell_of(EllClass::Finite, 1.0), half_line(-1.0));
  REQUIRE(v.blowup_predicted);
  CHECK(*v.theorem == TheoremTag::EllFinite);
}

TEST_CASE("criterion needs a positive mass integral", "[exponents]") {
  MediaParams params{3, 0.0, 2.0, WIntegralSign::NonPositive};
  const auto v = blowup_criterion(params, ell_of(EllClass::Finite, 1.0), half_line(-1.0));
  CHECK_FALSE(v.blowup_predicted);
  CHECK(v.reason.find("w") != std::string::npos);
}

TEST_CASE("criterion demands some classification", "[exponents]") {
  MediaParams params{3, 0.0, 2.0, WIntegralSign::Positive};
  CHECK_THROWS_AS(blowup_criterion(params, ell_of(EllClass::Undetermined), std::nullopt),
                  MissingClassification);
}

TEST_CASE("criterion validates media parameters", "[exponents]") {
  MediaParams bad{0, 0.0, 2.0, WIntegralSign::Positive};
  CHECK_THROWS_AS(blowup_criterion(bad, ell_of(EllClass::Finite, 1.0), std::nullopt),
                  ValidationError);
  MediaParams bad_p{3, 0.0, 0.5, WIntegralSign::Positive};
  CHECK_THROWS_AS(blowup_criterion(bad_p, ell_of(EllClass::Finite, 1.0), std::nullopt),
                  ValidationError);
}

TEST_CASE("half-line test matches the sigma exponent table", "[exponents]") {
  // For forcing t^sigma (alpha = 0) the boundary of the J-based test is the
  // sigma exponent: exhaustive comparison over a p grid.
  for (int N : {3, 4, 5}) {
    for (double sigma : {-0.9, -0.5, 0.0, 0.4}) {
      const double q0 = -1.0 - sigma;
      const double p_star = sigma_exponent(N, sigma);
      REQUIRE(std::isfinite(p_star));
      for (double p = 1.05; p < 6.0; p += 0.05) {
        if (std::abs(p - p_star) < 1e-9) continue;  // strict inequalities both sides
        MediaParams params{N, 0.0, p, WIntegralSign::Positive};
        const auto v =
            blowup_criterion(params, ell_of(EllClass::Undetermined), half_line(q0));
        const bool expect = p < p_star;
        CHECK(v.blowup_predicted == expect);
      }
    }
  }
}

TEST_CASE("half-line left side decreases in p", "[exponents]") {
  for (double alpha : {-1.0, 0.0, 1.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double p = 1.1; p < 8.0; p += 0.1) {
      const double lhs = (2.0 * p + alpha) / (2.0 * (p - 1.0));
      CHECK(lhs < prev);
      prev = lhs;
    }
  }
}

TEST_CASE("finite-ell theorem never fires at or above p_upper", "[exponents]") {
  for (int N : {3, 4, 5})
    for (double alpha : {-1.0, 0.0, 2.0}) {
      const double pu = p_upper(N, alpha);
      for (double p : {pu, pu + 0.5, pu + 2.0}) {
        if (!(p > 1.0)) continue;
        MediaParams params{N, alpha, p, WIntegralSign::Positive};
        const auto v = blowup_criterion(params, ell_of(EllClass::Finite, 1.0), std::nullopt);
        if (v.blowup_predicted) CHECK(*v.theorem != TheoremTag::EllFinite);
      }
    }
}

TEST_CASE("exponent report carries the optional entries", "[exponents]") {
  const auto r = exponent_report(3, 0.0, -0.5, 1.0);
  CHECK(r.p_fujita == Catch::Approx(5.0 / 3.0));
  CHECK(r.p_lower == 1.0);
  CHECK(r.p_upper == 3.0);
  REQUIRE(r.sigma_exponent);
  CHECK(*r.sigma_exponent == 2.0);
  REQUIRE(r.m_alpha_exponent);
  CHECK(std::isinf(*r.m_alpha_exponent));
}
