#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/forcing.hpp"

namespace blowup {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class WIntegralSign { Positive, NonPositive, Unknown };

inline const char* to_string(WIntegralSign s) {
  switch (s) {
    case WIntegralSign::Positive: return "positive";
    case WIntegralSign::NonPositive: return "non_positive";
    default: return "unknown";
  }
}

/// Parameters of the medium: dimension N, potential exponent alpha,
/// nonlinearity power p, and the sign of the integral of the spatial profile.
struct MediaParams {
  int N = 1;
  double alpha = 0.0;
  double p = 2.0;
  WIntegralSign w_integral_sign = WIntegralSign::Unknown;

  void validate() const {
    if (N < 1) throw ValidationError("dimension N must be >= 1");
    if (!(p > 1.0)) throw ValidationError("nonlinearity power p must exceed 1");
  }
};

/// Fujita exponent p_F = 1 + (2 + alpha)/N.
inline double fujita_exponent(int N, double alpha) {
  if (N < 1) throw ValidationError("fujita_exponent: N must be >= 1");
  return 1.0 + (2.0 + alpha) / N;
}

/// Lower critical exponent p_* = 1 + alpha/N.
inline double p_lower(int N, double alpha) {
  if (N < 1) throw ValidationError("p_lower: N must be >= 1");
  return 1.0 + alpha / N;
}

/// Upper critical exponent p^* = (N + alpha)/(N - 2), infinite for N in {1, 2}.
inline double p_upper(int N, double alpha) {
  if (N < 1) throw ValidationError("p_upper: N must be >= 1");
  if (N <= 2) return kInf;
  return (N + alpha) / (N - 2.0);
}

/// Critical exponent for forcing amplitude t^sigma (alpha = 0):
/// (N - 2 sigma)/(N - 2 sigma - 2) for -1 < sigma < N/2 - 1, infinite above.
inline double sigma_exponent(int N, double sigma) {
  if (N < 1) throw ValidationError("sigma_exponent: N must be >= 1");
  if (!(sigma > -1.0))
    throw SigmaNotLocallyIntegrable("sigma_exponent: t^sigma needs sigma > -1");
  if (sigma >= 0.5 * N - 1.0) return kInf;
  return (N - 2.0 * sigma) / (N - 2.0 * sigma - 2.0);
}

/// Critical exponent for forcing amplitude ~ t^m with potential |x|^alpha:
/// (N - 2m + alpha)/(N - 2m - 2) for m < N/2 - 1, infinite above.
inline double m_alpha_exponent(int N, double m, double alpha) {
  if (N < 1) throw ValidationError("m_alpha_exponent: N must be >= 1");
  if (m >= 0.5 * N - 1.0) return kInf;
  return (N - 2.0 * m + alpha) / (N - 2.0 * m - 2.0);
}

/// All closed-form exponents for one (N, alpha), plus the optional
/// forcing-exponent entries when sigma or m is supplied.
struct ExponentReport {
  int N = 1;
  double alpha = 0.0;
  double p_fujita = 0.0;
  double p_lower = 0.0;
  double p_upper = 0.0;
  std::optional<double> sigma = std::nullopt;
  std::optional<double> sigma_exponent = std::nullopt;
  std::optional<double> m = std::nullopt;
  std::optional<double> m_alpha_exponent = std::nullopt;
};

inline ExponentReport exponent_report(int N, double alpha,
                                      std::optional<double> sigma = std::nullopt,
                                      std::optional<double> m = std::nullopt) {
  ExponentReport r;
  r.N = N;
  r.alpha = alpha;
  r.p_fujita = fujita_exponent(N, alpha);
  r.p_lower = blowup::p_lower(N, alpha);
  r.p_upper = blowup::p_upper(N, alpha);
  if (sigma) {
    r.sigma = sigma;
    r.sigma_exponent = blowup::sigma_exponent(N, *sigma);
  }
  if (m) {
    r.m = m;
    r.m_alpha_exponent = blowup::m_alpha_exponent(N, *m, alpha);
  }
  return r;
}

enum class TheoremTag { EllFinite, EllInfinite, JAllReals, JHalfLine };

inline const char* to_string(TheoremTag t) {
  switch (t) {
    case TheoremTag::EllFinite: return "ell_finite";
    case TheoremTag::EllInfinite: return "ell_infinite";
    case TheoremTag::JAllReals: return "j_all_reals";
    default: return "j_half_line";
  }
}

struct HypothesisCheck {
  std::string theorem;
  std::string hypothesis;
  bool holds;
};

/// Outcome of the unified blow-up criterion: either a prediction with the
/// theorem that fired, or the first failing hypothesis. The checklist records
/// every hypothesis evaluated, in priority order.
struct CriterionVerdict {
  bool blowup_predicted = false;
  std::optional<TheoremTag> theorem = std::nullopt;
  std::string reason;
  std::vector<HypothesisCheck> checklist;
};

/// Applies the blow-up theorems in priority order: ell finite, ell infinite,
/// then the J-based test. All hypothesis inequalities are strict; equality
/// cases fall through to the next theorem or to the failure report.
inline CriterionVerdict blowup_criterion(const MediaParams& params, const CesaroEstimate& ell,
                                         const std::optional<QZeroEstimate>& q0 = std::nullopt) {
  params.validate();
  if (ell.ell_class == EllClass::Undetermined && !q0)
    throw MissingClassification(
        "blowup_criterion: ell is undetermined and no J classification was given");

  CriterionVerdict v;
  const double pl = p_lower(params.N, params.alpha);
  const double pu = p_upper(params.N, params.alpha);
  const bool w_pos = params.w_integral_sign == WIntegralSign::Positive;

  char buf[160];
  auto check = [&](const char* thm, const char* name, bool ok) {
    v.checklist.push_back({thm, name, ok});
    if (!ok && v.reason.empty()) {
      std::snprintf(buf, sizeof buf, "%s: %s", thm, name);
      v.reason = buf;
    }
    return ok;
  };
  auto fire = [&](TheoremTag tag) {
    v.blowup_predicted = true;
    v.theorem = tag;
    v.reason.clear();
    return v;
  };

  // Theorem for 0 < ell < inf.
  {
    const char* thm = "ell_finite";
    bool ok = check(thm, "integral of w is positive", w_pos);
    ok &= check(thm, "ell is finite and positive", ell.ell_class == EllClass::Finite);
    std::snprintf(buf, sizeof buf, "p > p_* = %g", pl);
    ok &= check(thm, buf, params.p > pl);
    std::snprintf(buf, sizeof buf, "p < p^* = %g", pu);
    ok &= check(thm, buf, params.p < pu);
    if (ok) return fire(TheoremTag::EllFinite);
  }

  // Theorem for ell = inf.
  {
    const char* thm = "ell_infinite";
    bool ok = check(thm, "integral of w is positive", w_pos);
    ok &= check(thm, "ell is infinite", ell.ell_class == EllClass::Infinite);
    std::snprintf(buf, sizeof buf, "p > p_* = %g", pl);
    ok &= check(thm, buf, params.p > pl);
    if (ok) return fire(TheoremTag::EllInfinite);
  }

  // J-based test, covering ell = 0 as well.
  const double lhs = (2.0 * params.p + params.alpha) / (2.0 * (params.p - 1.0)) -
                     0.5 * params.N - 1.0;
  {
    const char* thm = "j_all_reals";
    bool ok = check(thm, "integral of w is positive", w_pos);
    ok &= check(thm, "J = R", q0 && q0->j_class == JClass::AllReals);
    std::snprintf(buf, sizeof buf, "p > p_* = %g", pl);
    ok &= check(thm, buf, params.p > pl);
    if (ok) return fire(TheoremTag::JAllReals);
  }
  {
    const char* thm = "j_half_line";
    bool ok = check(thm, "integral of w is positive", w_pos);
    ok &= check(thm, "J is a half line (q0, inf)", q0 && q0->j_class == JClass::HalfLine);
    if (q0 && q0->j_class == JClass::HalfLine)
      std::snprintf(buf, sizeof buf, "(2p+alpha)/(2(p-1)) - N/2 - 1 = %g > q0 = %g", lhs, q0->q0);
    else
      std::snprintf(buf, sizeof buf, "(2p+alpha)/(2(p-1)) - N/2 - 1 > q0");
    ok &= check(thm, buf, q0 && q0->j_class == JClass::HalfLine && lhs > q0->q0);
    if (ok) return fire(TheoremTag::JHalfLine);
  }

  v.blowup_predicted = false;
  return v;
}

}  // namespace blowup
