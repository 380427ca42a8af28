#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/quadrature.hpp"

namespace blowup {

enum class ForcingFamily {
  Constant,
  Power,
  PowerLog,
  Periodic,
  OscillatingPower,
  ExpGrowth,
  Sampled,
};

enum class EllClass { Zero, Finite, Infinite, Undetermined };

/// A nonnegative, locally integrable forcing amplitude a(t) on (0, inf).
///
/// Families:
///   Constant          a(t) = c
///   Power             a(t) = a_inf t^m,              m > -1
///   PowerLog          a(t) = a_inf t^m log(e + t)^q, m > -1
///   Periodic          a(t) = psi(t mod period)
///   OscillatingPower  a(t) = t^m psi(t mod period),  m > -1
///   ExpGrowth         a(t) = amplitude exp(rate t),  rate signed
///   Sampled           linear interpolation of a strictly increasing grid
///
/// Function-valued families clamp psi at zero; parametric families reject
/// negative amplitudes at construction.
class ForcingProfile {
 public:
  using Func = std::function<double(double)>;

  static ForcingProfile constant(double c) {
    require(c >= 0.0, "constant forcing amplitude must be >= 0");
    return ForcingProfile(ConstantF{c});
  }
  static ForcingProfile power(double a_inf, double m) {
    require(a_inf >= 0.0, "power forcing amplitude must be >= 0");
    require(m > -1.0, "power forcing exponent must exceed -1 for local integrability");
    return ForcingProfile(PowerF{a_inf, m});
  }
  static ForcingProfile power_log(double a_inf, double m, double q) {
    require(a_inf >= 0.0, "power-log forcing amplitude must be >= 0");
    require(m > -1.0, "power-log forcing exponent must exceed -1 for local integrability");
    return ForcingProfile(PowerLogF{a_inf, m, q});
  }
  static ForcingProfile periodic(Func psi, double period) {
    require(static_cast<bool>(psi), "periodic forcing needs a sample function");
    require(period > 0.0, "period must be positive");
    return ForcingProfile(PeriodicF{std::move(psi), period});
  }
  static ForcingProfile oscillating_power(double m, Func psi, double period) {
    require(m > -1.0, "oscillating-power exponent must exceed -1");
    require(static_cast<bool>(psi), "oscillating-power forcing needs a sample function");
    require(period > 0.0, "period must be positive");
    return ForcingProfile(OscPowerF{m, std::move(psi), period});
  }
  /// sign = +1 for growth, -1 for decay.
  static ForcingProfile exp_growth(int sign, double rate, double amplitude = 1.0) {
    require(sign == 1 || sign == -1, "exp_growth sign must be +1 or -1");
    require(rate > 0.0, "exp_growth rate must be positive");
    require(amplitude >= 0.0, "exp_growth amplitude must be >= 0");
    return ForcingProfile(ExpF{sign * rate, amplitude});
  }
  static ForcingProfile sampled(std::vector<std::pair<double, double>> grid) {
    require(grid.size() >= 2, "sampled forcing needs at least two points");
    SampledF s;
    s.t.reserve(grid.size());
    s.a.reserve(grid.size());
    for (const auto& [t, a] : grid) {
      require(s.t.empty() || t > s.t.back(), "sampled forcing grid must be strictly increasing");
      require(t >= 0.0, "sampled forcing times must be >= 0");
      require(a >= 0.0, "sampled forcing values must be >= 0");
      s.t.push_back(t);
      s.a.push_back(a);
    }
    return ForcingProfile(std::move(s));
  }

  ForcingFamily family() const {
    return static_cast<ForcingFamily>(v_.index());
  }

  /// a(t) for t > 0. Sampled profiles refuse extrapolation.
  double operator()(double t) const {
    if (!(t > 0.0)) throw NonPositiveTime("forcing evaluated at t <= 0");
    return at(t);
  }

  /// a(t) extended by its limit at t = 0 (may be +inf for singular families).
  /// Used by integrators, which never weight the endpoint value by a finite
  /// panel unless the family is regular there.
  double at(double t) const {
    return std::visit([&](const auto& f) { return eval(f, t); }, v_);
  }

  /// Period of the oscillating factor, if any; drives panel selection.
  std::optional<double> period() const {
    if (const auto* p = std::get_if<PeriodicF>(&v_)) return p->period;
    if (const auto* p = std::get_if<OscPowerF>(&v_)) return p->period;
    return std::nullopt;
  }

  /// Leading power c t^e as t -> 0+, when the family has one.
  std::optional<std::pair<double, double>> power_head() const {
    if (const auto* p = std::get_if<PowerF>(&v_)) return std::pair{p->a_inf, p->m};
    if (const auto* p = std::get_if<PowerLogF>(&v_)) return std::pair{p->a_inf, p->m};
    if (const auto* p = std::get_if<OscPowerF>(&v_))
      return std::pair{std::max(0.0, p->psi(0.0)), p->m};
    return std::nullopt;
  }

  /// Valid evaluation range; (0, inf) except for sampled data.
  std::pair<double, double> sample_range() const {
    if (const auto* s = std::get_if<SampledF>(&v_)) return {s->t.front(), s->t.back()};
    return {0.0, std::numeric_limits<double>::infinity()};
  }

  /// Rescales the profile amplitude by s >= 0 (sweep axis support).
  ForcingProfile scaled(double s) const {
    require(s >= 0.0, "forcing scale must be >= 0");
    ForcingProfile out = *this;
    std::visit(
        [&](auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, ConstantF>) {
            f.c *= s;
          } else if constexpr (std::is_same_v<T, PowerF> || std::is_same_v<T, PowerLogF>) {
            f.a_inf *= s;
          } else if constexpr (std::is_same_v<T, ExpF>) {
            f.amplitude *= s;
          } else if constexpr (std::is_same_v<T, PeriodicF>) {
            f.psi = [inner = f.psi, s](double t) { return s * inner(t); };
          } else if constexpr (std::is_same_v<T, OscPowerF>) {
            f.psi = [inner = f.psi, s](double t) { return s * inner(t); };
          } else {
            for (auto& a : f.a) a *= s;
          }
        },
        out.v_);
    return out;
  }

  std::string describe() const {
    char buf[128];
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, ConstantF>) {
            std::snprintf(buf, sizeof buf, "constant(c=%g)", f.c);
          } else if constexpr (std::is_same_v<T, PowerF>) {
            std::snprintf(buf, sizeof buf, "power(a_inf=%g,m=%g)", f.a_inf, f.m);
          } else if constexpr (std::is_same_v<T, PowerLogF>) {
            std::snprintf(buf, sizeof buf, "power_log(a_inf=%g,m=%g,q=%g)", f.a_inf, f.m, f.q);
          } else if constexpr (std::is_same_v<T, PeriodicF>) {
            std::snprintf(buf, sizeof buf, "periodic(period=%g)", f.period);
          } else if constexpr (std::is_same_v<T, OscPowerF>) {
            std::snprintf(buf, sizeof buf, "oscillating_power(m=%g,period=%g)", f.m, f.period);
          } else if constexpr (std::is_same_v<T, ExpF>) {
            std::snprintf(buf, sizeof buf, "exp_growth(rate=%g,amplitude=%g)", f.rate, f.amplitude);
          } else {
            std::snprintf(buf, sizeof buf, "sampled(%zu points)", f.t.size());
          }
        },
        v_);
    return buf;
  }

  /// Closed-form classification of ell = lim A(t), when the family admits
  /// one. The pair holds the class and the limit value (NaN unless Finite).
  std::optional<std::pair<EllClass, double>> closed_form_ell(
      const QuadratureConfig& cfg = {}) const {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto finite_or_zero = [&](double v) {
      return std::pair{v > 0.0 ? EllClass::Finite : EllClass::Zero, v > 0.0 ? v : nan};
    };
    using R = std::optional<std::pair<EllClass, double>>;
    return std::visit(
        [&](const auto& f) -> R {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, ConstantF>) {
            return finite_or_zero(f.c);
          } else if constexpr (std::is_same_v<T, PowerF>) {
            if (f.a_inf == 0.0) return finite_or_zero(0.0);
            if (f.m > 0.0) return std::pair{EllClass::Infinite, nan};
            if (f.m == 0.0) return finite_or_zero(f.a_inf);
            return finite_or_zero(0.0);  // A(t) ~ a_inf t^m/(m+1) -> 0
          } else if constexpr (std::is_same_v<T, PowerLogF>) {
            if (f.a_inf == 0.0) return finite_or_zero(0.0);
            if (f.m > 0.0 || (f.m == 0.0 && f.q > 0.0)) return std::pair{EllClass::Infinite, nan};
            if (f.m == 0.0 && f.q == 0.0) return finite_or_zero(f.a_inf);
            return finite_or_zero(0.0);
          } else if constexpr (std::is_same_v<T, PeriodicF>) {
            return finite_or_zero(periodic_mean(cfg));
          } else if constexpr (std::is_same_v<T, OscPowerF>) {
            const double mean = periodic_mean(cfg);
            if (mean == 0.0) return finite_or_zero(0.0);  // psi clamps to 0 a.e.
            if (f.m > 0.0) return std::pair{EllClass::Infinite, nan};
            if (f.m == 0.0) return finite_or_zero(mean);
            return finite_or_zero(0.0);
          } else if constexpr (std::is_same_v<T, ExpF>) {
            if (f.amplitude == 0.0) return finite_or_zero(0.0);
            if (f.rate > 0.0) return std::pair{EllClass::Infinite, nan};
            return finite_or_zero(0.0);
          } else {
            return std::nullopt;  // sampled data has no closed form
          }
        },
        v_);
  }

  /// Mean of the periodic factor over one period (clamped at zero), for the
  /// Periodic and OscillatingPower families.
  double periodic_mean(const QuadratureConfig& cfg = {}) const {
    const Func* psi = nullptr;
    double period = 0.0;
    if (const auto* p = std::get_if<PeriodicF>(&v_)) {
      psi = &p->psi;
      period = p->period;
    } else if (const auto* p = std::get_if<OscPowerF>(&v_)) {
      psi = &p->psi;
      period = p->period;
    } else {
      throw InvalidParameters("periodic_mean: profile has no periodic factor");
    }
    auto clamped = [&](double s) { return std::max(0.0, (*psi)(s)); };
    int n = std::max(512, cfg.min_panels);
    return simpson(clamped, 0.0, period, n) / period;
  }

 private:
  struct ConstantF { double c; };
  struct PowerF { double a_inf, m; };
  struct PowerLogF { double a_inf, m, q; };
  struct PeriodicF { Func psi; double period; };
  struct OscPowerF { double m; Func psi; double period; };
  struct ExpF { double rate, amplitude; };
  struct SampledF { std::vector<double> t, a; };
  using V = std::variant<ConstantF, PowerF, PowerLogF, PeriodicF, OscPowerF, ExpF, SampledF>;

  explicit ForcingProfile(V v) : v_(std::move(v)) {}

  static void require(bool ok, const char* msg) {
    if (!ok) throw ValidationError(msg);
  }

  static double eval(const ConstantF& f, double) { return f.c; }
  static double eval(const PowerF& f, double t) {
    if (t == 0.0) return f.m > 0 ? 0.0 : (f.m == 0 ? f.a_inf : std::numeric_limits<double>::infinity());
    return f.a_inf * std::pow(t, f.m);
  }
  static double eval(const PowerLogF& f, double t) {
    if (t == 0.0) return f.m > 0 ? 0.0 : (f.m == 0 ? f.a_inf : std::numeric_limits<double>::infinity());
    return f.a_inf * std::pow(t, f.m) * std::pow(std::log(std::numbers::e + t), f.q);
  }
  static double eval(const PeriodicF& f, double t) {
    return std::max(0.0, f.psi(std::fmod(t, f.period)));
  }
  static double eval(const OscPowerF& f, double t) {
    const double psi = std::max(0.0, f.psi(std::fmod(t, f.period)));
    if (t == 0.0) return f.m > 0 ? 0.0 : (f.m == 0 ? psi : std::numeric_limits<double>::infinity());
    return std::pow(t, f.m) * psi;
  }
  static double eval(const ExpF& f, double t) { return f.amplitude * std::exp(f.rate * t); }
  static double eval(const SampledF& f, double t) {
    if (t < f.t.front() || t > f.t.back())
      throw OutsideSampleRange("sampled forcing evaluated outside its grid");
    auto it = std::lower_bound(f.t.begin(), f.t.end(), t);
    if (it == f.t.begin()) return f.a.front();
    const std::size_t i = static_cast<std::size_t>(it - f.t.begin());
    const double t0 = f.t[i - 1], t1 = f.t[i];
    const double w = (t - t0) / (t1 - t0);
    return (1.0 - w) * f.a[i - 1] + w * f.a[i];
  }

  friend double integrate_profile(const ForcingProfile&, double, double, const QuadratureConfig&);

  V v_;
};

namespace detail {

// Exact integral of the piecewise-linear interpolant on [t0, t1], both inside
// the sample range.
inline double integrate_sampled(std::span<const double> ts, std::span<const double> as,
                                double t0, double t1) {
  auto value = [&](double t) {
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    if (it == ts.begin()) return as.front();
    const std::size_t i = static_cast<std::size_t>(it - ts.begin());
    const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
    return (1.0 - w) * as[i - 1] + w * as[i];
  };
  double sum = 0.0;
  double left = t0;
  double vleft = value(t0);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] <= t0) continue;
    if (ts[i] >= t1) break;
    sum += 0.5 * (vleft + as[i]) * (ts[i] - left);
    left = ts[i];
    vleft = as[i];
  }
  sum += 0.5 * (vleft + value(t1)) * (t1 - left);
  return sum;
}

}  // namespace detail

/// ∫_{t0}^{t1} a(s) ds. Handles power singularities at t0 = 0 with a
/// closed-form head cell and keys panel counts to any oscillation period.
inline double integrate_profile(const ForcingProfile& a, double t0, double t1,
                                const QuadratureConfig& cfg = {}) {
  if (!(t1 > t0)) return 0.0;
  if (a.family() == ForcingFamily::Sampled) {
    const auto* s = std::get_if<ForcingProfile::SampledF>(&a.v_);
    if (t0 < s->t.front() || t1 > s->t.back())
      throw OutsideSampleRange("forcing integral extends outside the sampled grid");
    return detail::integrate_sampled(s->t, s->a, t0, t1);
  }
  const double feature = a.period().value_or(0.0);
  auto f = [&](double t) { return a.at(t); };
  if (t0 == 0.0) {
    if (auto head = a.power_head()) {
      const auto [coef, expo] = *head;
      if (expo <= -1.0)
        throw QuadratureFailure("forcing has a non-integrable singularity at t = 0");
      if (expo < 0.0) {
        // Closed form of the leading power on [0, eps], dyadic Simpson after.
        const double eps = t1 * cfg.head_fraction;
        double total = coef * std::pow(eps, expo + 1.0) / (expo + 1.0);
        double lo = eps;
        while (lo < t1) {
          const double hi = std::min(2.0 * lo, t1);
          total += simpson(f, lo, hi, std::max(64, panel_count(cfg, hi - lo, feature) / 16));
          lo = hi;
        }
        return total;
      }
    }
  }
  return integrate(f, t0, t1, cfg, feature);
}

/// Cesaro mean A(t) = (1/t) ∫_0^t a(s) ds.
inline double cesaro_mean(const ForcingProfile& a, double t, const QuadratureConfig& cfg = {}) {
  if (!(t > 0.0)) throw NonPositiveTime("cesaro_mean needs t > 0");
  return integrate_profile(a, 0.0, t, cfg) / t;
}

/// ∫_{T/2}^{2T/3} a(t) dt, the window integral behind the set J.
inline double window_integral(const ForcingProfile& a, double T, const QuadratureConfig& cfg = {}) {
  if (!(T > 0.0)) throw NonPositiveTime("window_integral needs T > 0");
  return integrate_profile(a, 0.5 * T, 2.0 * T / 3.0, cfg);
}

struct CesaroSample {
  double t;
  double mean;
};

/// Classification of ell = lim A(t), with the probe samples used.
struct CesaroEstimate {
  EllClass ell_class = EllClass::Undetermined;
  double value = std::numeric_limits<double>::quiet_NaN();  // set when Finite
  std::vector<CesaroSample> samples;
  double largest_t = 0.0;
};

inline const char* to_string(EllClass c) {
  switch (c) {
    case EllClass::Zero: return "zero";
    case EllClass::Finite: return "finite";
    case EllClass::Infinite: return "infinite";
    default: return "undetermined";
  }
}

namespace detail {

inline CesaroEstimate trend_classify(CesaroEstimate est) {
  // Log-log slope of A(t) over the last half of the probes.
  const auto& s = est.samples;
  if (s.size() < 8) {
    est.ell_class = EllClass::Undetermined;
    return est;
  }
  std::vector<double> lx, ly;
  for (std::size_t i = s.size() / 2; i < s.size(); ++i) {
    if (!(s[i].mean > 0.0) || !std::isfinite(s[i].mean)) {
      est.ell_class = s[i].mean == 0.0 ? EllClass::Zero : EllClass::Infinite;
      return est;
    }
    lx.push_back(std::log(s[i].t));
    ly.push_back(std::log(s[i].mean));
  }
  const double slope = fit_line(lx, ly).slope;
  const double last = s.back().mean;
  if (last < 1e-14 || slope < -0.1) {
    est.ell_class = EllClass::Zero;
  } else if (slope > 0.1) {
    est.ell_class = EllClass::Infinite;
  } else {
    double lo = last, hi = last;
    for (std::size_t i = s.size() - 4; i < s.size(); ++i) {
      lo = std::min(lo, s[i].mean);
      hi = std::max(hi, s[i].mean);
    }
    if (hi - lo < 0.05 * hi) {
      est.ell_class = EllClass::Finite;
      est.value = last;
    } else {
      est.ell_class = EllClass::Undetermined;
    }
  }
  return est;
}

}  // namespace detail

/// Classifies ell = lim_{t->inf} A(t). Uses the closed form when the family
/// admits one and otherwise fits the trend of A(t) over 16 logarithmically
/// spaced probes ending at t_max. Undetermined is a valid outcome.
inline CesaroEstimate classify_ell(const ForcingProfile& a, double t_max,
                                   const QuadratureConfig& cfg = {}) {
  if (!(t_max > 0.0)) throw NonPositiveTime("classify_ell needs t_max > 0");

  CesaroEstimate est;
  auto [range_lo, range_hi] = a.sample_range();
  const double hi = std::min(t_max, range_hi);
  const double lo = std::max(hi / 32768.0, range_lo > 0.0 ? range_lo : hi / 32768.0);
  est.largest_t = hi;
  if (hi / lo >= 16.0) {
    for (double t : log_grid(lo, hi, 16)) {
      double m;
      try {
        m = cesaro_mean(a, t, cfg);
      } catch (const OutsideSampleRange&) {
        continue;  // sampled grid not anchored at 0; trend uses what exists
      }
      est.samples.push_back({t, m});
    }
  }

  if (auto closed = a.closed_form_ell(cfg)) {
    est.ell_class = closed->first;
    est.value = closed->second;
    return est;
  }
  return detail::trend_classify(std::move(est));
}

inline constexpr double kDivergenceThreshold = 0.1;  // slope declaring q in J
inline constexpr double kStrongSlope = 1.0;          // slope declaring J = R at q_lo

/// Default probe times for q0_estimate: T_base * {2^0, ..., 2^15}.
inline std::vector<double> default_t_grid(double t_base = 1.0, int points = 16) {
  std::vector<double> g(points);
  double t = t_base;
  for (int i = 0; i < points; ++i, t *= 2.0) g[i] = t;
  return g;
}

inline constexpr std::pair<double, double> kDefaultQWindow{-6.0, 4.0};

enum class JClass { Empty, AllReals, HalfLine };

struct QProbe {
  double q;
  double tail_slope;  // log-log slope of T^q I(T) at the largest probes
  bool in_j;
};

/// Estimate of J = { q : T^q ∫_{T/2}^{2T/3} a diverges } and q0 = inf J.
struct QZeroEstimate {
  JClass j_class = JClass::Empty;
  double q0 = std::numeric_limits<double>::quiet_NaN();  // -inf for AllReals
  std::vector<QProbe> diagnostics;
  bool window_floor_hit = false;  // boundary clipped at the probe window edge
};

inline const char* to_string(JClass c) {
  switch (c) {
    case JClass::Empty: return "empty";
    case JClass::AllReals: return "all_reals";
    default: return "half_line";
  }
}

/// Estimates q0 = inf J by probing the window integral on a geometric T grid.
///
/// For each probed q the log-log slope of T^q I(T) is measured on the two
/// largest grid segments; q is declared in J when both exceed
/// kDivergenceThreshold. The membership boundary is bracketed by bisection to
/// (q_hi - q_lo)/2^10. On power-law tails the threshold shifts the boundary
/// up by exactly its own value, so it is subtracted from the reported q0.
inline QZeroEstimate q0_estimate(const ForcingProfile& a, std::span<const double> t_grid,
                                 std::pair<double, double> q_window = kDefaultQWindow,
                                 const QuadratureConfig& cfg = {}) {
  if (t_grid.size() < 8)
    throw InsufficientGrid("q0_estimate needs at least 8 probe times");
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
    if (!(t_grid[i + 1] >= 2.0 * t_grid[i] * (1.0 - 1e-12)))
      throw InsufficientGrid("q0_estimate needs a geometric T grid with ratio >= 2");
  const auto [q_lo, q_hi] = q_window;
  if (!(q_lo < q_hi)) throw InvalidParameters("q0_estimate needs q_lo < q_hi");

  const std::size_t n = t_grid.size();
  std::vector<double> logT(n), logI(n);
  for (std::size_t i = 0; i < n; ++i) {
    logT[i] = std::log(t_grid[i]);
    const double I = window_integral(a, t_grid[i], cfg);
    logI[i] = I <= 1e-300 ? -std::numeric_limits<double>::infinity() : std::log(I);
    if (std::isinf(I)) logI[i] = std::numeric_limits<double>::infinity();
  }

  // Tail slope of log(T^q I) over one grid segment, counted from the end.
  auto segment_slope = [&](double q, std::size_t back) {
    const std::size_t j = n - 1 - back;
    const double y1 = q * logT[j] + logI[j];
    const double y0 = q * logT[j - 1] + logI[j - 1];
    return (y1 - y0) / (logT[j] - logT[j - 1]);
  };
  auto tail_slope = [&](double q) {
    if (std::isinf(logI[n - 1]))
      return logI[n - 1] > 0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
    if (std::isinf(logI[n - 2]) || std::isinf(logI[n - 3]))
      return -std::numeric_limits<double>::infinity();
    return std::min(segment_slope(q, 0), segment_slope(q, 1));
  };
  auto in_j = [&](double q) { return tail_slope(q) > kDivergenceThreshold; };

  QZeroEstimate est;
  auto probe = [&](double q) { est.diagnostics.push_back({q, tail_slope(q), in_j(q)}); };
  for (int i = 0; i <= 10; ++i) probe(q_lo + (q_hi - q_lo) * i / 10.0);

  if (!in_j(q_hi)) {
    est.j_class = JClass::Empty;
    return est;
  }
  if (in_j(q_lo)) {
    if (tail_slope(q_lo) > kStrongSlope) {
      est.j_class = JClass::AllReals;
      est.q0 = -std::numeric_limits<double>::infinity();
      return est;
    }
    est.j_class = JClass::HalfLine;
    est.q0 = q_lo - kDivergenceThreshold;
    est.window_floor_hit = true;
    return est;
  }

  double lo = q_lo, hi = q_hi;
  for (int i = 0; i < 10; ++i) {
    const double mid = 0.5 * (lo + hi);
    (in_j(mid) ? hi : lo) = mid;
  }
  est.j_class = JClass::HalfLine;
  est.q0 = 0.5 * (lo + hi) - kDivergenceThreshold;
  probe(0.5 * (lo + hi));
  return est;
}

inline QZeroEstimate q0_estimate(const ForcingProfile& a,
                                 std::pair<double, double> q_window = kDefaultQWindow,
                                 const QuadratureConfig& cfg = {}) {
  const auto grid = default_t_grid();
  return q0_estimate(a, grid, q_window, cfg);
}

/// Quadrature values of ∫_a^b g(s) psi(lambda s) ds for each lambda. The last
/// value approaches (period mean of psi) * ∫_a^b g at rate O(1/lambda).
inline std::vector<std::pair<double, double>> riemann_lebesgue_average(
    const std::function<double(double)>& g, const std::function<double(double)>& psi,
    double period, double a, double b, std::span<const double> lambdas,
    const QuadratureConfig& cfg = {}) {
  if (!(b > a)) throw InvalidParameters("riemann_lebesgue_average needs b > a");
  if (!(period > 0.0)) throw InvalidParameters("riemann_lebesgue_average needs a positive period");
  std::vector<std::pair<double, double>> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) {
    auto f = [&](double s) { return g(s) * psi(lambda * s); };
    const double feature = period / std::max(lambda, 1.0);
    out.emplace_back(lambda, integrate(f, a, b, cfg, feature));
  }
  return out;
}

}  // namespace blowup
