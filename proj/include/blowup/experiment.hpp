#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "blowup/config.hpp"
#include "blowup/cutoffs.hpp"
#include "blowup/errors.hpp"
#include "blowup/exponents.hpp"
#include "blowup/forcing.hpp"
#include "blowup/solver.hpp"
#include "blowup/verification.hpp"

namespace blowup {

namespace fs = std::filesystem;

/// One sweep grid point with its theorem prediction and solver outcome.
struct RegimePoint {
  double p = 0.0;
  double alpha = 0.0;
  double forcing_amplitude = 1.0;
  std::string forcing_desc;
  CriterionVerdict predicted;
  BlowupVerdict observed;
};

struct RegimeMap {
  std::vector<RegimePoint> rows;
  int predicted_blowup = 0;
  int observed_blowup = 0;
  int agree_blowup = 0;      // predicted and observed
  int horizon_limited = 0;   // predicted but the run stayed global up to T_end
  int inconclusive = 0;
};

namespace detail {

// Classifies the forcing and evaluates the criterion for one problem variant.
inline CriterionVerdict predict(const ExperimentConfig& cfg, const ProblemSpec& spec) {
  MediaParams params;
  params.N = spec.N;
  params.alpha = spec.alpha;
  params.p = spec.p;
  params.w_integral_sign = spec.w.integral_sign(spec.N);
  const CesaroEstimate ell = classify_ell(spec.forcing, cfg.classify.t_max);
  std::optional<QZeroEstimate> q0;
  try {
    const auto grid = default_t_grid(cfg.classify.T_base);
    q0 = q0_estimate(spec.forcing, grid, {cfg.classify.q_min, cfg.classify.q_max});
  } catch (const Error&) {
    // leave q0 unset; the criterion works from ell alone
  }
  return blowup_criterion(params, ell, q0);
}

inline std::string fmt_csv_double(double v) {
  if (std::isnan(v)) return "nan";
  return fmt_g(v);
}

}  // namespace detail

/// Runs the sweep grid (p x alpha x forcing_amplitude) in a worker pool.
/// Results are aggregated in grid order regardless of completion order, and a
/// failure at one point degrades only that row.
inline RegimeMap run_sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep.enabled)
    throw ValidationError("run_sweep needs a [sweep] section with at least one axis");

  const std::vector<double> ps = cfg.sweep.p.empty() ? std::vector<double>{cfg.p} : cfg.sweep.p;
  const std::vector<double> alphas =
      cfg.sweep.alpha.empty() ? std::vector<double>{cfg.alpha} : cfg.sweep.alpha;
  const std::vector<double> amps = cfg.sweep.forcing_amplitude.empty()
                                       ? std::vector<double>{1.0}
                                       : cfg.sweep.forcing_amplitude;

  struct Point {
    double p, alpha, amp;
  };
  std::vector<Point> points;
  for (double p : ps)
    for (double alpha : alphas)
      for (double amp : amps) points.push_back({p, alpha, amp});

  RegimeMap map;
  map.rows.resize(points.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
      const Point& pt = points[i];
      RegimePoint& row = map.rows[i];
      row.p = pt.p;
      row.alpha = pt.alpha;
      row.forcing_amplitude = pt.amp;
      try {
        ProblemSpec spec = cfg.build_problem();
        spec.p = pt.p;
        spec.alpha = pt.alpha;
        spec.forcing = spec.forcing.scaled(pt.amp);
        spec.validate();
        row.forcing_desc = spec.forcing.describe();
        row.predicted = detail::predict(cfg, spec);
        auto [trace, verdict] = solve(spec, cfg.solver);
        row.observed = verdict;
      } catch (const Error& e) {
        row.observed.cls = VerdictClass::Inconclusive;
        row.observed.reason = e.what();
        if (row.forcing_desc.empty()) row.forcing_desc = cfg.forcing.family;
      }
    }
  };

  int nworkers = cfg.output.workers > 0 ? cfg.output.workers
                                        : static_cast<int>(std::thread::hardware_concurrency());
  nworkers = std::clamp<int>(nworkers, 1, static_cast<int>(points.size()));
  std::vector<std::thread> pool;
  for (int k = 0; k < nworkers; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  for (const auto& row : map.rows) {
    if (row.predicted.blowup_predicted) ++map.predicted_blowup;
    if (row.observed.cls == VerdictClass::BlownUp) ++map.observed_blowup;
    if (row.predicted.blowup_predicted && row.observed.cls == VerdictClass::BlownUp)
      ++map.agree_blowup;
    if (row.predicted.blowup_predicted && row.observed.cls == VerdictClass::GlobalUpTo)
      ++map.horizon_limited;
    if (row.observed.cls == VerdictClass::Inconclusive) ++map.inconclusive;
  }
  return map;
}

inline void write_regime_csv(const RegimeMap& map, const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  os << "p,alpha,forcing_amplitude,forcing,predicted,theorem,observed,t_b,rate\n";
  for (const auto& row : map.rows) {
    os << detail::fmt_g(row.p) << ',' << detail::fmt_g(row.alpha) << ','
       << detail::fmt_g(row.forcing_amplitude) << ',' << row.forcing_desc << ','
       << (row.predicted.blowup_predicted ? "blowup" : "outside_theorems") << ','
       << (row.predicted.theorem ? to_string(*row.predicted.theorem) : "none") << ','
       << to_string(row.observed.cls) << ',' << detail::fmt_csv_double(row.observed.t_b) << ','
       << detail::fmt_csv_double(row.observed.rate_exponent) << '\n';
  }
}

inline json sweep_summary_json(const ExperimentConfig& cfg, const RegimeMap& map) {
  json j;
  j["points"] = map.rows.size();
  j["predicted_blowup"] = map.predicted_blowup;
  j["observed_blowup"] = map.observed_blowup;
  j["agree_blowup"] = map.agree_blowup;
  // Predicted blow-up with a global-until-T_end run is horizon limited, not a
  // disagreement: the theorems bound no blow-up time.
  j["horizon_limited"] = map.horizon_limited;
  j["inconclusive"] = map.inconclusive;
  j["seed"] = cfg.output.seed;
  return j;
}

// ---------------------------------------------------------------------------
// Trace persistence: trace.csv + snapshots/*.csv + meta.json.

inline void write_trace(const ExperimentConfig& cfg, const SolutionTrace& trace,
                        const BlowupVerdict& verdict, const fs::path& dir) {
  fs::create_directories(dir / "snapshots");

  {
    std::ofstream os(dir / "trace.csv");
    if (!os) throw Error("cannot write trace.csv");
    os << "t,dt,supnorm,boundary_max\n";
    for (std::size_t i = 0; i < trace.dt_history.size(); ++i) {
      os << detail::fmt_g(trace.dt_history[i].first) << ','
         << detail::fmt_g(trace.dt_history[i].second) << ','
         << detail::fmt_g(trace.supnorm_history[i + 1].second) << ','
         << detail::fmt_g(trace.boundary_history[i]) << '\n';
    }
  }

  for (std::size_t j = 0; j < trace.snapshots.size(); ++j) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%06zu.csv", j);
    std::ofstream os(dir / "snapshots" / name);
    if (!os) throw Error("cannot write snapshot csv");
    os << "r,u\n";
    for (std::size_t i = 0; i < trace.r.size(); ++i)
      os << detail::fmt_g(trace.r[i]) << ',' << detail::fmt_g(trace.snapshots[j][i]) << '\n';
  }

  json meta;
  meta["config_ini"] = cfg.to_ini();
  meta["times"] = trace.times;
  meta["boundary_monitor"] = trace.boundary_monitor;
  meta["verdict"] = {
      {"class", to_string(verdict.cls)},
      {"t_b", verdict.t_b},
      {"rate_exponent", verdict.rate_exponent},
      {"T_end", verdict.T_end},
      {"reason", verdict.reason},
      {"final_supnorm", verdict.final_supnorm},
      {"final_dt", verdict.final_dt},
      {"boundary_contaminated", verdict.boundary_contaminated},
  };
  std::ofstream os(dir / "meta.json");
  os << meta.dump(2) << '\n';
}

struct StoredTrace {
  ExperimentConfig config;
  SolutionTrace trace;
  BlowupVerdict verdict;
};

inline StoredTrace read_trace(const fs::path& dir) {
  std::ifstream in(dir / "meta.json");
  if (!in) throw ParseError("cannot open " + (dir / "meta.json").string());
  json meta;
  try {
    in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("meta.json parse failure: ") + e.what());
  }

  StoredTrace out;
  out.config = parse_config_text(meta.at("config_ini").get<std::string>(), dir);
  out.trace.problem = out.config.build_problem();
  out.trace.solver = out.config.solver;
  out.trace.times = meta.at("times").get<std::vector<double>>();
  out.trace.boundary_monitor = meta.at("boundary_monitor").get<std::vector<double>>();

  const auto& v = meta.at("verdict");
  const std::string cls = v.at("class").get<std::string>();
  out.verdict.cls = cls == "blown_up" ? VerdictClass::BlownUp
                    : cls == "global_up_to" ? VerdictClass::GlobalUpTo
                                            : VerdictClass::Inconclusive;
  out.verdict.t_b = v.at("t_b").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                          : v.at("t_b").get<double>();
  out.verdict.rate_exponent = v.at("rate_exponent").is_null()
                                  ? std::numeric_limits<double>::quiet_NaN()
                                  : v.at("rate_exponent").get<double>();
  out.verdict.T_end = v.at("T_end").get<double>();
  out.verdict.reason = v.at("reason").get<std::string>();
  out.verdict.final_supnorm = v.at("final_supnorm").get<double>();
  out.verdict.final_dt = v.at("final_dt").get<double>();
  out.verdict.boundary_contaminated = v.at("boundary_contaminated").get<bool>();

  for (std::size_t j = 0; j < out.trace.times.size(); ++j) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%06zu.csv", j);
    std::ifstream snap(dir / "snapshots" / name);
    if (!snap) throw ParseError("missing snapshot file " + std::string(name));
    std::string line;
    std::getline(snap, line);  // header
    std::vector<double> r, u;
    while (std::getline(snap, line)) {
      const auto comma = line.find(',');
      if (comma == std::string::npos) continue;
      r.push_back(std::strtod(line.substr(0, comma).c_str(), nullptr));
      u.push_back(std::strtod(line.substr(comma + 1).c_str(), nullptr));
    }
    if (j == 0) out.trace.r = r;
    out.trace.snapshots.push_back(std::move(u));
  }

  // The per-step histories feed plots, not checks; reload what trace.csv has.
  std::ifstream steps(dir / "trace.csv");
  if (steps) {
    std::string line;
    std::getline(steps, line);
    out.trace.supnorm_history.emplace_back(0.0, detail::supnorm(out.trace.snapshots.front()));
    while (std::getline(steps, line)) {
      double t, dt, sup, bmax;
      if (std::sscanf(line.c_str(), "%lg,%lg,%lg,%lg", &t, &dt, &sup, &bmax) == 4) {
        out.trace.dt_history.emplace_back(t, dt);
        out.trace.supnorm_history.emplace_back(t, sup);
        out.trace.boundary_history.push_back(bmax);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification driver shared by the CLI and the tests.

struct VerifyOutcome {
  json report;
  bool all_passed = true;
};

inline VerifyOutcome run_verification(const ExperimentConfig& cfg, const SolutionTrace& trace,
                                      const fs::path& out_dir) {
  const VerificationToggles& t = cfg.verification;
  VerifyOutcome out;
  out.report["checks"] = json::array();
  auto add = [&](const std::string& name, bool pass, json data) {
    data["name"] = name;
    data["pass"] = pass;
    out.report["checks"].push_back(std::move(data));
    if (!pass) out.all_passed = false;
  };

  const CutoffFamily family(t.kappa, trace.problem.N);
  const double horizon = trace.times.back();
  double t0 = trace.times.front();
  for (double tt : trace.times)
    if (tt >= t.t0_fraction * horizon) { t0 = tt; break; }

  fs::create_directories(out_dir);
  for (double frac : t.R_fractions) {
    const double R = frac * trace.problem.R_max;
    char label[48];
    std::snprintf(label, sizeof label, "R=%g", R);

    const FunctionalTrace fn = compute_functionals(trace, family, R, t0);
    {
      char name[64];
      std::snprintf(name, sizeof name, "functionals_R%g.csv", R);
      std::ofstream os(out_dir / name);
      os << "t,F,G,H,K\n";
      for (std::size_t j = 0; j < fn.times.size(); ++j)
        os << detail::fmt_g(fn.times[j]) << ',' << detail::fmt_g(fn.F[j]) << ','
           << detail::fmt_g(fn.G[j]) << ',' << detail::fmt_g(fn.H[j]) << ','
           << detail::fmt_g(fn.K[j]) << '\n';
    }

    if (t.weak_form) {
      const WeakFormResidual r = weak_form_residual(trace, family, R);
      add(std::string("weak_form ") + label, r.max_normalized < 1e-3,
          {{"max_normalized_residual", r.max_normalized}});
    }
    if (t.holder_step1) {
      const HolderCheck c = holder_check_step1(trace, family, R);
      double worst = 0.0;
      for (double s : c.slack) worst = std::min(worst, s);
      add(std::string("holder_step1 ") + label, c.passed,
          {{"worst_slack", worst}, {"tol", c.tol}, {"constant", c.constant}});
    }
    if (t.holder_step5) {
      const HolderCheck c = holder_check_step5(trace, family, R);
      double worst = 0.0;
      for (double s : c.slack) worst = std::min(worst, s);
      add(std::string("holder_step5 ") + label, c.passed,
          {{"worst_slack", worst}, {"tol", c.tol}, {"constant", c.constant}});
    }
    if (t.decomposition) {
      const SpacetimeCutoffs stc(trace.problem.p, t.T_fraction * horizon, R, trace.problem.N);
      const DecompositionReport rep = decomposition_report(trace, stc);
      add(std::string("decomposition ") + label, rep.inequality_holds,
          {{"I", rep.I},
           {"II", rep.II},
           {"III", rep.III},
           {"IV", rep.IV},
           {"A", rep.A},
           {"B", rep.B},
           {"identity_residual", rep.identity_residual},
           {"identity_tol", rep.identity_tol},
           {"inequality_slack", rep.inequality_slack},
           {"nonexistence_witness", rep.nonexistence_witness}});
    }
  }

  if (t.scaling) {
    const std::vector<double> grid = {1.0, 2.0, 4.0, 8.0};
    const ScalingFit fit =
        scaling_fit(trace.problem.p, trace.problem.alpha, trace.problem.N, grid, grid);
    const bool ok = std::abs(fit.slope_A - fit.expected_A) < 0.1 &&
                    std::abs(fit.slope_B - fit.expected_B) < 0.1;
    add("scaling", ok,
        {{"slope_A", fit.slope_A},
         {"expected_A", fit.expected_A},
         {"slope_B", fit.slope_B},
         {"expected_B", fit.expected_B}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plot-ready data emission.

/// Writes one plot-ready CSV per kind into out_dir. Idempotent.
inline fs::path emit_plot_data(const std::string& kind, const ExperimentConfig& cfg,
                               const fs::path& out_dir) {
  fs::create_directories(out_dir);
  if (kind == "regime-grid") {
    std::ifstream in(out_dir / "regime.csv");
    if (!in) throw Error("regime-grid needs " + (out_dir / "regime.csv").string() +
                         "; run the sweep first");
    const fs::path path = out_dir / "plot_regime_grid.csv";
    std::ofstream os(path);
    os << "p,alpha,predicted,observed,t_b\n";
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      if (cells.size() < 9) continue;
      os << cells[0] << ',' << cells[1] << ',' << cells[4] << ',' << cells[6] << ','
         << cells[7] << '\n';
    }
    return path;
  }
  if (kind == "supnorm-vs-time") {
    std::ifstream in(out_dir / "trace.csv");
    if (!in) throw Error("supnorm-vs-time needs " + (out_dir / "trace.csv").string() +
                         "; run solve first");
    const fs::path path = out_dir / "plot_supnorm_vs_time.csv";
    std::ofstream os(path);
    os << "t,supnorm\n";
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      double t, dt, sup, bmax;
      if (std::sscanf(line.c_str(), "%lg,%lg,%lg,%lg", &t, &dt, &sup, &bmax) == 4)
        os << detail::fmt_g(t) << ',' << detail::fmt_g(sup) << '\n';
    }
    return path;
  }
  if (kind == "functional-traces") {
    const StoredTrace stored = read_trace(out_dir);
    const CutoffFamily family(cfg.verification.kappa, stored.trace.problem.N);
    const double R = cfg.verification.R_fractions.front() * stored.trace.problem.R_max;
    const double horizon = stored.trace.times.back();
    double t0 = stored.trace.times.front();
    for (double tt : stored.trace.times)
      if (tt >= cfg.verification.t0_fraction * horizon) { t0 = tt; break; }
    const FunctionalTrace fn = compute_functionals(stored.trace, family, R, t0);
    const fs::path path = out_dir / "plot_functional_traces.csv";
    std::ofstream os(path);
    os << "t,F,G,H,K\n";
    for (std::size_t j = 0; j < fn.times.size(); ++j)
      os << detail::fmt_g(fn.times[j]) << ',' << detail::fmt_g(fn.F[j]) << ','
         << detail::fmt_g(fn.G[j]) << ',' << detail::fmt_g(fn.H[j]) << ','
         << detail::fmt_g(fn.K[j]) << '\n';
    return path;
  }
  if (kind == "scaling-loglog") {
    const std::vector<double> grid = {1.0, 2.0, 4.0, 8.0};
    const ScalingFit fit = scaling_fit(cfg.p, cfg.alpha, cfg.N, grid, grid);
    const fs::path path = out_dir / "plot_scaling_loglog.csv";
    std::ofstream os(path);
    os << "series,log_x,log_y\n";
    for (std::size_t i = 0; i < fit.log_R.size(); ++i)
      os << "A_vs_R," << detail::fmt_g(fit.log_R[i]) << ',' << detail::fmt_g(fit.log_A[i])
         << '\n';
    for (std::size_t i = 0; i < fit.log_T.size(); ++i)
      os << "B_vs_T," << detail::fmt_g(fit.log_T[i]) << ',' << detail::fmt_g(fit.log_B[i])
         << '\n';
    return path;
  }
  throw UnknownKind("unknown emit kind '" + kind +
                    "'; expected regime-grid, supnorm-vs-time, functional-traces, or "
                    "scaling-loglog");
}

}  // namespace blowup
