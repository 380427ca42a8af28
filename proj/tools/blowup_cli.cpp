// Command-line front end: experiment orchestration over the library.
//
// Subcommands: exponents, criterion, classify-forcing, solve, verify, sweep,
// emit. Exit codes: 0 success, 1 validation error, 2 runtime failure,
// 3 verification check failed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "blowup/config.hpp"
#include "blowup/experiment.hpp"
#include "blowup/exponents.hpp"
#include "blowup/forcing.hpp"
#include "blowup/solver.hpp"
#include "blowup/verification.hpp"

namespace {

using blowup::json;

json ext_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

json to_json(const blowup::CesaroEstimate& est) {
  json j;
  j["class"] = blowup::to_string(est.ell_class);
  if (est.ell_class == blowup::EllClass::Finite) j["value"] = est.value;
  j["largest_t"] = est.largest_t;
  json samples = json::array();
  for (const auto& s : est.samples) samples.push_back({{"t", s.t}, {"mean", ext_json(s.mean)}});
  j["samples"] = samples;
  return j;
}

json to_json(const blowup::QZeroEstimate& est) {
  json j;
  j["class"] = blowup::to_string(est.j_class);
  j["q0"] = ext_json(est.q0);
  j["window_floor_hit"] = est.window_floor_hit;
  json probes = json::array();
  for (const auto& p : est.diagnostics)
    probes.push_back({{"q", p.q}, {"tail_slope", ext_json(p.tail_slope)}, {"in_j", p.in_j}});
  j["diagnostics"] = probes;
  return j;
}

json to_json(const blowup::CriterionVerdict& v) {
  json j;
  j["blowup_predicted"] = v.blowup_predicted;
  j["theorem"] = v.theorem ? json(blowup::to_string(*v.theorem)) : json(nullptr);
  j["reason"] = v.reason;
  json checks = json::array();
  for (const auto& c : v.checklist)
    checks.push_back({{"theorem", c.theorem}, {"hypothesis", c.hypothesis}, {"holds", c.holds}});
  j["checklist"] = checks;
  return j;
}

json to_json(const blowup::BlowupVerdict& v) {
  return {
      {"class", blowup::to_string(v.cls)},
      {"t_b", ext_json(v.t_b)},
      {"rate_exponent", ext_json(v.rate_exponent)},
      {"T_end", v.T_end},
      {"reason", v.reason},
      {"final_supnorm", ext_json(v.final_supnorm)},
      {"final_dt", v.final_dt},
      {"boundary_contaminated", v.boundary_contaminated},
  };
}

json to_json(const blowup::ExponentReport& r) {
  json j;
  j["N"] = r.N;
  j["alpha"] = r.alpha;
  j["p_fujita"] = r.p_fujita;
  j["p_lower"] = r.p_lower;
  j["p_upper"] = ext_json(r.p_upper);
  if (r.sigma) {
    j["sigma"] = *r.sigma;
    j["sigma_exponent"] = ext_json(*r.sigma_exponent);
  }
  if (r.m) {
    j["m"] = *r.m;
    j["m_alpha_exponent"] = ext_json(*r.m_alpha_exponent);
  }
  return j;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for blow-up of forced semilinear heat equations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::optional<int> workers_override;
  std::optional<long> seed_override;
  app.add_option("--config", config_path, "experiment config file (.ini text or .json)")
      ->required();
  app.add_option("--out", out_override, "output directory (overrides [output] dir)");
  app.add_option("--workers", workers_override, "worker threads for sweeps");
  app.add_option("--seed", seed_override, "seed for randomized initial-profile perturbations");

  auto* cmd_exponents = app.add_subcommand("exponents", "print the closed-form exponent report");
  auto* cmd_criterion =
      app.add_subcommand("criterion", "evaluate the blow-up criterion with its checklist");
  auto* cmd_classify =
      app.add_subcommand("classify-forcing", "classify ell and estimate q0 for the forcing");
  auto* cmd_solve = app.add_subcommand("solve", "run the radial solver and store the trace");
  auto* cmd_verify =
      app.add_subcommand("verify", "run the inequality checks against a stored trace");
  auto* cmd_sweep = app.add_subcommand("sweep", "run the parameter sweep and write the regime map");
  std::string emit_kind;
  auto* cmd_emit = app.add_subcommand("emit", "write plot-ready CSV data");
  cmd_emit->add_option("--kind", emit_kind,
                       "regime-grid | supnorm-vs-time | functional-traces | scaling-loglog")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    blowup::ExperimentConfig cfg = blowup::parse_config(config_path);
    if (!out_override.empty()) cfg.output.dir = out_override;
    if (workers_override) cfg.output.workers = *workers_override;
    if (seed_override) cfg.output.seed = static_cast<unsigned long>(*seed_override);
    const std::filesystem::path out_dir = cfg.output.dir;

    if (cmd_exponents->parsed()) {
      print_json(to_json(
          blowup::exponent_report(cfg.N, cfg.alpha, cfg.exponents_sigma, cfg.exponents_m)));
      return 0;
    }

    if (cmd_classify->parsed()) {
      const blowup::ForcingProfile forcing = cfg.forcing.build(cfg.base_dir);
      json j;
      j["forcing"] = forcing.describe();
      j["cesaro"] = to_json(blowup::classify_ell(forcing, cfg.classify.t_max));
      const auto grid = blowup::default_t_grid(cfg.classify.T_base);
      j["q_zero"] =
          to_json(blowup::q0_estimate(forcing, grid, {cfg.classify.q_min, cfg.classify.q_max}));
      print_json(j);
      return 0;
    }

    if (cmd_criterion->parsed()) {
      const blowup::ProblemSpec spec = cfg.build_problem();
      print_json(to_json(blowup::detail::predict(cfg, spec)));
      return 0;
    }

    if (cmd_solve->parsed()) {
      const blowup::ProblemSpec spec = cfg.build_problem();
      auto [trace, verdict] = blowup::solve(spec, cfg.solver);
      blowup::write_trace(cfg, trace, verdict, out_dir);
      print_json(to_json(verdict));
      return 0;
    }

    if (cmd_verify->parsed()) {
      const blowup::StoredTrace stored = blowup::read_trace(out_dir);
      blowup::VerifyOutcome outcome = blowup::run_verification(cfg, stored.trace, out_dir);
      std::ofstream os(out_dir / "verify_report.json");
      os << outcome.report.dump(2) << '\n';
      print_json(outcome.report);
      return outcome.all_passed ? 0 : 3;
    }

    if (cmd_sweep->parsed()) {
      const blowup::RegimeMap map = blowup::run_sweep(cfg);
      std::filesystem::create_directories(out_dir);
      blowup::write_regime_csv(map, out_dir / "regime.csv");
      const json summary = blowup::sweep_summary_json(cfg, map);
      std::ofstream os(out_dir / "sweep_summary.json");
      os << summary.dump(2) << '\n';
      print_json(summary);
      return 0;
    }

    if (cmd_emit->parsed()) {
      const auto path = blowup::emit_plot_data(emit_kind, cfg, out_dir);
      std::cout << path.string() << "\n";
      return 0;
    }
  } catch (const blowup::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const blowup::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const blowup::UnknownKind& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const blowup::InvalidParameters& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const blowup::Error& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
