#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blowup/errors.hpp"
#include "blowup/solver.hpp"

namespace blowup {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double as_double(const json& v, const std::string& ctx) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = trim(v.get<std::string>());
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw ParseError(ctx + ": expected a number, got '" + s + "'");
    return x;
  }
  throw ParseError(ctx + ": expected a number");
}

inline int as_int(const json& v, const std::string& ctx) {
  const double x = as_double(v, ctx);
  if (x != std::floor(x)) throw ParseError(ctx + ": expected an integer");
  return static_cast<int>(x);
}

inline bool as_bool(const json& v, const std::string& ctx) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const std::string s = trim(v.get<std::string>());
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  }
  throw ParseError(ctx + ": expected a boolean");
}

inline std::string as_string(const json& v, const std::string& ctx) {
  if (v.is_string()) return trim(v.get<std::string>());
  throw ParseError(ctx + ": expected a string");
}

inline std::vector<double> as_list(const json& v, const std::string& ctx) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(as_double(e, ctx));
    return out;
  }
  if (v.is_number()) return {v.get<double>()};
  if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      out.push_back(as_double(json(item), ctx));
    }
    return out;
  }
  throw ParseError(ctx + ": expected a comma-separated list of numbers");
}

// section -> { key : allowed }
inline const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"problem", {"N", "alpha", "p", "R_max", "T_end"}},
      {"forcing",
       {"family", "c", "a_inf", "m", "q", "shape", "period", "sign", "rate", "amplitude",
        "csv"}},
      {"w", {"family", "amplitude", "width", "radius", "a1", "w1", "a2", "w2", "csv"}},
      {"u0",
       {"family", "amplitude", "width", "radius", "a1", "w1", "a2", "w2", "csv",
        "perturb_amplitude", "perturb_bumps"}},
      {"solver", {"M", "cfl_safety", "dt_min", "U_max", "snapshot_stride"}},
      {"sweep", {"p", "alpha", "forcing_amplitude"}},
      {"verification",
       {"weak_form", "holder_step1", "holder_step5", "decomposition", "scaling", "kappa",
        "R_fractions", "t0_fraction", "T_fraction"}},
      {"classify", {"t_max", "T_base", "q_min", "q_max"}},
      {"exponents", {"sigma", "m"}},
      {"output", {"dir", "seed", "workers"}},
  };
  return table;
}

inline void check_known(const json& tree) {
  const auto& table = allowed_keys();
  for (const auto& [section, body] : tree.items()) {
    auto it = table.find(section);
    if (it == table.end()) throw ParseError("unknown config section [" + section + "]");
    if (!body.is_object()) throw ParseError("section [" + section + "] must hold key = value pairs");
    for (const auto& [key, value] : body.items()) {
      (void)value;
      if (!it->second.count(key))
        throw ParseError("unknown key '" + key + "' in section [" + section + "]");
    }
  }
}

// Flat INI: [section] headers, key = value lines, # or ; full-line comments.
inline json parse_ini_text(const std::string& text) {
  json tree = json::object();
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ParseError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw ParseError("line " + std::to_string(lineno) + ": empty section name");
      if (!tree.contains(section)) tree[section] = json::object();
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw ParseError("line " + std::to_string(lineno) + ": key outside any section");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty key");
    tree[section][key] = trim(t.substr(eq + 1));
  }
  return tree;
}

inline std::vector<std::pair<double, double>> load_two_column_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open csv file " + path.string());
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::string cell = t;
    for (auto& c : cell)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ss(cell);
    double a, b;
    if (!(ss >> a >> b)) {
      if (rows.empty()) continue;  // tolerate one header line
      throw ParseError("bad csv row in " + path.string() + ": " + line);
    }
    rows.emplace_back(a, b);
  }
  if (rows.size() < 2) throw ParseError("csv file " + path.string() + " holds fewer than 2 rows");
  return rows;
}

}  // namespace detail

/// Serializable description of a forcing profile, as written in config files.
struct ForcingSpec {
  std::string family = "constant";
  double c = 1.0;
  double a_inf = 1.0;
  double m = 0.0;
  double q = 0.0;
  std::string shape = "cos2";
  double period = std::numbers::pi;
  int sign = 1;
  double rate = 1.0;
  double amplitude = 1.0;
  std::string csv;

  static ForcingProfile::Func shape_function(const std::string& shape, double period) {
    const double w = std::numbers::pi / period;
    if (shape == "cos2") return [w](double t) { double c = std::cos(w * t); return c * c; };
    if (shape == "sin2") return [w](double t) { double s = std::sin(w * t); return s * s; };
    if (shape == "abs_sin") return [w](double t) { return std::abs(std::sin(w * t)); };
    throw ValidationError("unknown periodic shape '" + shape + "'");
  }

  ForcingProfile build(const std::filesystem::path& base_dir = {}) const {
    if (family == "constant") return ForcingProfile::constant(c);
    if (family == "power") return ForcingProfile::power(a_inf, m);
    if (family == "power_log") return ForcingProfile::power_log(a_inf, m, q);
    if (family == "periodic")
      return ForcingProfile::periodic(shape_function(shape, period), period);
    if (family == "oscillating_power")
      return ForcingProfile::oscillating_power(m, shape_function(shape, period), period);
    if (family == "exp_growth") return ForcingProfile::exp_growth(sign, rate, amplitude);
    if (family == "sampled")
      return ForcingProfile::sampled(detail::load_two_column_csv(base_dir / csv));
    throw ValidationError("unknown forcing family '" + family + "'");
  }

  void emit(std::ostream& os) const {
    os << "[forcing]\n" << "family = " << family << "\n";
    if (family == "constant") os << "c = " << detail::fmt_g(c) << "\n";
    if (family == "power" || family == "power_log")
      os << "a_inf = " << detail::fmt_g(a_inf) << "\nm = " << detail::fmt_g(m) << "\n";
    if (family == "power_log") os << "q = " << detail::fmt_g(q) << "\n";
    if (family == "periodic" || family == "oscillating_power")
      os << "shape = " << shape << "\nperiod = " << detail::fmt_g(period) << "\n";
    if (family == "oscillating_power") os << "m = " << detail::fmt_g(m) << "\n";
    if (family == "exp_growth")
      os << "sign = " << sign << "\nrate = " << detail::fmt_g(rate)
         << "\namplitude = " << detail::fmt_g(amplitude) << "\n";
    if (family == "sampled") os << "csv = " << csv << "\n";
  }
};

/// Serializable description of a radial spatial profile.
struct SpatialSpec {
  std::string family = "zero";
  double amplitude = 1.0;
  double width = 1.0;
  double radius = 1.0;
  double a1 = 1.0, w1 = 1.0, a2 = 0.0, w2 = 1.0;
  std::string csv;
  double perturb_amplitude = 0.0;  // u0 only: seeded smooth bumps
  int perturb_bumps = 4;

  SpatialProfile build_base(const std::filesystem::path& base_dir = {}) const {
    if (family == "zero") return SpatialProfile::zero();
    if (family == "gaussian") return SpatialProfile::gaussian(amplitude, width);
    if (family == "compact_bump") return SpatialProfile::compact_bump(amplitude, radius);
    if (family == "signed_gaussian_pair")
      return SpatialProfile::signed_gaussian_pair(a1, w1, a2, w2);
    if (family == "sampled")
      return SpatialProfile::sampled(detail::load_two_column_csv(base_dir / csv));
    throw ValidationError("unknown spatial family '" + family + "'");
  }

  SpatialProfile build(const std::filesystem::path& base_dir, double R_max,
                       unsigned long seed) const {
    SpatialProfile base = build_base(base_dir);
    if (perturb_amplitude == 0.0) return base;
    if (perturb_bumps < 1) throw ValidationError("perturb_bumps must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> center(0.0, 0.5 * R_max);
    std::uniform_real_distribution<double> width_d(0.05 * R_max, 0.2 * R_max);
    std::uniform_real_distribution<double> amp(0.5, 1.0);
    struct Bump { double c, w, a; };
    std::vector<Bump> bumps(perturb_bumps);
    double support = base.support_radius();
    for (auto& b : bumps) {
      b.c = center(rng);
      b.w = width_d(rng);
      b.a = perturb_amplitude * amp(rng);
      support = std::max(support, b.c + 13.0 * b.w);
    }
    auto f = [base, bumps](double r) {
      double v = base(r);
      for (const auto& b : bumps) {
        const double z = (r - b.c) / b.w;
        v += b.a * std::exp(-z * z);
      }
      return v;
    };
    return SpatialProfile::custom(f, support, base.describe() + "+perturbation");
  }

  void emit(std::ostream& os, const char* section, bool with_perturb) const {
    os << "[" << section << "]\n" << "family = " << family << "\n";
    if (family == "gaussian")
      os << "amplitude = " << detail::fmt_g(amplitude) << "\nwidth = " << detail::fmt_g(width)
         << "\n";
    if (family == "compact_bump")
      os << "amplitude = " << detail::fmt_g(amplitude)
         << "\nradius = " << detail::fmt_g(radius) << "\n";
    if (family == "signed_gaussian_pair")
      os << "a1 = " << detail::fmt_g(a1) << "\nw1 = " << detail::fmt_g(w1)
         << "\na2 = " << detail::fmt_g(a2) << "\nw2 = " << detail::fmt_g(w2) << "\n";
    if (family == "sampled") os << "csv = " << csv << "\n";
    if (with_perturb && perturb_amplitude != 0.0)
      os << "perturb_amplitude = " << detail::fmt_g(perturb_amplitude)
         << "\nperturb_bumps = " << perturb_bumps << "\n";
  }
};

struct SweepAxes {
  std::vector<double> p, alpha, forcing_amplitude;
  bool enabled = false;
};

struct VerificationToggles {
  bool weak_form = true;
  bool holder_step1 = true;
  bool holder_step5 = true;
  bool decomposition = true;
  bool scaling = false;
  int kappa = 8;
  std::vector<double> R_fractions = {0.125, 0.25};
  double t0_fraction = 0.05;
  double T_fraction = 0.5;
};

struct ClassifyConfig {
  double t_max = 1e4;
  double T_base = 1.0;
  double q_min = -6.0;
  double q_max = 4.0;
};

struct OutputConfig {
  std::string dir = "out";
  unsigned long seed = 0;
  int workers = 0;  // 0 selects hardware concurrency
};

/// A fully validated experiment description with defaults applied.
struct ExperimentConfig {
  // raw scalar fields
  int N = 1;
  double alpha = 0.0;
  double p = 2.0;
  double R_max = 20.0;
  double T_end = 10.0;

  ForcingSpec forcing;
  SpatialSpec w;
  SpatialSpec u0;
  SolverConfig solver;
  SweepAxes sweep;
  VerificationToggles verification;
  ClassifyConfig classify;
  std::optional<double> exponents_sigma;
  std::optional<double> exponents_m;
  OutputConfig output;

  std::filesystem::path base_dir;  // directory of the config file

  /// Builds the runnable problem (profiles constructed, validated).
  ProblemSpec build_problem() const {
    ProblemSpec spec;
    spec.N = N;
    spec.alpha = alpha;
    spec.p = p;
    spec.R_max = R_max;
    spec.T_end = T_end;
    spec.forcing = forcing.build(base_dir);
    spec.w = w.build(base_dir, R_max, output.seed + 1);
    spec.u0 = u0.build(base_dir, R_max, output.seed);
    spec.validate();
    return spec;
  }

  /// Canonical flat-text form; parsing it back reproduces every field.
  std::string to_ini() const {
    std::ostringstream os;
    os << "[problem]\n";
    os << "N = " << N << "\n";
    os << "alpha = " << detail::fmt_g(alpha) << "\n";
    os << "p = " << detail::fmt_g(p) << "\n";
    os << "R_max = " << detail::fmt_g(R_max) << "\n";
    os << "T_end = " << detail::fmt_g(T_end) << "\n\n";
    forcing.emit(os);
    os << "\n";
    w.emit(os, "w", false);
    os << "\n";
    u0.emit(os, "u0", true);
    os << "\n[solver]\n";
    os << "M = " << solver.M << "\n";
    os << "cfl_safety = " << detail::fmt_g(solver.cfl_safety) << "\n";
    os << "dt_min = " << detail::fmt_g(solver.dt_min) << "\n";
    os << "U_max = " << detail::fmt_g(solver.U_max) << "\n";
    os << "snapshot_stride = " << solver.snapshot_stride << "\n";
    if (sweep.enabled) {
      os << "\n[sweep]\n";
      auto list = [&](const char* key, const std::vector<double>& v) {
        if (v.empty()) return;
        os << key << " = ";
        for (std::size_t i = 0; i < v.size(); ++i)
          os << (i ? ", " : "") << detail::fmt_g(v[i]);
        os << "\n";
      };
      list("p", sweep.p);
      list("alpha", sweep.alpha);
      list("forcing_amplitude", sweep.forcing_amplitude);
    }
    os << "\n[verification]\n";
    os << "weak_form = " << (verification.weak_form ? "true" : "false") << "\n";
    os << "holder_step1 = " << (verification.holder_step1 ? "true" : "false") << "\n";
    os << "holder_step5 = " << (verification.holder_step5 ? "true" : "false") << "\n";
    os << "decomposition = " << (verification.decomposition ? "true" : "false") << "\n";
    os << "scaling = " << (verification.scaling ? "true" : "false") << "\n";
    os << "kappa = " << verification.kappa << "\n";
    os << "R_fractions = ";
    for (std::size_t i = 0; i < verification.R_fractions.size(); ++i)
      os << (i ? ", " : "") << detail::fmt_g(verification.R_fractions[i]);
    os << "\n";
    os << "t0_fraction = " << detail::fmt_g(verification.t0_fraction) << "\n";
    os << "T_fraction = " << detail::fmt_g(verification.T_fraction) << "\n";
    os << "\n[classify]\n";
    os << "t_max = " << detail::fmt_g(classify.t_max) << "\n";
    os << "T_base = " << detail::fmt_g(classify.T_base) << "\n";
    os << "q_min = " << detail::fmt_g(classify.q_min) << "\n";
    os << "q_max = " << detail::fmt_g(classify.q_max) << "\n";
    if (exponents_sigma || exponents_m) {
      os << "\n[exponents]\n";
      if (exponents_sigma) os << "sigma = " << detail::fmt_g(*exponents_sigma) << "\n";
      if (exponents_m) os << "m = " << detail::fmt_g(*exponents_m) << "\n";
    }
    os << "\n[output]\n";
    os << "dir = " << output.dir << "\n";
    os << "seed = " << output.seed << "\n";
    os << "workers = " << output.workers << "\n";
    return os.str();
  }
};

namespace detail {

inline ExperimentConfig config_from_tree(const json& tree, std::filesystem::path base_dir) {
  check_known(tree);
  ExperimentConfig cfg;
  cfg.base_dir = std::move(base_dir);

  auto section = [&](const char* name) -> const json* {
    return tree.contains(name) ? &tree[name] : nullptr;
  };
  auto value = [&](const json* sec, const char* key) -> const json* {
    return sec && sec->contains(key) ? &(*sec)[key] : nullptr;
  };
  auto ctx = [](const char* s, const char* k) { return std::string(s) + "." + k; };

  if (const json* s = section("problem")) {
    if (const json* v = value(s, "N")) cfg.N = as_int(*v, ctx("problem", "N"));
    if (const json* v = value(s, "alpha")) cfg.alpha = as_double(*v, ctx("problem", "alpha"));
    if (const json* v = value(s, "p")) cfg.p = as_double(*v, ctx("problem", "p"));
    if (const json* v = value(s, "R_max")) cfg.R_max = as_double(*v, ctx("problem", "R_max"));
    if (const json* v = value(s, "T_end")) cfg.T_end = as_double(*v, ctx("problem", "T_end"));
  }

  if (const json* s = section("forcing")) {
    ForcingSpec& f = cfg.forcing;
    if (const json* v = value(s, "family")) f.family = as_string(*v, ctx("forcing", "family"));
    if (const json* v = value(s, "c")) f.c = as_double(*v, ctx("forcing", "c"));
    if (const json* v = value(s, "a_inf")) f.a_inf = as_double(*v, ctx("forcing", "a_inf"));
    if (const json* v = value(s, "m")) f.m = as_double(*v, ctx("forcing", "m"));
    if (const json* v = value(s, "q")) f.q = as_double(*v, ctx("forcing", "q"));
    if (const json* v = value(s, "shape")) f.shape = as_string(*v, ctx("forcing", "shape"));
    if (const json* v = value(s, "period")) f.period = as_double(*v, ctx("forcing", "period"));
    if (const json* v = value(s, "sign")) f.sign = as_int(*v, ctx("forcing", "sign"));
    if (const json* v = value(s, "rate")) f.rate = as_double(*v, ctx("forcing", "rate"));
    if (const json* v = value(s, "amplitude"))
      f.amplitude = as_double(*v, ctx("forcing", "amplitude"));
    if (const json* v = value(s, "csv")) f.csv = as_string(*v, ctx("forcing", "csv"));
  }

  auto read_spatial = [&](const char* name, SpatialSpec& sp, bool with_perturb) {
    const json* s = section(name);
    if (!s) return;
    if (const json* v = value(s, "family")) sp.family = as_string(*v, ctx(name, "family"));
    if (const json* v = value(s, "amplitude")) sp.amplitude = as_double(*v, ctx(name, "amplitude"));
    if (const json* v = value(s, "width")) sp.width = as_double(*v, ctx(name, "width"));
    if (const json* v = value(s, "radius")) sp.radius = as_double(*v, ctx(name, "radius"));
    if (const json* v = value(s, "a1")) sp.a1 = as_double(*v, ctx(name, "a1"));
    if (const json* v = value(s, "w1")) sp.w1 = as_double(*v, ctx(name, "w1"));
    if (const json* v = value(s, "a2")) sp.a2 = as_double(*v, ctx(name, "a2"));
    if (const json* v = value(s, "w2")) sp.w2 = as_double(*v, ctx(name, "w2"));
    if (const json* v = value(s, "csv")) sp.csv = as_string(*v, ctx(name, "csv"));
    if (with_perturb) {
      if (const json* v = value(s, "perturb_amplitude"))
        sp.perturb_amplitude = as_double(*v, ctx(name, "perturb_amplitude"));
      if (const json* v = value(s, "perturb_bumps"))
        sp.perturb_bumps = as_int(*v, ctx(name, "perturb_bumps"));
    }
  };
  read_spatial("w", cfg.w, false);
  read_spatial("u0", cfg.u0, true);

  if (const json* s = section("solver")) {
    if (const json* v = value(s, "M")) cfg.solver.M = as_int(*v, ctx("solver", "M"));
    if (const json* v = value(s, "cfl_safety"))
      cfg.solver.cfl_safety = as_double(*v, ctx("solver", "cfl_safety"));
    if (const json* v = value(s, "dt_min"))
      cfg.solver.dt_min = as_double(*v, ctx("solver", "dt_min"));
    if (const json* v = value(s, "U_max")) cfg.solver.U_max = as_double(*v, ctx("solver", "U_max"));
    if (const json* v = value(s, "snapshot_stride"))
      cfg.solver.snapshot_stride = as_int(*v, ctx("solver", "snapshot_stride"));
  }

  if (const json* s = section("sweep")) {
    cfg.sweep.enabled = true;
    if (const json* v = value(s, "p")) cfg.sweep.p = as_list(*v, ctx("sweep", "p"));
    if (const json* v = value(s, "alpha")) cfg.sweep.alpha = as_list(*v, ctx("sweep", "alpha"));
    if (const json* v = value(s, "forcing_amplitude"))
      cfg.sweep.forcing_amplitude = as_list(*v, ctx("sweep", "forcing_amplitude"));
    if (cfg.sweep.p.empty() && cfg.sweep.alpha.empty() && cfg.sweep.forcing_amplitude.empty())
      throw ValidationError("sweep section present but every axis is empty");
  }

  if (const json* s = section("verification")) {
    VerificationToggles& t = cfg.verification;
    if (const json* v = value(s, "weak_form")) t.weak_form = as_bool(*v, "verification.weak_form");
    if (const json* v = value(s, "holder_step1"))
      t.holder_step1 = as_bool(*v, "verification.holder_step1");
    if (const json* v = value(s, "holder_step5"))
      t.holder_step5 = as_bool(*v, "verification.holder_step5");
    if (const json* v = value(s, "decomposition"))
      t.decomposition = as_bool(*v, "verification.decomposition");
    if (const json* v = value(s, "scaling")) t.scaling = as_bool(*v, "verification.scaling");
    if (const json* v = value(s, "kappa")) t.kappa = as_int(*v, "verification.kappa");
    if (const json* v = value(s, "R_fractions"))
      t.R_fractions = as_list(*v, "verification.R_fractions");
    if (const json* v = value(s, "t0_fraction"))
      t.t0_fraction = as_double(*v, "verification.t0_fraction");
    if (const json* v = value(s, "T_fraction"))
      t.T_fraction = as_double(*v, "verification.T_fraction");
  }

  if (const json* s = section("classify")) {
    if (const json* v = value(s, "t_max")) cfg.classify.t_max = as_double(*v, "classify.t_max");
    if (const json* v = value(s, "T_base")) cfg.classify.T_base = as_double(*v, "classify.T_base");
    if (const json* v = value(s, "q_min")) cfg.classify.q_min = as_double(*v, "classify.q_min");
    if (const json* v = value(s, "q_max")) cfg.classify.q_max = as_double(*v, "classify.q_max");
  }

  if (const json* s = section("exponents")) {
    if (const json* v = value(s, "sigma")) cfg.exponents_sigma = as_double(*v, "exponents.sigma");
    if (const json* v = value(s, "m")) cfg.exponents_m = as_double(*v, "exponents.m");
  }

  if (const json* s = section("output")) {
    if (const json* v = value(s, "dir")) cfg.output.dir = as_string(*v, "output.dir");
    if (const json* v = value(s, "seed"))
      cfg.output.seed = static_cast<unsigned long>(as_int(*v, "output.seed"));
    if (const json* v = value(s, "workers")) cfg.output.workers = as_int(*v, "output.workers");
  }

  // Validation beyond parse: the numeric invariants.
  if (cfg.N < 1) throw ValidationError("problem: N must be >= 1");
  if (!(cfg.p > 1.0)) throw ValidationError("problem: p must exceed 1");
  if (!(cfg.alpha > -2.0)) throw ValidationError("problem: alpha must exceed -2");
  if (!(cfg.R_max > 0.0)) throw ValidationError("problem: R_max must be positive");
  if (!(cfg.T_end > 0.0)) throw ValidationError("problem: T_end must be positive");
  cfg.solver.validate();
  if (cfg.verification.kappa < 2) throw ValidationError("verification: kappa must be >= 2");
  for (double f : cfg.verification.R_fractions)
    if (!(f > 0.0) || f > 0.5)
      throw ValidationError("verification: R_fractions must lie in (0, 0.5]");
  if (!(cfg.verification.t0_fraction >= 0.0 && cfg.verification.t0_fraction < 1.0))
    throw ValidationError("verification: t0_fraction must lie in [0, 1)");
  if (!(cfg.verification.T_fraction > 0.0 && cfg.verification.T_fraction <= 1.0))
    throw ValidationError("verification: T_fraction must lie in (0, 1]");
  if (!(cfg.classify.t_max > 0.0) || !(cfg.classify.T_base > 0.0))
    throw ValidationError("classify: t_max and T_base must be positive");
  if (!(cfg.classify.q_min < cfg.classify.q_max))
    throw ValidationError("classify: q_min must be below q_max");
  if (cfg.output.workers < 0) throw ValidationError("output: workers must be >= 0");

  // Eagerly construct the profiles so family-level validation runs here.
  cfg.forcing.build(cfg.base_dir);
  cfg.w.build_base(cfg.base_dir);
  cfg.u0.build_base(cfg.base_dir);
  return cfg;
}

}  // namespace detail

/// Parses a config file (flat INI text, or JSON when the extension is .json),
/// applies defaults, and validates every invariant. Unknown keys are errors.
inline ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  json tree;
  if (path.extension() == ".json") {
    try {
      tree = json::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("json parse failure: ") + e.what());
    }
  } else {
    tree = detail::parse_ini_text(ss.str());
  }
  return detail::config_from_tree(tree, path.parent_path());
}

/// Parses config text in the flat INI form (tests and tooling).
inline ExperimentConfig parse_config_text(const std::string& text,
                                          const std::filesystem::path& base_dir = {}) {
  return detail::config_from_tree(detail::parse_ini_text(text), base_dir);
}

}  // namespace blowup
