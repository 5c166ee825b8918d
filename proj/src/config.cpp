#include "mqsim/config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mqsim {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_rows(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    const size_t semi = s.find(';', start);
    if (semi == std::string::npos) {
      out.push_back(trim(s.substr(start)));
      break;
    }
    out.push_back(trim(s.substr(start, semi - start)));
    start = semi + 1;
  }
  return out;
}

struct RawEntry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct Parser {
  std::map<std::string, RawEntry> entries;  // "section.key" -> value
  std::vector<std::string> errors;

  void fail(int line, const std::string& msg) {
    errors.push_back("line " + std::to_string(line) + ": " + msg);
  }
  void fail(const std::string& msg) { errors.push_back(msg); }

  bool parse_double(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
  }

  bool parse_int(const std::string& text, long long& out) {
    const std::string t = trim(text);
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc() && p == t.data() + t.size();
  }

  RawEntry* find(const std::string& key) {
    const auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  // typed getters; on parse failure record the error and leave the default
  void get(const std::string& key, double& out, const char* unit) {
    if (RawEntry* e = find(key)) {
      if (!parse_double(e->value, out))
        fail(e->line, key + " expects a finite number (" + unit + "), got '" + e->value + "'");
    }
  }
  void get(const std::string& key, int& out) {
    if (RawEntry* e = find(key)) {
      long long v = 0;
      if (!parse_int(e->value, v))
        fail(e->line, key + " expects an integer, got '" + e->value + "'");
      else
        out = static_cast<int>(v);
    }
  }
  void get(const std::string& key, std::uint64_t& out) {
    if (RawEntry* e = find(key)) {
      long long v = 0;
      if (!parse_int(e->value, v) || v < 0)
        fail(e->line, key + " expects a non-negative integer, got '" + e->value + "'");
      else
        out = static_cast<std::uint64_t>(v);
    }
  }
  void get(const std::string& key, bool& out) {
    if (RawEntry* e = find(key)) {
      const std::string t = trim(e->value);
      if (t == "true")
        out = true;
      else if (t == "false")
        out = false;
      else
        fail(e->line, key + " expects true or false, got '" + t + "'");
    }
  }
  void get(const std::string& key, std::string& out) {
    if (RawEntry* e = find(key)) out = trim(e->value);
  }
  void get_list(const std::string& key, std::vector<double>& out, const char* unit) {
    if (RawEntry* e = find(key)) {
      std::vector<double> vals;
      for (const std::string& tok : split_ws(e->value)) {
        double v = 0;
        if (!parse_double(tok, v)) {
          fail(e->line, key + " expects numbers (" + unit + "), got '" + tok + "'");
          return;
        }
        vals.push_back(v);
      }
      out = std::move(vals);
    }
  }
  void get_list(const std::string& key, std::vector<int>& out) {
    if (RawEntry* e = find(key)) {
      std::vector<int> vals;
      for (const std::string& tok : split_ws(e->value)) {
        long long v = 0;
        if (!parse_int(tok, v)) {
          fail(e->line, key + " expects integers, got '" + tok + "'");
          return;
        }
        vals.push_back(static_cast<int>(v));
      }
      out = std::move(vals);
    }
  }
  void get_vec3(const std::string& key, Eigen::Vector3d& out) {
    if (RawEntry* e = find(key)) {
      const auto toks = split_ws(e->value);
      double v[3];
      if (toks.size() != 3 || !parse_double(toks[0], v[0]) || !parse_double(toks[1], v[1]) ||
          !parse_double(toks[2], v[2])) {
        fail(e->line, key + " expects three numbers");
        return;
      }
      out = Eigen::Vector3d(v[0], v[1], v[2]);
    }
  }
};

const std::set<std::string> kKnownKeys = {
    "system.preset",        "system.coupling_rad_s", "system.positions_m",
    "system.field_axis",    "system.gamma_rad_s_t",  "system.couplings_rad_s",
    "system.seed",          "experiment.kind",       "experiment.mode",
    "experiment.loops",     "experiment.tau_s",      "experiment.delta_s",
    "experiment.pulse_s",   "experiment.prep_loops", "experiment.decay_times_s",
    "experiment.coupling_scales", "experiment.ideal_pulses",
    "sampling.k_phi",       "sampling.k_beta",       "sampling.n_max",
    "output.prefix",
};

bool parse_kind(const std::string& tok, ExperimentKind& out) {
  if (tok == "oned-z") out = ExperimentKind::OneDZ;
  else if (tok == "oned-x") out = ExperimentKind::OneDX;
  else if (tok == "twod") out = ExperimentKind::TwoD;
  else if (tok == "decay") out = ExperimentKind::Decay;
  else if (tok == "spin-count-sweep") out = ExperimentKind::SpinCountSweep;
  else if (tok == "aht-check") out = ExperimentKind::AhtCheck;
  else return false;
  return true;
}

bool has_kind(const std::vector<ExperimentKind>& kinds, ExperimentKind k) {
  return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::OneDZ: return "oned-z";
    case ExperimentKind::OneDX: return "oned-x";
    case ExperimentKind::TwoD: return "twod";
    case ExperimentKind::Decay: return "decay";
    case ExperimentKind::SpinCountSweep: return "spin-count-sweep";
    case ExperimentKind::AhtCheck: return "aht-check";
  }
  return "?";
}

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error([&errors] {
        std::string msg = "invalid configuration:";
        for (const auto& e : errors) msg += "\n  - " + e;
        return msg;
      }()),
      errors_(std::move(errors)) {}

SpinSystem SystemSpec::build() const {
  if (!preset.empty()) {
    const auto dash = preset.rfind('-');
    const std::string family = preset.substr(0, dash == std::string::npos ? preset.size() : dash);
    int n = 0;
    if (dash != std::string::npos) {
      try {
        n = std::stoi(preset.substr(dash + 1));
      } catch (...) {
        n = 0;
      }
    }
    if (n < 2) throw std::invalid_argument("preset '" + preset + "' is not chain-N or random-N with N >= 2");
    if (family == "chain") return chain_system(n, coupling);
    if (family == "random") return random_system(n, coupling, seed);
    throw std::invalid_argument("unknown preset family '" + family + "'");
  }
  if (!positions.empty()) return couplings_from_geometry(positions, field_axis, gamma);
  if (couplings.size() > 0) return system_from_couplings(couplings);
  throw std::invalid_argument("system specification is empty");
}

ExperimentConfig parse_config(const std::string& text) {
  Parser p;

  // raw pass: sections and key = value lines, '#' starts a comment
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        p.fail(lineno, "malformed section header '" + line + "'");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "system" && section != "experiment" && section != "sampling" &&
          section != "output")
        p.fail(lineno, "unknown section [" + section + "]");
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      p.fail(lineno, "expected key = value, got '" + line + "'");
      continue;
    }
    if (section.empty()) {
      p.fail(lineno, "key outside of any section: '" + line + "'");
      continue;
    }
    const std::string key = section + "." + trim(line.substr(0, eq));
    if (!kKnownKeys.contains(key)) {
      p.fail(lineno, "unknown key '" + key + "'");
      continue;
    }
    if (p.entries.contains(key)) {
      p.fail(lineno, "duplicate key '" + key + "'");
      continue;
    }
    p.entries.emplace(key, RawEntry{trim(line.substr(eq + 1)), lineno, false});
  }

  ExperimentConfig cfg;

  // system
  p.get("system.preset", cfg.system.preset);
  p.get("system.coupling_rad_s", cfg.system.coupling, "rad/s");
  p.get("system.gamma_rad_s_t", cfg.system.gamma, "rad/(s T)");
  p.get("system.seed", cfg.system.seed);
  p.get_vec3("system.field_axis", cfg.system.field_axis);
  if (RawEntry* e = p.find("system.positions_m")) {
    for (const std::string& row : split_rows(e->value)) {
      const auto toks = split_ws(row);
      double v[3];
      if (toks.size() != 3 || !p.parse_double(toks[0], v[0]) ||
          !p.parse_double(toks[1], v[1]) || !p.parse_double(toks[2], v[2])) {
        p.fail(e->line, "positions_m expects 'x y z' triples (m) separated by ';'");
        cfg.system.positions.clear();
        break;
      }
      cfg.system.positions.emplace_back(v[0], v[1], v[2]);
    }
  }
  if (RawEntry* e = p.find("system.couplings_rad_s")) {
    const auto rows = split_rows(e->value);
    const size_t n = rows.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    bool ok = n >= 2;
    for (size_t r = 0; ok && r < n; ++r) {
      const auto toks = split_ws(rows[r]);
      if (toks.size() != n) {
        ok = false;
        break;
      }
      for (size_t c = 0; c < n; ++c) {
        double v = 0;
        if (!p.parse_double(toks[c], v)) {
          ok = false;
          break;
        }
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
      }
    }
    if (!ok)
      p.fail(e->line, "couplings_rad_s expects an N x N matrix (rad/s), rows separated by ';'");
    else
      cfg.system.couplings = std::move(m);
  }

  const int sources = (!cfg.system.preset.empty() ? 1 : 0) +
                      (!cfg.system.positions.empty() ? 1 : 0) +
                      (cfg.system.couplings.size() > 0 ? 1 : 0);
  if (sources == 0)
    p.fail("[system] needs one of: preset, positions_m, couplings_rad_s");
  else if (sources > 1)
    p.fail("[system] accepts only one of: preset, positions_m, couplings_rad_s");

  // experiment
  if (RawEntry* e = p.find("experiment.kind")) {
    for (const std::string& tok : split_ws(e->value)) {
      ExperimentKind k;
      if (!parse_kind(tok, k))
        p.fail(e->line, "unknown experiment kind '" + tok +
                            "' (expected oned-z, oned-x, twod, decay, spin-count-sweep, aht-check)");
      else
        cfg.kinds.push_back(k);
    }
  }
  if (cfg.kinds.empty()) p.fail("[experiment] kind is required");

  if (RawEntry* e = p.find("experiment.mode")) {
    const std::string m = trim(e->value);
    if (m == "collapsed")
      cfg.mode = RunMode::Collapsed;
    else if (m == "network")
      cfg.mode = RunMode::Network;
    else
      p.fail(e->line, "mode expects collapsed or network, got '" + m + "'");
  }
  p.get_list("experiment.loops", cfg.loops);
  p.get("experiment.tau_s", cfg.tau, "s");
  p.get("experiment.delta_s", cfg.timings.delta, "s");
  p.get("experiment.pulse_s", cfg.timings.t_pulse, "s");
  p.get("experiment.prep_loops", cfg.prep_loops);
  p.get_list("experiment.decay_times_s", cfg.decay_times, "s");
  p.get_list("experiment.coupling_scales", cfg.coupling_scales, "dimensionless");
  p.get("experiment.ideal_pulses", cfg.ideal_pulses);

  // sampling
  p.get("sampling.k_phi", cfg.k_phi);
  p.get("sampling.k_beta", cfg.k_beta);
  p.get("sampling.n_max", cfg.n_max);

  // output
  p.get("output.prefix", cfg.prefix);

  // semantic validation (continues collecting errors)
  if (!(cfg.timings.delta > 0.0)) p.fail("delta_s must be > 0 (seconds)");
  if (cfg.timings.t_pulse < 0.0) p.fail("pulse_s must be >= 0 (seconds)");
  if (cfg.k_phi < 0) p.fail("k_phi must be >= 1 (or omitted for the default)");
  if (cfg.k_beta < 0) p.fail("k_beta must be >= 1 (or omitted for the default)");
  if (cfg.n_max < 0) p.fail("n_max must be >= 1 (or omitted for the default)");
  for (int l : cfg.loops)
    if (l < 0) p.fail("loops must be >= 0");
  if (cfg.tau >= 0.0 && !cfg.loops.empty())
    p.fail("give either loops or tau_s, not both");
  if (cfg.prefix.empty()) p.fail("output prefix must not be empty");
  if (cfg.prefix.find("..") != std::string::npos || cfg.prefix.front() == '/')
    p.fail("output prefix must be a relative name");

  int nspins = 0;
  if (sources == 1) {
    try {
      nspins = cfg.system.build().nspins;
    } catch (const std::exception& e) {
      p.fail(std::string("system: ") + e.what());
    }
  }

  const int n_max_eff = cfg.n_max > 0 ? cfg.n_max : nspins;
  if (n_max_eff > 0) {
    if (cfg.k_phi > 0 && cfg.k_phi < 2 * n_max_eff)
      p.fail("k_phi = " + std::to_string(cfg.k_phi) + " is below the Nyquist bound " +
             std::to_string(2 * n_max_eff) + " for orders to +-" + std::to_string(n_max_eff));
    if (cfg.k_beta > 0 && cfg.k_beta < 2 * n_max_eff && has_kind(cfg.kinds, ExperimentKind::TwoD))
      p.fail("k_beta = " + std::to_string(cfg.k_beta) + " is below the Nyquist bound " +
             std::to_string(2 * n_max_eff) + " for orders to +-" + std::to_string(n_max_eff));
  }

  const bool needs_prep = has_kind(cfg.kinds, ExperimentKind::OneDZ) ||
                          has_kind(cfg.kinds, ExperimentKind::OneDX) ||
                          has_kind(cfg.kinds, ExperimentKind::TwoD) ||
                          has_kind(cfg.kinds, ExperimentKind::SpinCountSweep);
  if (needs_prep && cfg.loops.empty() && cfg.tau < 0.0)
    p.fail("this experiment needs loops or tau_s");
  if (cfg.mode == RunMode::Network && cfg.tau >= 0.0)
    p.fail("network mode is parameterised by whole cycles; use loops");
  if (has_kind(cfg.kinds, ExperimentKind::SpinCountSweep))
    for (int l : cfg.loops)
      if (l < 1) p.fail("spin-count-sweep loops must be >= 1");
  if (has_kind(cfg.kinds, ExperimentKind::Decay)) {
    if (cfg.decay_times.empty()) p.fail("decay needs decay_times_s");
    for (double t : cfg.decay_times)
      if (t < 0.0) p.fail("decay_times_s must be >= 0 (seconds)");
    if (cfg.prep_loops < 0) p.fail("prep_loops must be >= 0");
  }
  if (has_kind(cfg.kinds, ExperimentKind::AhtCheck)) {
    if (cfg.coupling_scales.empty()) p.fail("aht-check needs coupling_scales");
    for (double s : cfg.coupling_scales)
      if (!(s > 0.0)) p.fail("coupling_scales must be positive");
  }

  if (!p.errors.empty()) throw ConfigError(std::move(p.errors));
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

nlohmann::json ExperimentConfig::echo() const {
  nlohmann::json sys;
  sys["preset"] = system.preset;
  sys["coupling_rad_s"] = system.coupling;
  sys["gamma_rad_s_t"] = system.gamma;
  sys["seed"] = system.seed;
  sys["field_axis"] = {system.field_axis.x(), system.field_axis.y(), system.field_axis.z()};
  if (!system.positions.empty()) {
    nlohmann::json pos = nlohmann::json::array();
    for (const auto& r : system.positions) pos.push_back({r.x(), r.y(), r.z()});
    sys["positions_m"] = pos;
  }
  const SpinSystem built = system.build();
  sys["nspins"] = built.nspins;
  nlohmann::json mat = nlohmann::json::array();
  for (int i = 0; i < built.nspins; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < built.nspins; ++j) row.push_back(built.couplings(i, j));
    mat.push_back(row);
  }
  sys["couplings_rad_s"] = mat;
  if (std::isfinite(built.geometry_constant))
    sys["geometry_constant"] = built.geometry_constant;

  nlohmann::json kinds_json = nlohmann::json::array();
  for (ExperimentKind k : kinds) kinds_json.push_back(to_string(k));

  nlohmann::json j;
  j["system"] = sys;
  j["experiment"] = {
      {"kind", kinds_json},
      {"mode", mode == RunMode::Collapsed ? "collapsed" : "network"},
      {"loops", loops},
      {"tau_s", tau},
      {"delta_s", timings.delta},
      {"pulse_s", timings.t_pulse},
      {"cycle_time_s", timings.cycle_time()},
      {"prep_loops", prep_loops},
      {"decay_times_s", decay_times},
      {"coupling_scales", coupling_scales},
      {"ideal_pulses", ideal_pulses},
  };
  j["sampling"] = {{"k_phi", k_phi}, {"k_beta", k_beta}, {"n_max", n_max}};
  j["output"] = {{"prefix", prefix}};
  return j;
}

}  // namespace mqsim
