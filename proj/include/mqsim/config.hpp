#pragma once

#include "mqsim/experiments.hpp"
#include "mqsim/spin_system.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mqsim {

enum class ExperimentKind { OneDZ, OneDX, TwoD, Decay, SpinCountSweep, AhtCheck };

std::string to_string(ExperimentKind kind);

/// Carries every parse/validation failure, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// How the spin system is specified: a named preset, explicit geometry, or
/// an explicit coupling matrix.
struct SystemSpec {
  std::string preset;                       // "chain-N" or "random-N"
  double coupling = 700.0;                  // rad/s; preset scale
  std::vector<Eigen::Vector3d> positions;   // m (or arbitrary in reduced units)
  Eigen::Vector3d field_axis{0.0, 0.0, 1.0};
  double gamma = 0.0;                       // rad/(s T); 0 selects reduced units
  Eigen::MatrixXd couplings;                // rad/s; empty unless explicit
  std::uint64_t seed = 1;                   // used by random presets

  SpinSystem build() const;
};

struct ExperimentConfig {
  SystemSpec system;
  std::vector<ExperimentKind> kinds;
  RunMode mode = RunMode::Collapsed;
  std::vector<int> loops;
  double tau = -1.0;  // s; <0 means unset
  ExperimentTimings timings;
  int prep_loops = 3;
  std::vector<double> decay_times;                  // s
  std::vector<double> coupling_scales{1.0, 0.5, 0.25};
  bool ideal_pulses = true;
  int k_phi = 0;   // 0: derived from n_max
  int k_beta = 0;  // 0: derived from n_max
  int n_max = 0;   // 0: number of spins
  std::string prefix = "run";

  /// Full provenance echo (every parameter affecting the numbers).
  nlohmann::json echo() const;
};

/// Parses the key = value / [section] format documented in the README,
/// collecting every error before throwing ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace mqsim
