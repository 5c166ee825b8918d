// mqsim command-line driver: runs configured experiments, parameter sweeps,
// cycle validation, and the built-in verification suite.

#include "mqsim/config.hpp"
#include "mqsim/io.hpp"
#include "mqsim/selftest.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>

namespace {

using namespace mqsim;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  int workers = 1;
  std::int64_t seed = -1;  // <0: keep the config's seed
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool config_required) {
  auto* c = cmd->add_option("--config", opt.config_path, "experiment config file");
  if (config_required) c->required();
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opt.seed, "override the config random seed");
}

std::string out_path(const CommonOptions& opt, const ExperimentConfig& cfg,
                     const std::string& suffix) {
  return opt.out_dir + "/" + cfg.prefix + "_" + suffix;
}

void run_one_kind(ExperimentKind kind, const ExperimentConfig& cfg, const SpinSystem& sys,
                  const CommonOptions& opt) {
  const nlohmann::json echo = cfg.echo();
  switch (kind) {
    case ExperimentKind::OneDZ:
    case ExperimentKind::OneDX: {
      OneDParams p;
      p.basis = kind == ExperimentKind::OneDZ ? Axis::Z : Axis::X;
      p.mode = cfg.mode;
      p.k_phi = cfg.k_phi;
      p.n_max = cfg.n_max;
      p.timings = cfg.timings;
      p.workers = opt.workers;
      const std::string base = kind == ExperimentKind::OneDZ ? "oned_z" : "oned_x";
      if (cfg.loops.empty()) {
        p.tau = cfg.tau;
        const OneDResult r = run_1d(sys, p);
        write_text_file(out_path(opt, cfg, base + "_tau.csv"), oned_csv(r));
        write_text_file(out_path(opt, cfg, base + "_tau.json"), oned_json(r, echo));
        std::cout << "wrote " << out_path(opt, cfg, base + "_tau.{csv,json}") << "\n";
      } else {
        for (int loops : cfg.loops) {
          p.loops = loops;
          p.tau = -1.0;
          const OneDResult r = run_1d(sys, p);
          const std::string stem = base + "_loops" + std::to_string(loops);
          write_text_file(out_path(opt, cfg, stem + ".csv"), oned_csv(r));
          write_text_file(out_path(opt, cfg, stem + ".json"), oned_json(r, echo));
          std::cout << "wrote " << out_path(opt, cfg, stem + ".{csv,json}") << "\n";
        }
      }
      break;
    }
    case ExperimentKind::TwoD: {
      TwoDParams p;
      if (cfg.loops.size() > 1)
        throw std::runtime_error("twod takes a single loop count");
      if (!cfg.loops.empty())
        p.loops = cfg.loops.front();
      else
        p.tau = cfg.tau;
      p.k_phi = cfg.k_phi;
      p.k_beta = cfg.k_beta;
      p.n_max = cfg.n_max;
      p.timings = cfg.timings;
      p.workers = opt.workers;
      const TwoDResult r = run_2d(sys, p);
      write_text_file(out_path(opt, cfg, "twod.csv"), twod_csv(r));
      write_text_file(out_path(opt, cfg, "twod.json"), twod_json(r, echo));
      std::cout << "wrote " << out_path(opt, cfg, "twod.{csv,json}") << "\n";
      break;
    }
    case ExperimentKind::Decay: {
      DecayParams p;
      p.prep_loops = cfg.prep_loops;
      p.times = cfg.decay_times;
      p.k_phi = cfg.k_phi;
      p.timings = cfg.timings;
      p.workers = opt.workers;
      const DecayResult r = run_dipolar_decay(sys, p);
      write_text_file(out_path(opt, cfg, "decay.csv"), decay_csv(r));
      write_text_file(out_path(opt, cfg, "decay.json"), decay_json(r, echo));
      std::cout << "wrote " << out_path(opt, cfg, "decay.{csv,json}") << "\n";
      break;
    }
    case ExperimentKind::SpinCountSweep: {
      const SweepResult r = run_spin_count_sweep(sys, cfg.loops, cfg.mode, cfg.k_phi,
                                                 cfg.n_max, cfg.timings, opt.workers);
      write_text_file(out_path(opt, cfg, "spin_count.csv"), sweep_csv(r));
      write_text_file(out_path(opt, cfg, "spin_count.json"), sweep_json(r, echo));
      std::cout << "wrote " << out_path(opt, cfg, "spin_count.{csv,json}")
                << "  (slope " << r.slope << ")\n";
      break;
    }
    case ExperimentKind::AhtCheck: {
      const AhtResult r = run_aht_check(sys, cfg.coupling_scales, cfg.ideal_pulses,
                                        cfg.timings);
      write_text_file(out_path(opt, cfg, "aht.csv"), aht_csv(r));
      write_text_file(out_path(opt, cfg, "aht.json"), aht_json(r, echo));
      std::cout << "wrote " << out_path(opt, cfg, "aht.{csv,json}") << "\n";
      break;
    }
  }
}

int run_config(const CommonOptions& opt, ExperimentKind* only) {
  ExperimentConfig cfg = load_config_file(opt.config_path);
  if (opt.seed >= 0) cfg.system.seed = static_cast<std::uint64_t>(opt.seed);
  if (only) {
    const bool listed =
        std::find(cfg.kinds.begin(), cfg.kinds.end(), *only) != cfg.kinds.end();
    if (!listed)
      throw std::runtime_error("config does not declare kind '" + to_string(*only) + "'");
    cfg.kinds = {*only};
  }
  const SpinSystem sys = cfg.system.build();
  for (ExperimentKind kind : cfg.kinds) run_one_kind(kind, cfg, sys, opt);
  return 0;
}

int run_selftest_cmd(const CommonOptions& opt, bool write_outputs) {
  const std::vector<CheckResult> results =
      run_selftest(opt.workers, write_outputs ? opt.out_dir : "");
  size_t passed = 0;
  for (const CheckResult& r : results) {
    std::printf("[%s] %-32s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (r.pass) ++passed;
  }
  std::printf("%zu/%zu checks passed\n", passed, results.size());
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiple-quantum coherence simulator for dipolar-coupled spin-1/2 systems"};
  app.require_subcommand(1);

  CommonOptions opt;
  bool selftest_write = false;

  CLI::App* run = app.add_subcommand("run", "run the experiments declared in a config");
  add_common(run, opt, true);

  CLI::App* sweep = app.add_subcommand("sweep", "run the spin-count sweep from a config");
  add_common(sweep, opt, true);

  CLI::App* aht = app.add_subcommand("aht-check", "validate the pulsed cycles from a config");
  add_common(aht, opt, true);

  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in verification suite");
  add_common(selftest, opt, false);
  selftest->add_flag("--write", selftest_write, "also write the standard result bundle");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_config(opt, nullptr);
    if (sweep->parsed()) {
      ExperimentKind k = mqsim::ExperimentKind::SpinCountSweep;
      return run_config(opt, &k);
    }
    if (aht->parsed()) {
      ExperimentKind k = mqsim::ExperimentKind::AhtCheck;
      return run_config(opt, &k);
    }
    if (selftest->parsed()) return run_selftest_cmd(opt, selftest_write);
  } catch (const mqsim::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
