#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mqsim/config.hpp"
#include "mqsim/io.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace mqsim;

namespace {

const char* kMinimal = R"(
[system]
preset = chain-4

[experiment]
kind = oned-z
loops = 1
)";

std::string errors_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    std::string all;
    for (const auto& err : e.errors()) all += err + "\n";
    return all;
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config parses with sensible defaults") {
  const ExperimentConfig cfg = parse_config(kMinimal);
  CHECK(cfg.kinds.size() == 1);
  CHECK(cfg.kinds[0] == ExperimentKind::OneDZ);
  CHECK(cfg.loops == std::vector<int>{1});
  CHECK(cfg.mode == RunMode::Collapsed);
  CHECK(cfg.timings.delta == doctest::Approx(1.3e-6));
  CHECK(cfg.timings.t_pulse == doctest::Approx(0.51e-6));
  CHECK(cfg.system.build().nspins == 4);
}

TEST_CASE("wide phase encoding ranges are accepted") {
  const ExperimentConfig cfg = parse_config(R"(
[system]
preset = chain-6
[experiment]
kind = oned-z oned-x
loops = 1 3 5
[sampling]
k_phi = 64
n_max = 32
)");
  CHECK(cfg.k_phi == 64);
  CHECK(cfg.n_max == 32);
  CHECK(cfg.kinds.size() == 2);
}

TEST_CASE("sub-Nyquist sampling is rejected with a diagnostic") {
  const std::string errs = errors_of(R"(
[system]
preset = chain-6
[experiment]
kind = oned-z
loops = 1
[sampling]
k_phi = 30
n_max = 16
)");
  CHECK(errs.find("Nyquist") != std::string::npos);
}

TEST_CASE("unknown keys and sections are errors, and all errors are reported") {
  const std::string errs = errors_of(R"(
[system]
preset = chain-4
typo_key = 1
[experiment]
kind = oned-z
loops = -2
[badsection]
x = 1
)");
  CHECK(errs.find("typo_key") != std::string::npos);
  CHECK(errs.find("badsection") != std::string::npos);
  CHECK(errs.find("loops") != std::string::npos);
}

TEST_CASE("conflicting and missing parameters") {
  CHECK(errors_of(R"(
[system]
preset = chain-4
[experiment]
kind = oned-z
loops = 1
tau_s = 1e-5
)").find("not both") != std::string::npos);

  CHECK(errors_of(R"(
[system]
preset = chain-4
[experiment]
kind = decay
)").find("decay_times_s") != std::string::npos);

  CHECK(errors_of(R"(
[system]
preset = chain-4
[experiment]
kind = oned-z
mode = network
tau_s = 1e-5
)").find("cycles") != std::string::npos);

  CHECK(errors_of(R"(
[experiment]
kind = oned-z
loops = 1
)").find("[system]") != std::string::npos);

  CHECK(errors_of(R"(
[system]
preset = chain-4
couplings_rad_s = 0 1; 1 0
[experiment]
kind = oned-z
loops = 1
)").find("only one of") != std::string::npos);
}

TEST_CASE("explicit coupling matrices and geometry parse") {
  const ExperimentConfig cfg = parse_config(R"(
[system]
couplings_rad_s = 0 100 10; 100 0 100; 10 100 0
[experiment]
kind = oned-z
loops = 1
)");
  const SpinSystem sys = cfg.system.build();
  CHECK(sys.nspins == 3);
  CHECK(sys.couplings(0, 1) == doctest::Approx(100.0));
  CHECK(sys.couplings(0, 2) == doctest::Approx(10.0));

  const ExperimentConfig geo = parse_config(R"(
[system]
positions_m = 0 0 0; 1 0 0; 2 0 0
field_axis = 0 0 1
[experiment]
kind = oned-z
loops = 1
)");
  const SpinSystem gsys = geo.system.build();
  CHECK(gsys.nspins == 3);
  CHECK(gsys.couplings(0, 1) == doctest::Approx(1.0));
  CHECK(gsys.couplings(0, 2) == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("random preset is reproducible from the seed") {
  const ExperimentConfig cfg = parse_config(R"(
[system]
preset = random-4
coupling_rad_s = 1000
seed = 42
[experiment]
kind = oned-z
loops = 1
)");
  const SpinSystem a = cfg.system.build();
  const SpinSystem b = cfg.system.build();
  CHECK((a.couplings - b.couplings).cwiseAbs().maxCoeff() == 0.0);

  SystemSpec reseeded = cfg.system;
  reseeded.seed = 43;
  CHECK((a.couplings - reseeded.build().couplings).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("config echo carries every numeric parameter") {
  const ExperimentConfig cfg = parse_config(kMinimal);
  const nlohmann::json echo = cfg.echo();
  CHECK(echo["system"]["nspins"] == 4);
  CHECK(echo["system"].contains("couplings_rad_s"));
  CHECK(echo["system"].contains("seed"));
  CHECK(echo["experiment"].contains("delta_s"));
  CHECK(echo["experiment"].contains("cycle_time_s"));
  CHECK(echo["sampling"].contains("k_phi"));
  CHECK(echo["output"]["prefix"] == "run");
}

TEST_CASE("seventeen significant digits round-trip doubles exactly") {
  for (double v : {std::numbers::pi, 1.0 / 3.0, -2.5e-17, 43.44e-6, 0.0, 1e300}) {
    const std::string s = format_g17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("spectrum files: sparse 1D rows, dense 2D grid") {
  const SpinSystem sys = chain_system(4, 700.0);

  OneDParams p;
  p.loops = 0;  // single zero-order line
  const OneDResult r = run_1d(sys, p);
  const std::string csv = oned_csv(r);
  CHECK(csv == "order,intensity\n0," + format_g17(r.spectrum.at(0)) + "\n");
  CHECK(r.spectrum.at(0) == doctest::Approx(r.state_purity).epsilon(1e-12));

  TwoDParams p2;
  p2.loops = 1;
  p2.n_max = 4;
  p2.k_phi = 9;
  p2.k_beta = 9;
  const TwoDResult r2 = run_2d(sys, p2);
  const std::string csv2 = twod_csv(r2);
  const size_t rows = std::count(csv2.begin(), csv2.end(), '\n');
  CHECK(rows == 1 + 9 * 9);  // header + (2 n_max + 1)^2
}

TEST_CASE("round trip through the filesystem is exact") {
  const SpinSystem sys = chain_system(4, 700.0);
  OneDParams p;
  p.loops = 2;
  const OneDResult r = run_1d(sys, p);
  const std::string csv = oned_csv(r);

  const std::string path =
      (std::filesystem::temp_directory_path() / "mqsim_roundtrip.csv").string();
  write_text_file(path, csv);
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == csv);

  // parse the rows back and compare bit-exactly
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    const int order = std::stoi(line.substr(0, comma));
    const double v = std::strtod(line.c_str() + comma + 1, nullptr);
    CHECK(v == r.spectrum.at(order));
  }
  std::filesystem::remove(path);
}

TEST_CASE("result JSON embeds the config echo and passes checks through") {
  const SpinSystem sys = chain_system(4, 700.0);
  const ExperimentConfig cfg = parse_config(kMinimal);
  OneDParams p;
  p.loops = 1;
  const OneDResult r = run_1d(sys, p);
  const nlohmann::json j = nlohmann::json::parse(oned_json(r, cfg.echo()));
  CHECK(j["schema"] == "mqsim-result-v1");
  CHECK(j["config"]["system"]["preset"] == "chain-4");
  CHECK(j["checks"]["parseval_error"].get<double>() < 1e-10);
  CHECK(j["spectrum"]["orders"].size() == j["spectrum"]["intensity"].size());
}

TEST_CASE("identical runs serialize identically") {
  const SpinSystem sys = chain_system(4, 700.0);
  OneDParams p;
  p.loops = 2;
  p.workers = 1;
  const OneDResult a = run_1d(sys, p);
  p.workers = 3;
  const OneDResult b = run_1d(sys, p);
  CHECK(oned_csv(a) == oned_csv(b));
}
