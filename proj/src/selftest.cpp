#include "mqsim/selftest.hpp"

#include "mqsim/config.hpp"
#include "mqsim/io.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace mqsim {

namespace {

// pinned suite parameters
constexpr double kChainCoupling = 700.0;    // rad/s, fig-2/3 scale presets
constexpr double kDecayCoupling = 8000.0;   // rad/s, decay preset
constexpr double kSelectionTol = 1e-12;     // forbidden-parity intensity
constexpr double kOracleTol = 1e-10;
constexpr double kDualRouteTol = 1e-10;
constexpr double kEquivalenceTol = 1e-10;
constexpr double kParsevalTol = 1e-10;
constexpr double kSymmetryTol = 1e-10;
constexpr double kMarginalTol = 1e-10;
constexpr double kSwapTol = 1e-10;
constexpr double kSumCheckTol = 1e-10;
constexpr double kSecularityTol = 1e-10;
constexpr double kSlopeLow = 0.35;
constexpr double kSlopeHigh = 0.65;
constexpr double kAhtHalvingFactor = 3.0;
constexpr double kDecayFloor = 0.9;         // final/initial must drop below this
constexpr double kContribSplit = 0.10;      // contribution curves must differ by this

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

struct SuiteContext {
  int workers = 1;
  std::vector<std::pair<std::string, OneDResult>> oned_runs;
  std::vector<std::pair<std::string, TwoDResult>> twod_runs;

  OneDResult oned(const SpinSystem& sys, Axis basis, int loops, RunMode mode,
                  const std::string& label, int n_max = 0, int k_phi = 0) {
    OneDParams p;
    p.basis = basis;
    p.loops = loops;
    p.mode = mode;
    p.n_max = n_max;
    p.k_phi = k_phi;
    p.workers = workers;
    OneDResult r = run_1d(sys, p);
    oned_runs.emplace_back(label, r);
    return r;
  }
};

// --------------------------------------------------------------------------
// 1. even z / odd x selection rules
// --------------------------------------------------------------------------

CheckResult check_selection_rules(SuiteContext& ctx) {
  CheckResult out{"01-selection-rules", true, ""};
  double worst = 0.0;
  for (int nspins : {2, 4, 6}) {
    const SpinSystem sys = chain_system(nspins, kChainCoupling);
    for (int loops : {1, 3, 5}) {
      const OneDResult rz = ctx.oned(sys, Axis::Z, loops, RunMode::Collapsed,
                                     "selection-z-N" + std::to_string(nspins) + "-l" +
                                         std::to_string(loops));
      const OneDResult rx = ctx.oned(sys, Axis::X, loops, RunMode::Collapsed,
                                     "selection-x-N" + std::to_string(nspins) + "-l" +
                                         std::to_string(loops));
      for (int n = -rz.spectrum.n_max; n <= rz.spectrum.n_max; ++n) {
        if (std::abs(n) % 2 == 1) worst = std::max(worst, rz.spectrum.at(n) / rz.spectrum.total);
        if (std::abs(n) % 2 == 0) worst = std::max(worst, rx.spectrum.at(n) / rx.spectrum.total);
      }
    }
  }
  out.pass = worst < kSelectionTol;
  out.detail = "forbidden-parity intensity " + fmt(worst) + " of total (tol " +
               fmt(kSelectionTol) + ")";
  return out;
}

// --------------------------------------------------------------------------
// 2. exact two-spin oracle, built without the main engine
// --------------------------------------------------------------------------

// series matrix exponential with scaling and squaring; test-grade, 4x4
Eigen::Matrix4cd series_expm(const Eigen::Matrix4cd& a) {
  int squarings = 0;
  double norm = a.cwiseAbs().sum();
  Eigen::Matrix4cd x = a;
  while (norm > 0.25) {
    x *= 0.5;
    norm *= 0.5;
    ++squarings;
  }
  Eigen::Matrix4cd term = Eigen::Matrix4cd::Identity();
  Eigen::Matrix4cd sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = term * x / double(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

CheckResult check_two_spin_oracle(SuiteContext& ctx) {
  CheckResult out{"02-two-spin-oracle", true, ""};
  const double d = 1.0;  // rad/s; dt below carries the time dependence
  double worst = 0.0;

  for (int k = 1; k <= 10; ++k) {
    const double t = 0.17 * k;

    // oracle: hand-built H and initial state, series propagator
    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    h(0, 3) = d;
    h(3, 0) = d;
    Eigen::Matrix4cd rho0 = Eigen::Matrix4cd::Zero();
    rho0(0, 0) = 1.0;
    rho0(3, 3) = -1.0;
    const Eigen::Matrix4cd u = series_expm(Complex(0.0, 1.0) * h * t);
    const Eigen::Matrix4cd rho_oracle = u * rho0 * u.adjoint();

    // oracle z-order intensities by direct masking; m = (+1, 0, 0, -1)
    const double m[4] = {1.0, 0.0, 0.0, -1.0};
    double oracle[5] = {0, 0, 0, 0, 0};  // orders -2..2
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const int order = static_cast<int>(std::lround(m[c] - m[r]));
        oracle[order + 2] += std::norm(rho_oracle(r, c));
      }
    const double total = oracle[0] + oracle[1] + oracle[2] + oracle[3] + oracle[4];

    // closed form (normalised): {0: cos^2(2dt), +-2: sin^2(2dt)/2}
    const double c2 = std::cos(2.0 * d * t) * std::cos(2.0 * d * t);
    const double s2 = std::sin(2.0 * d * t) * std::sin(2.0 * d * t);
    worst = std::max(worst, std::abs(oracle[2] / total - c2));
    worst = std::max(worst, std::abs(oracle[0] / total - s2 / 2.0));
    worst = std::max(worst, std::abs(oracle[4] / total - s2 / 2.0));

    // engine path: same system through the library
    Eigen::MatrixXd couplings(2, 2);
    couplings << 0.0, d, d, 0.0;
    OneDParams p;
    p.basis = Axis::Z;
    p.tau = t;
    p.workers = ctx.workers;
    const OneDResult r = run_1d(system_from_couplings(couplings), p);
    ctx.oned_runs.emplace_back("oracle-dt" + std::to_string(k), r);
    worst = std::max(worst, std::abs(r.spectrum.at(0) / r.spectrum.total - c2));
    worst = std::max(worst, std::abs(r.spectrum.at(2) / r.spectrum.total - s2 / 2.0));
    worst = std::max(worst, std::abs(r.spectrum.at(-2) / r.spectrum.total - s2 / 2.0));
  }
  out.pass = worst < kOracleTol;
  out.detail = "max deviation from cos^2/sin^2 law " + fmt(worst) + " (tol " +
               fmt(kOracleTol) + ")";
  return out;
}

// --------------------------------------------------------------------------
// 3. block vs phase-Fourier decomposition, basis-transform relation
// --------------------------------------------------------------------------

CheckResult check_dual_route(SuiteContext&) {
  CheckResult out{"03-dual-route-decomposition", true, ""};
  std::mt19937_64 rng(20260810);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int nspins = 4;
  const Eigen::Index dim = 16;

  double worst = 0.0;
  double worst_basis = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    Operator a(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
    Operator rho = 0.5 * (a + a.adjoint());
    rho /= rho.norm();

    for (Axis axis : {Axis::Z, Axis::X}) {
      const CoherenceSpectrum block = spectrum_from_block(rho, axis);
      const CoherenceSpectrum ft = decompose_phase_ft(rho, axis, 64);
      for (int n = -nspins; n <= nspins; ++n)
        worst = std::max(worst, std::abs(block.at(n) - ft.at(n)));
    }
    worst_basis = std::max(worst_basis, basis_transform_check(rho, 64));
  }
  out.pass = worst < kDualRouteTol && worst_basis < kDualRouteTol;
  out.detail = "block vs phase-ft " + fmt(worst) + ", basis transform " + fmt(worst_basis) +
               " (tol " + fmt(kDualRouteTol) + ")";
  return out;
}

// --------------------------------------------------------------------------
// 4. pulse network reproduces the collapsed functional
// --------------------------------------------------------------------------

CheckResult check_network_equivalence(SuiteContext& ctx) {
  CheckResult out{"04-network-collapsed-equivalence", true, ""};
  const SpinSystem sys = chain_system(6, kChainCoupling);
  double worst = 0.0;
  for (int loops : {1, 3, 5}) {
    for (Axis basis : {Axis::Z, Axis::X}) {
      const std::string tag = std::string(basis == Axis::Z ? "z" : "x") + std::to_string(loops);
      const OneDResult col =
          ctx.oned(sys, basis, loops, RunMode::Collapsed, "equiv-col-" + tag);
      const OneDResult net =
          ctx.oned(sys, basis, loops, RunMode::Network, "equiv-net-" + tag);
      for (size_t k = 0; k < col.signal.size(); ++k)
        worst = std::max(worst,
                         std::abs(col.signal[k] - net.signal[k]) / col.state_purity);
    }
  }
  out.pass = worst < kEquivalenceTol;
  out.detail = "max signal deviation " + fmt(worst) + " of Tr[rho_s^2] (tol " +
               fmt(kEquivalenceTol) + ")";
  return out;
}

// --------------------------------------------------------------------------
// 5. Parseval sum and +-n symmetry across every run of the suite
// --------------------------------------------------------------------------

CheckResult check_parseval_symmetry(SuiteContext& ctx) {
  CheckResult out{"05-parseval-symmetry", true, ""};
  double worst_parseval = 0.0;
  double worst_symmetry = 0.0;
  std::string where = "-";
  for (const auto& [label, r] : ctx.oned_runs) {
    if (r.parseval_error > worst_parseval) {
      worst_parseval = r.parseval_error;
      where = label;
    }
    worst_symmetry = std::max(worst_symmetry, r.symmetry_error);
  }
  for (const auto& [label, r] : ctx.twod_runs) {
    double total = 0.0;
    for (int nx = -r.n_max; nx <= r.n_max; ++nx)
      for (int nz = -r.n_max; nz <= r.n_max; ++nz) {
        total += r.order_map(nx + r.n_max, nz + r.n_max);
        const double sym = std::abs(r.order_map(nx + r.n_max, nz + r.n_max) -
                                    r.order_map(-nx + r.n_max, -nz + r.n_max)) /
                           r.state_purity;
        worst_symmetry = std::max(worst_symmetry, sym);
      }
    const double perr = std::abs(total - r.state_purity) / r.state_purity;
    if (perr > worst_parseval) {
      worst_parseval = perr;
      where = label;
    }
  }
  out.pass = worst_parseval < kParsevalTol && worst_symmetry < kSymmetryTol &&
             !ctx.oned_runs.empty();
  out.detail = std::to_string(ctx.oned_runs.size()) + "+" +
               std::to_string(ctx.twod_runs.size()) + " runs; worst parseval " +
               fmt(worst_parseval) + " (" + where + "), worst symmetry " +
               fmt(worst_symmetry);
  return out;
}

// --------------------------------------------------------------------------
// 6. 2D marginals and phase-order swap
// --------------------------------------------------------------------------

CheckResult check_twod_consistency(SuiteContext& ctx) {
  CheckResult out{"06-twod-consistency", true, ""};
  const SpinSystem sys = chain_system(6, kChainCoupling);

  TwoDParams p;
  p.loops = 3;
  p.n_max = 8;
  p.k_phi = 17;
  p.k_beta = 17;
  p.workers = ctx.workers;
  const TwoDResult td = run_2d(sys, p);
  ctx.twod_runs.emplace_back("twod-l3", td);

  // marginals against the 1D experiments on the same grids
  const OneDResult oz =
      ctx.oned(sys, Axis::Z, 3, RunMode::Collapsed, "twod-marg-z", p.n_max, p.k_beta);
  const OneDResult ox =
      ctx.oned(sys, Axis::X, 3, RunMode::Collapsed, "twod-marg-x", p.n_max, p.k_phi);
  const CoherenceSpectrum mz = td.marginal_z();
  const CoherenceSpectrum mx = td.marginal_x();
  double worst_marginal = 0.0;
  for (int n = -p.n_max; n <= p.n_max; ++n) {
    worst_marginal =
        std::max(worst_marginal, std::abs(mz.at(n) - oz.spectrum.at(n)) / td.state_purity);
    worst_marginal =
        std::max(worst_marginal, std::abs(mx.at(n) - ox.spectrum.at(n)) / td.state_purity);
  }

  TwoDParams ps = p;
  ps.swapped = true;
  const TwoDResult td_swapped = run_2d(sys, ps);
  ctx.twod_runs.emplace_back("twod-l3-swapped", td_swapped);
  double worst_swap = 0.0;
  for (Eigen::Index i = 0; i < td.signal.rows(); ++i)
    for (Eigen::Index j = 0; j < td.signal.cols(); ++j)
      worst_swap = std::max(
          worst_swap, std::abs(td.signal(i, j) - td_swapped.signal(i, j)) / td.state_purity);

  out.pass = worst_marginal < kMarginalTol && worst_swap < kSwapTol;
  out.detail = "marginal deviation " + fmt(worst_marginal) + ", swap deviation " +
               fmt(worst_swap) + " (tol " + fmt(kMarginalTol) + ")";
  return out;
}

// --------------------------------------------------------------------------
// 7. spin-counting growth, width ordering, and the x/z slope
// --------------------------------------------------------------------------

CheckResult check_spin_count_trend(SuiteContext& ctx, SweepResult& sweep_out) {
  CheckResult out{"07-spin-count-trend", true, ""};
  const SpinSystem sys = chain_system(6, kChainCoupling);
  const SweepResult sw = run_spin_count_sweep(sys, {1, 2, 3, 4, 5, 6}, RunMode::Collapsed,
                                              0, 0, ExperimentTimings{}, ctx.workers);
  sweep_out = sw;

  // register the sweep's experiments for the Parseval/symmetry pass (loops
  // 1, 3, 5 are already in from the selection-rule check)
  for (int loops : {2, 4, 6}) {
    ctx.oned(sys, Axis::Z, loops, RunMode::Collapsed, "sweep-z-l" + std::to_string(loops));
    ctx.oned(sys, Axis::X, loops, RunMode::Collapsed, "sweep-x-l" + std::to_string(loops));
  }

  bool widths_ordered = true;
  bool monotone = true;
  for (size_t k = 0; k < sw.points.size(); ++k) {
    if (!(sw.points[k].x.sigma < sw.points[k].z.sigma)) widths_ordered = false;
    if (k > 0) {
      if (sw.points[k].z.n_eff < sw.points[k - 1].z.n_eff - 1e-9) monotone = false;
      if (sw.points[k].x.n_eff < sw.points[k - 1].x.n_eff - 1e-9) monotone = false;
    }
  }
  const bool slope_ok = sw.slope >= kSlopeLow && sw.slope <= kSlopeHigh;
  out.pass = widths_ordered && monotone && slope_ok;
  out.detail = "slope " + fmt(sw.slope) + " in [" + fmt(kSlopeLow) + ", " + fmt(kSlopeHigh) +
               "]: " + (slope_ok ? "yes" : "NO") +
               "; sigma_x < sigma_z: " + (widths_ordered ? "yes" : "NO") +
               "; N_eff non-decreasing: " + (monotone ? "yes" : "NO");
  return out;
}

// --------------------------------------------------------------------------
// 8. average-Hamiltonian validation of the pulsed cycles
// --------------------------------------------------------------------------

CheckResult check_aht(SuiteContext&, AhtResult& aht_out) {
  CheckResult out{"08-aht-cycle-validation", true, ""};
  const SpinSystem sys = random_system(4, 2000.0, 7);

  const AhtResult ideal = run_aht_check(sys, {1.0, 0.5}, true, ExperimentTimings{});
  const AhtResult finite = run_aht_check(sys, {1.0, 0.5}, false, ExperimentTimings{});
  aht_out = ideal;

  const double r1 = ideal.points[0].fit_16.residual;
  const double r2 = ideal.points[1].fit_16.residual;
  const bool halving_ok = r2 <= r1 / kAhtHalvingFactor;
  bool supercycle_ok = true;
  for (const AhtResult* r : {&ideal, &finite})
    for (const AhtPoint& pt : r->points)
      if (pt.fit_16.residual > pt.fit_8.residual * (1.0 + 1e-9)) supercycle_ok = false;
  const double c = ideal.points[0].fit_16.scale;
  const bool scale_ok = c > -0.55 && c < -0.45;

  out.pass = halving_ok && supercycle_ok && scale_ok;
  out.detail = "c = " + fmt(c) + ", residual " + fmt(r1) + " -> " + fmt(r2) +
               " on halving (need x" + fmt(kAhtHalvingFactor) +
               "), 16-pulse <= 8-pulse: " + (supercycle_ok ? "yes" : "NO");
  return out;
}

// --------------------------------------------------------------------------
// 9. secularity of the z spectrum and the dipolar decay
// --------------------------------------------------------------------------

CheckResult check_secularity_decay(SuiteContext& ctx, DecayResult& decay_out) {
  CheckResult out{"09-secularity-and-decay", true, ""};
  const SpinSystem sys = chain_system(6, kDecayCoupling);
  const ExperimentTimings timings;

  // auto-correlation spectrum of the evolved state is invariant under the
  // secular Hamiltonian
  const Operator h_dq = dq_hamiltonian(sys);
  const Operator h_dd = secular_dipolar_hamiltonian(sys);
  const Operator rho0 = collective_op(sys.nspins, Axis::Z);
  const Operator u = propagator(h_dq, 3 * timings.cycle_time());
  const Operator rho_s = u * rho0 * u.adjoint();
  const CoherenceSpectrum ref = spectrum_from_block(rho_s, Axis::Z);
  double worst_invariance = 0.0;
  for (double t : {2.0e-4, 8.0e-4}) {
    const Operator v = propagator(h_dd, t);
    const CoherenceSpectrum st = spectrum_from_block(Operator(v * rho_s * v.adjoint()), Axis::Z);
    for (int n = -ref.n_max; n <= ref.n_max; ++n)
      worst_invariance =
          std::max(worst_invariance, std::abs(st.at(n) - ref.at(n)) / ref.total);
  }

  DecayParams p;
  p.prep_loops = 3;
  p.times = {0.0, 2.5e-4, 5.0e-4, 7.5e-4, 1.0e-3, 1.25e-3, 1.5e-3};
  p.workers = ctx.workers;
  const DecayResult decay = run_dipolar_decay(sys, p);
  decay_out = decay;

  const bool decays = decay.normalized.back() < kDecayFloor;

  // at least two x-order contributions must attenuate differently
  double best_split = 0.0;
  for (size_t a = 0; a < decay.x_orders.size(); ++a) {
    if (std::abs(decay.contributions[a][0]) < 1e-9 * std::abs(decay.zero_quantum[0])) continue;
    for (size_t b = a + 1; b < decay.x_orders.size(); ++b) {
      if (std::abs(decay.contributions[b][0]) < 1e-9 * std::abs(decay.zero_quantum[0])) continue;
      for (size_t t = 1; t < decay.times.size(); ++t) {
        const double ca = decay.contributions[a][t] / decay.contributions[a][0];
        const double cb = decay.contributions[b][t] / decay.contributions[b][0];
        best_split = std::max(best_split, std::abs(ca - cb));
      }
    }
  }

  out.pass = worst_invariance < kSecularityTol && decays &&
             best_split > kContribSplit && decay.sum_check_error < kSumCheckTol;
  out.detail = "z-spectrum invariance " + fmt(worst_invariance) + "; final/initial " +
               fmt(decay.normalized.back()) + " (< " + fmt(kDecayFloor) +
               "); contribution split " + fmt(best_split) + "; sum check " +
               fmt(decay.sum_check_error);
  return out;
}

// --------------------------------------------------------------------------
// 10. byte determinism across worker counts
// --------------------------------------------------------------------------

struct Bundle {
  std::vector<std::pair<std::string, std::string>> files;  // name -> content
};

Bundle standard_bundle(int workers) {
  Bundle b;
  const SpinSystem sys = chain_system(6, kChainCoupling);

  ExperimentConfig cfg;
  cfg.system.preset = "chain-6";
  cfg.system.coupling = kChainCoupling;
  cfg.kinds = {ExperimentKind::OneDZ, ExperimentKind::OneDX};
  cfg.loops = {1, 3, 5};
  const nlohmann::json echo = cfg.echo();

  for (int loops : {1, 3, 5}) {
    for (Axis basis : {Axis::Z, Axis::X}) {
      OneDParams p;
      p.basis = basis;
      p.loops = loops;
      p.workers = workers;
      const OneDResult r = run_1d(sys, p);
      const std::string stem = std::string("selftest_oned_") +
                               (basis == Axis::Z ? "z" : "x") + "_loops" +
                               std::to_string(loops);
      b.files.emplace_back(stem + ".csv", oned_csv(r));
      b.files.emplace_back(stem + ".json", oned_json(r, echo));
    }
  }

  TwoDParams p2;
  p2.loops = 3;
  p2.n_max = 8;
  p2.k_phi = 17;
  p2.k_beta = 17;
  p2.workers = workers;
  ExperimentConfig cfg2 = cfg;
  cfg2.kinds = {ExperimentKind::TwoD};
  cfg2.loops = {3};
  cfg2.n_max = 8;
  cfg2.k_phi = 17;
  cfg2.k_beta = 17;
  const TwoDResult r2 = run_2d(sys, p2);
  b.files.emplace_back("selftest_twod.csv", twod_csv(r2));
  b.files.emplace_back("selftest_twod.json", twod_json(r2, cfg2.echo()));

  const SpinSystem dsys = chain_system(6, kDecayCoupling);
  DecayParams pd;
  pd.prep_loops = 3;
  pd.times = {0.0, 5.0e-4, 1.0e-3, 1.5e-3};
  pd.workers = workers;
  ExperimentConfig cfgd;
  cfgd.system.preset = "chain-6";
  cfgd.system.coupling = kDecayCoupling;
  cfgd.kinds = {ExperimentKind::Decay};
  cfgd.decay_times = pd.times;
  const DecayResult rd = run_dipolar_decay(dsys, pd);
  b.files.emplace_back("selftest_decay.csv", decay_csv(rd));
  b.files.emplace_back("selftest_decay.json", decay_json(rd, cfgd.echo()));

  const SweepResult rs = run_spin_count_sweep(sys, {1, 2, 3, 4, 5, 6}, RunMode::Collapsed,
                                              0, 0, ExperimentTimings{}, workers);
  ExperimentConfig cfgs = cfg;
  cfgs.kinds = {ExperimentKind::SpinCountSweep};
  cfgs.loops = {1, 2, 3, 4, 5, 6};
  b.files.emplace_back("selftest_spin_count.csv", sweep_csv(rs));
  b.files.emplace_back("selftest_spin_count.json", sweep_json(rs, cfgs.echo()));

  return b;
}

CheckResult check_determinism(const std::string& out_dir) {
  CheckResult out{"10-worker-determinism", true, ""};
  const Bundle one = standard_bundle(1);
  const Bundle eight = standard_bundle(8);

  size_t mismatches = 0;
  for (size_t k = 0; k < one.files.size(); ++k)
    if (one.files[k].second != eight.files[k].second) ++mismatches;

  out.pass = mismatches == 0 && one.files.size() == eight.files.size();
  out.detail = std::to_string(one.files.size()) + " files from workers {1, 8}: " +
               (out.pass ? "byte-identical" : std::to_string(mismatches) + " differ");

  if (!out_dir.empty())
    for (const auto& [name, content] : eight.files)
      write_text_file(out_dir + "/" + name, content);
  return out;
}

}  // namespace

std::vector<CheckResult> run_selftest(int workers, const std::string& out_dir) {
  SuiteContext ctx;
  ctx.workers = workers;

  std::vector<CheckResult> results;
  results.push_back(check_selection_rules(ctx));
  results.push_back(check_two_spin_oracle(ctx));
  results.push_back(check_dual_route(ctx));
  results.push_back(check_network_equivalence(ctx));

  SweepResult sweep;
  AhtResult aht;
  DecayResult decay;
  CheckResult twod = check_twod_consistency(ctx);
  CheckResult trend = check_spin_count_trend(ctx, sweep);
  CheckResult aht_check = check_aht(ctx, aht);
  CheckResult secularity = check_secularity_decay(ctx, decay);

  // runs from every check above feed the Parseval/symmetry sweep
  results.push_back(check_parseval_symmetry(ctx));
  results.push_back(std::move(twod));
  results.push_back(std::move(trend));
  results.push_back(std::move(aht_check));
  results.push_back(std::move(secularity));
  results.push_back(check_determinism(out_dir));

  if (!out_dir.empty()) {
    ExperimentConfig cfg;
    cfg.system.preset = "random-4";
    cfg.system.coupling = 2000.0;
    cfg.system.seed = 7;
    cfg.kinds = {ExperimentKind::AhtCheck};
    cfg.coupling_scales = {1.0, 0.5};
    write_text_file(out_dir + "/selftest_aht.csv", aht_csv(aht));
    write_text_file(out_dir + "/selftest_aht.json", aht_json(aht, cfg.echo()));
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

}  // namespace mqsim
