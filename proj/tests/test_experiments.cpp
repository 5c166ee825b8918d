#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mqsim/experiments.hpp"

#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace mqsim;

namespace {
constexpr double kPi = std::numbers::pi;

double high_order_fraction(const CoherenceSpectrum& s, int from) {
  double acc = 0.0;
  for (int n = -s.n_max; n <= s.n_max; ++n)
    if (std::abs(n) >= from) acc += s.at(n);
  return acc / s.total;
}
}  // namespace

TEST_CASE("zero preparation time gives the initial coherence content") {
  const SpinSystem sys = chain_system(4, 700.0);

  OneDParams p;
  p.loops = 0;
  const OneDResult z = run_1d(sys, p);
  CHECK(z.spectrum.at(0) == doctest::Approx(z.state_purity).epsilon(1e-12));
  for (int n = -z.spectrum.n_max; n <= z.spectrum.n_max; ++n)
    if (n != 0) CHECK(z.spectrum.at(n) == 0.0);

  p.basis = Axis::X;
  const OneDResult x = run_1d(sys, p);
  CHECK(x.spectrum.at(1) == doctest::Approx(x.state_purity / 2.0).epsilon(1e-12));
  CHECK(x.spectrum.at(-1) == doctest::Approx(x.state_purity / 2.0).epsilon(1e-12));
  CHECK(high_order_fraction(x.spectrum, 2) < 1e-12);
}

TEST_CASE("signal starts at the state purity and the spectrum is symmetric") {
  const SpinSystem sys = chain_system(4, 700.0);
  OneDParams p;
  p.loops = 3;
  for (Axis basis : {Axis::Z, Axis::X}) {
    p.basis = basis;
    const OneDResult r = run_1d(sys, p);
    CHECK(r.signal.front() == doctest::Approx(r.state_purity).epsilon(1e-10));
    CHECK(r.parseval_error < 1e-10);
    CHECK(r.symmetry_error < 1e-10);
    CHECK(r.reality_error < 1e-12);
    CHECK(r.tau == doctest::Approx(3 * p.timings.cycle_time()));
  }
}

TEST_CASE("parity selection and growth with preparation time") {
  const SpinSystem sys = chain_system(4, 700.0);
  OneDParams p;
  double prev_z = -1.0, prev_x = -1.0;
  for (int loops : {1, 3, 5}) {
    p.loops = loops;
    p.basis = Axis::Z;
    const OneDResult z = run_1d(sys, p);
    p.basis = Axis::X;
    const OneDResult x = run_1d(sys, p);
    for (int n = -z.spectrum.n_max; n <= z.spectrum.n_max; ++n) {
      if (std::abs(n) % 2 == 1) CHECK(z.spectrum.at(n) < 1e-12 * z.spectrum.total);
      if (std::abs(n) % 2 == 0) CHECK(x.spectrum.at(n) < 1e-12 * x.spectrum.total);
    }
    const double hz = high_order_fraction(z.spectrum, 2);
    const double hx = high_order_fraction(x.spectrum, 3);
    CHECK(hz > prev_z);
    CHECK(hx > prev_x);
    prev_z = hz;
    prev_x = hx;
  }
}

TEST_CASE("network mode reproduces the collapsed functional") {
  const SpinSystem sys = chain_system(4, 700.0);
  OneDParams p;
  p.loops = 2;
  for (Axis basis : {Axis::Z, Axis::X}) {
    p.basis = basis;
    p.mode = RunMode::Collapsed;
    const OneDResult col = run_1d(sys, p);
    p.mode = RunMode::Network;
    const OneDResult net = run_1d(sys, p);
    for (size_t k = 0; k < col.signal.size(); ++k)
      CHECK(std::abs(col.signal[k] - net.signal[k]) < 1e-10 * col.state_purity);
  }
}

TEST_CASE("sampling violations are rejected") {
  const SpinSystem sys = chain_system(4, 700.0);
  OneDParams p;
  p.loops = 1;
  p.k_phi = 4;  // below Nyquist for n_max = 4
  CHECK_THROWS_WITH_AS(run_1d(sys, p), doctest::Contains("Nyquist"),
                       std::invalid_argument);

  // network mode takes whole cycles only
  OneDParams pn;
  pn.tau = 1e-5;
  pn.mode = RunMode::Network;
  CHECK_THROWS_AS(run_1d(sys, pn), std::invalid_argument);

  OneDParams both;
  both.loops = 1;
  both.tau = 1e-5;
  CHECK_THROWS_AS(run_1d(sys, both), std::invalid_argument);
}

TEST_CASE("2D experiment at zero preparation is confined to (x +-1, z 0)") {
  const SpinSystem sys = chain_system(4, 700.0);
  TwoDParams p;
  p.loops = 0;
  p.n_max = 4;
  p.k_phi = 9;
  p.k_beta = 9;
  const TwoDResult r = run_2d(sys, p);
  for (int nx = -4; nx <= 4; ++nx)
    for (int nz = -4; nz <= 4; ++nz) {
      const double v = std::abs(r.order_map(nx + 4, nz + 4));
      if (std::abs(nx) == 1 && nz == 0)
        CHECK(v == doctest::Approx(r.state_purity / 2.0).epsilon(1e-10));
      else
        CHECK(v < 1e-12 * r.state_purity);
    }
}

TEST_CASE("2D marginals match the 1D spectra and the swap identity holds") {
  const SpinSystem sys = chain_system(4, 700.0);
  TwoDParams p;
  p.loops = 2;
  p.n_max = 4;
  p.k_phi = 9;
  p.k_beta = 9;
  const TwoDResult r = run_2d(sys, p);

  OneDParams p1;
  p1.loops = 2;
  p1.n_max = 4;
  p1.k_phi = 9;
  p1.basis = Axis::Z;
  const OneDResult oz = run_1d(sys, p1);
  p1.basis = Axis::X;
  const OneDResult ox = run_1d(sys, p1);

  const CoherenceSpectrum mz = r.marginal_z();
  const CoherenceSpectrum mx = r.marginal_x();
  for (int n = -4; n <= 4; ++n) {
    CHECK(std::abs(mz.at(n) - oz.spectrum.at(n)) < 1e-10 * r.state_purity);
    CHECK(std::abs(mx.at(n) - ox.spectrum.at(n)) < 1e-10 * r.state_purity);
  }

  TwoDParams ps = p;
  ps.swapped = true;
  const TwoDResult rs = run_2d(sys, ps);
  CHECK((r.signal - rs.signal).cwiseAbs().maxCoeff() < 1e-10 * r.state_purity);
}

TEST_CASE("wide 2D encoding at the Nyquist boundary") {
  // orders to +-12 with 24 phase steps per 2 pi; the edge orders share a
  // Nyquist bin, which carries no weight here since nothing reaches it
  const SpinSystem sys = chain_system(4, 700.0);
  TwoDParams p;
  p.loops = 3;
  p.n_max = 12;
  p.k_phi = 24;
  p.k_beta = 24;
  const TwoDResult r = run_2d(sys, p);

  OneDParams p1;
  p1.loops = 3;
  p1.n_max = 12;
  p1.k_phi = 24;
  p1.basis = Axis::Z;
  const OneDResult oz = run_1d(sys, p1);
  const CoherenceSpectrum mz = r.marginal_z();
  for (int n = -12; n <= 12; ++n)
    CHECK(std::abs(mz.at(n) - oz.spectrum.at(n)) < 1e-10 * r.state_purity);
  // a four-spin state cannot populate orders past +-4
  for (int n = 5; n <= 12; ++n) {
    CHECK(std::abs(mz.at(n)) < 1e-12 * r.state_purity);
    CHECK(std::abs(mz.at(-n)) < 1e-12 * r.state_purity);
  }
}

TEST_CASE("decay run normalises to the first point and resolves x orders") {
  const SpinSystem sys = chain_system(4, 8000.0);
  DecayParams p;
  p.prep_loops = 3;
  p.times = {0.0, 2e-4, 6e-4};
  const DecayResult r = run_dipolar_decay(sys, p);
  CHECK(r.normalized.front() == doctest::Approx(1.0));
  CHECK(r.sum_check_error < 1e-10);
  CHECK(r.times.size() == 3);
  CHECK(r.contributions.size() == size_t(sys.nspins) + 1);

  DecayParams empty;
  CHECK_THROWS_AS(run_dipolar_decay(sys, empty), std::invalid_argument);
}

TEST_CASE("gaussian fit recovers its own model") {
  for (int parity : {0, 1}) {
    CoherenceSpectrum spec;
    spec.axis = parity == 0 ? Axis::Z : Axis::X;
    spec.resize(8);
    const double sigma = 2.0;
    for (int n = -8; n <= 8; ++n)
      if (std::abs(n) % 2 == parity)
        spec.at(n) = 3.5 * std::exp(-n * n / (2.0 * sigma * sigma));
    for (double v : spec.intensity) spec.total += v;

    const GaussianFit fit = gaussian_fit(spec);
    CHECK(fit.parity == parity);
    CHECK(fit.sigma == doctest::Approx(sigma).epsilon(1e-6));
    CHECK(fit.n_eff == doctest::Approx(2.0 * sigma * sigma).epsilon(1e-6));
    CHECK(fit.residual < 1e-8);
  }
}

TEST_CASE("degenerate spectra cannot be fitted") {
  CoherenceSpectrum single;
  single.resize(4);
  single.at(0) = 1.0;
  single.total = 1.0;
  CHECK_THROWS_AS(gaussian_fit(single), std::invalid_argument);

  CoherenceSpectrum pair;
  pair.resize(4);
  pair.at(1) = 0.5;
  pair.at(-1) = 0.5;
  pair.total = 1.0;
  CHECK_THROWS_AS(gaussian_fit(pair), std::invalid_argument);
}

TEST_CASE("slope fit is exact on collinear points") {
  CHECK(slope_fit({{1.0, 0.5}, {2.0, 1.0}, {3.0, 1.5}}) == doctest::Approx(0.5));
  CHECK(slope_fit({{0.0, 1.0}, {2.0, 2.0}}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(slope_fit({{1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(slope_fit({{1.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("sweep produces ordered widths on the chain preset") {
  const SpinSystem sys = chain_system(4, 700.0);
  const SweepResult sw = run_spin_count_sweep(sys, {1, 2, 3}, RunMode::Collapsed, 0, 0,
                                              ExperimentTimings{}, 1);
  CHECK(sw.points.size() == 3);
  for (const SweepPoint& pt : sw.points) {
    CHECK(pt.z.sigma > 0.0);
    CHECK(pt.x.sigma > 0.0);
    CHECK(pt.x.sigma < pt.z.sigma);
  }
  CHECK(std::isfinite(sw.slope));
}

TEST_CASE("cycle validation converges to the double-quantum form") {
  const SpinSystem sys = random_system(3, 2000.0, 19);
  const AhtResult r = run_aht_check(sys, {1.0, 0.5}, true, ExperimentTimings{});
  CHECK(r.points.size() == 2);
  CHECK(r.points[0].fit_16.scale == doctest::Approx(-0.5).epsilon(0.02));
  CHECK(r.points[1].fit_16.residual < r.points[0].fit_16.residual / 3.0);
  CHECK(r.points[0].fit_16.residual <= r.points[0].fit_8.residual * (1.0 + 1e-9));
}
