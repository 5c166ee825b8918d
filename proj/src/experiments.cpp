#include "mqsim/experiments.hpp"

#include "mqsim/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace mqsim {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kImag(0.0, 1.0);

int order_of(int nspins, Eigen::Index r, Eigen::Index c) {
  return static_cast<int>(std::lround(mz_of_state(nspins, c) - mz_of_state(nspins, r)));
}

double resolve_tau(int loops, double tau, const ExperimentTimings& t, bool allow_tau) {
  if (loops >= 0 && tau >= 0.0)
    throw std::invalid_argument("give either a loop count or a preparation time, not both");
  if (loops >= 0) return loops * t.cycle_time();
  if (tau >= 0.0) {
    if (!allow_tau)
      throw std::invalid_argument("network mode is parameterised by whole cycles; use loops");
    return tau;
  }
  throw std::invalid_argument("a loop count or preparation time is required");
}

struct PreparedState {
  int nspins = 0;
  int loops = -1;
  double tau = 0.0;
  Operator rho_s;
  Operator h_dq;
  double purity = 0.0;
};

PreparedState prepare_dq_state(const SpinSystem& sys, int loops, double tau,
                               const ExperimentTimings& timings, bool allow_tau = true) {
  sys.validate();
  PreparedState st;
  st.nspins = sys.nspins;
  st.loops = loops >= 0 ? loops : -1;
  st.tau = resolve_tau(loops, tau, timings, allow_tau);
  st.h_dq = dq_hamiltonian(sys);
  const Operator rho0 = collective_op(sys.nspins, Axis::Z);
  const Operator u = propagator(st.h_dq, st.tau);
  st.rho_s = u * rho0 * u.adjoint();
  st.purity = st.rho_s.cwiseAbs2().sum();
  return st;
}

Complex correlate(const Operator& a, const Operator& b) {
  // Tr[a b]
  return (a.array() * b.transpose().array()).sum();
}

void check_sampling(int k, int n_max, const char* what) {
  if (n_max < 1) throw std::invalid_argument("order range must be >= 1");
  if (k < 2 * n_max)
    throw std::invalid_argument(std::string(what) + ": " + std::to_string(k) +
                                " phase samples cannot encode orders to +-" +
                                std::to_string(n_max) + " (Nyquist needs >= " +
                                std::to_string(2 * n_max) + ")");
}

void check_present_orders(const Operator& rho, Axis axis, int k, const char* what) {
  const int n_pres = max_order_present(rho, axis);
  if (k < 2 * n_pres)
    throw std::invalid_argument(std::string(what) + ": state carries order " +
                                std::to_string(n_pres) + "; " + std::to_string(k) +
                                " samples alias it");
}

double spectrum_symmetry_error(const CoherenceSpectrum& spec) {
  if (spec.total == 0.0) return 0.0;
  double dev = 0.0;
  for (int n = 1; n <= spec.n_max; ++n)
    dev = std::max(dev, std::abs(spec.at(n) - spec.at(-n)));
  return dev / spec.total;
}

}  // namespace

// ---------------------------------------------------------------------------
// 1D encoding experiments
// ---------------------------------------------------------------------------

OneDResult run_1d(const SpinSystem& sys, const OneDParams& p) {
  if (p.basis == Axis::Y)
    throw std::invalid_argument("1D encoding experiments use the z or x basis");
  const PreparedState st =
      prepare_dq_state(sys, p.loops, p.tau, p.timings, p.mode == RunMode::Collapsed);

  const int n_max = p.n_max > 0 ? p.n_max : st.nspins;
  const int k_phi = p.k_phi > 0 ? p.k_phi : default_phase_samples(n_max);
  check_sampling(k_phi, n_max, "run_1d");
  check_present_orders(st.rho_s, p.basis, k_phi, "run_1d");

  OneDResult res;
  res.basis = p.basis;
  res.mode = p.mode;
  res.loops = st.loops;
  res.tau = st.tau;
  res.state_purity = st.purity;
  res.phi.resize(static_cast<size_t>(k_phi));
  res.signal.resize(static_cast<size_t>(k_phi));

  std::vector<double> imag_residue(static_cast<size_t>(k_phi), 0.0);

  if (p.mode == RunMode::Collapsed) {
    parallel_for(k_phi, p.workers, [&](int k) {
      const double phi = 2.0 * kPi * k / k_phi;
      const Operator rm = rotation(st.nspins, p.basis, -phi);
      const Operator a = rm * st.rho_s * rm.adjoint();
      const Complex s = correlate(a, st.rho_s);
      res.phi[static_cast<size_t>(k)] = phi;
      res.signal[static_cast<size_t>(k)] = s.real();
      imag_residue[static_cast<size_t>(k)] = std::abs(s.imag());
    });
  } else {
    // Encoding network with ideal pulses: U_phi, the basis-transform pulse
    // pair around the (identity) time-suspension block, then time-reversed
    // preparation; detect collective z magnetisation.  U^dag is realised by
    // shifting the preparation phase by pi/2, which negates the
    // double-quantum Hamiltonian.
    HamiltonianTable hams;
    hams.emplace("internal", secular_dipolar_hamiltonian(sys));
    hams.emplace("dq", st.h_dq);
    hams.emplace("dq-rev", Operator(-st.h_dq));
    const Operator rho0 = collective_op(st.nspins, Axis::Z);
    const Operator detect = collective_op(st.nspins, Axis::Z);

    parallel_for(k_phi, p.workers, [&](int k) {
      const double phi = 2.0 * kPi * k / k_phi;
      PulseSequence seq;
      seq.name = p.basis == Axis::Z ? "oned-z-network" : "oned-x-network";
      seq.events.push_back(PulseEvent::z_rotation(phi));
      seq.events.push_back(PulseEvent::delay(st.tau, "dq"));
      seq.events.push_back(PulseEvent::z_rotation(-phi));
      const double first_pulse_phase = kPi / 2.0 + (p.basis == Axis::X ? phi : 0.0);
      seq.events.push_back(PulseEvent::pulse(kPi / 2.0, first_pulse_phase));
      // 48-pulse time-suspension block: identity propagator, omitted
      seq.events.push_back(PulseEvent::pulse(kPi / 2.0, -kPi / 2.0));
      seq.events.push_back(PulseEvent::delay(st.tau, "dq-rev"));

      const Operator rho_f = run_sequence(seq, rho0, hams);
      const Complex s = correlate(rho_f, detect);
      res.phi[static_cast<size_t>(k)] = phi;
      res.signal[static_cast<size_t>(k)] = s.real();
      imag_residue[static_cast<size_t>(k)] = std::abs(s.imag());
    });
  }

  res.spectrum = spectrum_from_phase_signal(res.signal, p.basis, n_max);
  res.parseval_error = std::abs(res.spectrum.total - st.purity) / st.purity;
  res.symmetry_error = spectrum_symmetry_error(res.spectrum);
  for (double r : imag_residue) res.reality_error = std::max(res.reality_error, r / st.purity);
  return res;
}

// ---------------------------------------------------------------------------
// 2D correlation experiment
// ---------------------------------------------------------------------------

CoherenceSpectrum TwoDResult::marginal_x() const {
  CoherenceSpectrum spec;
  spec.axis = Axis::X;
  spec.resize(n_max);
  for (int nx = -n_max; nx <= n_max; ++nx) {
    double acc = 0.0;
    for (int nz = -n_max; nz <= n_max; ++nz) acc += order_map(nx + n_max, nz + n_max);
    spec.at(nx) = acc;
  }
  for (double v : spec.intensity) spec.total += v;
  return spec;
}

CoherenceSpectrum TwoDResult::marginal_z() const {
  CoherenceSpectrum spec;
  spec.axis = Axis::Z;
  spec.resize(n_max);
  for (int nz = -n_max; nz <= n_max; ++nz) {
    double acc = 0.0;
    for (int nx = -n_max; nx <= n_max; ++nx) acc += order_map(nx + n_max, nz + n_max);
    spec.at(nz) = acc;
  }
  for (double v : spec.intensity) spec.total += v;
  return spec;
}

TwoDResult run_2d(const SpinSystem& sys, const TwoDParams& p) {
  const PreparedState st = prepare_dq_state(sys, p.loops, p.tau, p.timings);

  const int n_max = p.n_max > 0 ? p.n_max : st.nspins;
  const int k_phi = p.k_phi > 0 ? p.k_phi : default_phase_samples(n_max);
  const int k_beta = p.k_beta > 0 ? p.k_beta : default_phase_samples(n_max);
  check_sampling(k_phi, n_max, "run_2d (phi)");
  check_sampling(k_beta, n_max, "run_2d (beta)");
  check_present_orders(st.rho_s, Axis::X, k_phi, "run_2d (phi)");
  check_present_orders(st.rho_s, Axis::Z, k_beta, "run_2d (beta)");

  TwoDResult res;
  res.loops = st.loops;
  res.tau = st.tau;
  res.state_purity = st.purity;
  res.n_max = n_max;
  res.phi.resize(static_cast<size_t>(k_phi));
  res.beta.resize(static_cast<size_t>(k_beta));
  for (int i = 0; i < k_phi; ++i) res.phi[static_cast<size_t>(i)] = 2.0 * kPi * i / k_phi;
  for (int j = 0; j < k_beta; ++j) res.beta[static_cast<size_t>(j)] = 2.0 * kPi * j / k_beta;
  res.signal.resize(k_phi, k_beta);

  const Eigen::Index dim = st.rho_s.rows();
  std::vector<double> imag_residue(static_cast<size_t>(k_phi), 0.0);

  if (!p.swapped) {
    // x encoding first; the z phase shift acts as diagonal phases, so the
    // beta dependence collapses onto the z-order components of the
    // x-rotated state
    parallel_for(k_phi, p.workers, [&](int i) {
      const Operator rm = rotation(st.nspins, Axis::X, -res.phi[static_cast<size_t>(i)]);
      const Operator a = rm * st.rho_s * rm.adjoint();
      std::vector<Complex> q(static_cast<size_t>(2 * st.nspins + 1), Complex(0, 0));
      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
          q[static_cast<size_t>(order_of(st.nspins, r, c) + st.nspins)] +=
              a(r, c) * st.rho_s(c, r);
      for (int j = 0; j < k_beta; ++j) {
        Complex s(0.0, 0.0);
        for (int m = -st.nspins; m <= st.nspins; ++m)
          s += q[static_cast<size_t>(m + st.nspins)] *
               std::exp(kImag * (m * res.beta[static_cast<size_t>(j)]));
        res.signal(i, j) = s.real();
        imag_residue[static_cast<size_t>(i)] =
            std::max(imag_residue[static_cast<size_t>(i)], std::abs(s.imag()));
      }
    });
  } else {
    // reversed ordering (-beta_z)(-phi_x)
    std::vector<Operator> b_of_beta(static_cast<size_t>(k_beta));
    for (int j = 0; j < k_beta; ++j) {
      Operator b = st.rho_s;
      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
          b(r, c) *= std::exp(-kImag * (order_of(st.nspins, r, c) *
                                        res.beta[static_cast<size_t>(j)]));
      b_of_beta[static_cast<size_t>(j)] = std::move(b);
    }
    parallel_for(k_phi, p.workers, [&](int i) {
      const Operator rp = rotation(st.nspins, Axis::X, res.phi[static_cast<size_t>(i)]);
      for (int j = 0; j < k_beta; ++j) {
        const Operator c = rp * b_of_beta[static_cast<size_t>(j)] * rp.adjoint();
        const Complex s = correlate(c, st.rho_s);
        res.signal(i, j) = s.real();
        imag_residue[static_cast<size_t>(i)] =
            std::max(imag_residue[static_cast<size_t>(i)], std::abs(s.imag()));
      }
    });
  }

  for (double r : imag_residue) res.reality_error = std::max(res.reality_error, r / st.purity);

  // 2D discrete Fourier transform with the Nyquist-bin split in each axis
  const int side = 2 * n_max + 1;
  res.order_map.setZero(side, side);
  Eigen::MatrixXcd partial(k_phi, side);  // beta transformed, phi raw
  for (int i = 0; i < k_phi; ++i) {
    for (int nz = -n_max; nz <= n_max; ++nz) {
      Complex acc(0.0, 0.0);
      for (int j = 0; j < k_beta; ++j)
        acc += res.signal(i, j) *
               std::exp(-kImag * (nz * res.beta[static_cast<size_t>(j)]));
      partial(i, nz + n_max) = acc / double(k_beta);
    }
  }
  double map_imag = 0.0;
  for (int nx = -n_max; nx <= n_max; ++nx) {
    const double wx = order_bin_weight(nx, k_phi);
    for (int nz = -n_max; nz <= n_max; ++nz) {
      const double wz = order_bin_weight(nz, k_beta);
      if (wx == 0.0 || wz == 0.0) continue;
      Complex acc(0.0, 0.0);
      for (int i = 0; i < k_phi; ++i)
        acc += partial(i, nz + n_max) *
               std::exp(-kImag * (nx * res.phi[static_cast<size_t>(i)]));
      acc /= double(k_phi);
      res.order_map(nx + n_max, nz + n_max) = wx * wz * acc.real();
      map_imag = std::max(map_imag, std::abs(acc.imag()));
    }
  }
  res.reality_error = std::max(res.reality_error, map_imag / st.purity);
  return res;
}

// ---------------------------------------------------------------------------
// dipolar decay of the zero-quantum correlation
// ---------------------------------------------------------------------------

DecayResult run_dipolar_decay(const SpinSystem& sys, const DecayParams& p) {
  if (p.times.empty()) throw std::invalid_argument("decay needs a non-empty time list");
  for (double t : p.times)
    if (!(t >= 0.0) || !std::isfinite(t))
      throw std::invalid_argument("decay times must be finite and >= 0");

  const PreparedState st = prepare_dq_state(sys, p.prep_loops, p.prep_tau, p.timings);
  const Operator h_dd = secular_dipolar_hamiltonian(sys);
  const int k_phi = p.k_phi > 0 ? p.k_phi : default_phase_samples(st.nspins);
  check_sampling(k_phi, st.nspins, "run_dipolar_decay");

  const Eigen::Index dim = st.rho_s.rows();
  const int nt = static_cast<int>(p.times.size());

  DecayResult res;
  res.times = p.times;
  res.zero_quantum.assign(static_cast<size_t>(nt), 0.0);
  for (int n = 0; n <= st.nspins; ++n) res.x_orders.push_back(n);
  res.contributions.assign(res.x_orders.size(),
                           std::vector<double>(static_cast<size_t>(nt), 0.0));

  // zero-quantum correlation of a against the prepared state
  auto zq_against_prepared = [&](const Operator& a) {
    Complex acc(0.0, 0.0);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c)
        if (order_of(st.nspins, r, c) == 0) acc += a(r, c) * st.rho_s(c, r);
    return acc;
  };

  std::vector<double> sum_err(static_cast<size_t>(nt), 0.0);
  parallel_for(nt, p.workers, [&](int ti) {
    const Operator v = propagator(h_dd, p.times[static_cast<size_t>(ti)]);
    const Operator rho_t = v * st.rho_s * v.adjoint();
    const double zq = zq_against_prepared(rho_t).real();
    res.zero_quantum[static_cast<size_t>(ti)] = zq;

    std::vector<Complex> g(static_cast<size_t>(k_phi));
    for (int k = 0; k < k_phi; ++k) {
      const double phi = 2.0 * kPi * k / k_phi;
      const Operator rm = rotation(st.nspins, Axis::X, -phi);
      g[static_cast<size_t>(k)] = zq_against_prepared(Operator(rm * rho_t * rm.adjoint()));
    }
    auto bin = [&](int order) {
      Complex acc(0.0, 0.0);
      for (int k = 0; k < k_phi; ++k) {
        const double ang = -2.0 * kPi * order * k / k_phi;
        acc += g[static_cast<size_t>(k)] * Complex(std::cos(ang), std::sin(ang));
      }
      return acc / double(k_phi);
    };
    double total = 0.0;
    for (size_t oi = 0; oi < res.x_orders.size(); ++oi) {
      const int n = res.x_orders[oi];
      Complex c = order_bin_weight(n, k_phi) * bin(n);
      if (n > 0) c += order_bin_weight(-n, k_phi) * bin(-n);
      res.contributions[oi][static_cast<size_t>(ti)] = c.real();
      total += c.real();
    }
    sum_err[static_cast<size_t>(ti)] = std::abs(total - zq);
  });

  const double anchor = res.zero_quantum.front();
  if (std::abs(anchor) < 1e-300)
    throw std::runtime_error("zero-quantum signal vanishes at the first time point");
  res.normalized.reserve(static_cast<size_t>(nt));
  for (double v : res.zero_quantum) res.normalized.push_back(v / anchor);
  for (double e : sum_err)
    res.sum_check_error = std::max(res.sum_check_error, e / std::abs(anchor));
  return res;
}

// ---------------------------------------------------------------------------
// spin counting
// ---------------------------------------------------------------------------

namespace {

double gaussian_sse(double a, double b, const std::vector<double>& n2,
                    const std::vector<double>& y) {
  double sse = 0.0;
  for (size_t k = 0; k < y.size(); ++k) {
    const double r = a * std::exp(-b * n2[k]) - y[k];
    sse += r * r;
  }
  return sse;
}

// damped Gauss-Newton on (A, b) for A exp(-b n^2)
void gaussian_refine(double& a, double& b, const std::vector<double>& n2,
                     const std::vector<double>& y) {
  double lambda = 1e-3;
  double sse = gaussian_sse(a, b, n2, y);
  for (int iter = 0; iter < 200; ++iter) {
    double jaa = 0.0, jab = 0.0, jbb = 0.0, ga = 0.0, gb = 0.0;
    for (size_t k = 0; k < y.size(); ++k) {
      const double e = std::exp(-b * n2[k]);
      const double r = a * e - y[k];
      const double ja = e;
      const double jb = -a * n2[k] * e;
      jaa += ja * ja;
      jab += ja * jb;
      jbb += jb * jb;
      ga += ja * r;
      gb += jb * r;
    }
    const double daa = jaa * (1.0 + lambda) + 1e-300;
    const double dbb = jbb * (1.0 + lambda) + 1e-300;
    const double det = daa * dbb - jab * jab;
    if (det == 0.0) break;
    const double da = (-ga * dbb + gb * jab) / det;
    const double db = (-gb * daa + ga * jab) / det;
    const double a_new = a + da;
    const double b_new = std::max(b + db, 1e-12);
    const double sse_new = gaussian_sse(a_new, b_new, n2, y);
    if (sse_new < sse) {
      a = a_new;
      b = b_new;
      if (sse - sse_new < 1e-15 * (1.0 + sse)) break;
      sse = sse_new;
      lambda = std::max(lambda * 0.3, 1e-12);
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
}

}  // namespace

GaussianFit gaussian_fit(const CoherenceSpectrum& spec) {
  if (spec.total <= 0.0) throw std::invalid_argument("cannot fit an empty spectrum");

  double even_mass = 0.0, odd_mass = 0.0;
  for (int n = -spec.n_max; n <= spec.n_max; ++n)
    (std::abs(n) % 2 == 0 ? even_mass : odd_mass) += spec.at(n);
  const int parity = even_mass >= odd_mass ? 0 : 1;

  std::vector<double> orders, n2, y;
  int populated = 0;
  std::set<int> populated_abs;
  for (int n = -spec.n_max; n <= spec.n_max; ++n) {
    if (std::abs(n) % 2 != parity) continue;
    orders.push_back(n);
    n2.push_back(double(n) * n);
    y.push_back(spec.at(n));
    if (spec.at(n) > 1e-12 * spec.total) {
      ++populated;
      populated_abs.insert(std::abs(n));
    }
  }
  if (populated < 3 || populated_abs.size() < 2)
    throw std::invalid_argument(
        "degenerate coherence distribution: need at least three populated orders "
        "spanning two distinct |n| to fit a width");

  double ymax = 0.0, ysum = 0.0, m2 = 0.0, ynorm2 = 0.0;
  for (size_t k = 0; k < y.size(); ++k) {
    ymax = std::max(ymax, y[k]);
    ysum += y[k];
    m2 += n2[k] * y[k];
    ynorm2 += y[k] * y[k];
  }

  // multi-start: second moment, successive |n| ratios, fixed widths
  std::vector<double> b_starts;
  if (m2 > 0.0) b_starts.push_back(ysum / (2.0 * m2) * 1.0);
  std::vector<int> abs_sorted(populated_abs.begin(), populated_abs.end());
  for (size_t k = 0; k + 1 < abs_sorted.size(); ++k) {
    const double n1 = abs_sorted[k], nn2 = abs_sorted[k + 1];
    const double y1 = spec.at(abs_sorted[k]);
    const double y2 = spec.at(abs_sorted[k + 1]);
    if (y1 > 0.0 && y2 > 0.0 && y1 > y2)
      b_starts.push_back(std::log(y1 / y2) / (nn2 * nn2 - n1 * n1));
  }
  for (double b0 : {0.01, 0.1, 0.5, 2.0}) b_starts.push_back(b0);

  double best_a = ymax, best_b = 1.0;
  double best_sse = std::numeric_limits<double>::infinity();
  for (double b0 : b_starts) {
    if (!(b0 > 0.0) || !std::isfinite(b0)) continue;
    double a = ymax, b = b0;
    gaussian_refine(a, b, n2, y);
    const double sse = gaussian_sse(a, b, n2, y);
    if (sse < best_sse) {
      best_sse = sse;
      best_a = a;
      best_b = b;
    }
  }

  GaussianFit fit;
  fit.amplitude = best_a;
  fit.sigma = 1.0 / std::sqrt(2.0 * best_b);
  fit.n_eff = 2.0 * fit.sigma * fit.sigma;
  fit.residual = std::sqrt(best_sse / ynorm2);
  fit.parity = parity;
  return fit;
}

double slope_fit(const std::vector<std::pair<double, double>>& nz_nx) {
  if (nz_nx.size() < 2) throw std::invalid_argument("slope fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : nz_nx) {
    mx += x;
    my += y;
  }
  mx /= double(nz_nx.size());
  my /= double(nz_nx.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : nz_nx) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct abscissae");
  return sxy / sxx;
}

SweepResult run_spin_count_sweep(const SpinSystem& sys, const std::vector<int>& loops,
                                 RunMode mode, int k_phi, int n_max,
                                 const ExperimentTimings& timings, int workers) {
  if (loops.empty()) throw std::invalid_argument("sweep needs a non-empty loop list");
  SweepResult res;
  std::vector<std::pair<double, double>> pts;
  for (int l : loops) {
    OneDParams p;
    p.loops = l;
    p.mode = mode;
    p.k_phi = k_phi;
    p.n_max = n_max;
    p.timings = timings;
    p.workers = workers;

    p.basis = Axis::Z;
    const OneDResult rz = run_1d(sys, p);
    p.basis = Axis::X;
    const OneDResult rx = run_1d(sys, p);

    SweepPoint pt;
    pt.loops = l;
    pt.tau = rz.tau;
    pt.z = gaussian_fit(rz.spectrum);
    pt.x = gaussian_fit(rx.spectrum);
    pts.emplace_back(pt.z.n_eff, pt.x.n_eff);
    res.points.push_back(pt);
  }
  res.slope = slope_fit(pts);
  return res;
}

// ---------------------------------------------------------------------------
// average-Hamiltonian validation
// ---------------------------------------------------------------------------

AhtResult run_aht_check(const SpinSystem& sys, const std::vector<double>& scales,
                        bool ideal, const ExperimentTimings& timings) {
  sys.validate();
  if (scales.empty()) throw std::invalid_argument("aht check needs coupling scales");

  AhtResult res;
  res.ideal = ideal;
  const PulseSequence cycle16 = build_dq_cycle_16(timings.delta, timings.t_pulse, ideal);
  const PulseSequence cycle8 = build_dq_cycle_8(timings.delta, timings.t_pulse, ideal);

  for (double scale : scales) {
    if (!(scale > 0.0)) throw std::invalid_argument("coupling scales must be positive");
    SpinSystem scaled = sys;
    scaled.couplings *= scale;

    const Operator h_ref = dq_hamiltonian(scaled);
    HamiltonianTable hams;
    hams.emplace("internal", secular_dipolar_hamiltonian(scaled));

    AhtPoint pt;
    pt.coupling_scale = scale;
    pt.cycle_time_16 = cycle16.cycle_time();

    const Operator u16 = sequence_propagator(cycle16, sys.nspins, hams);
    pt.fit_16 = fit_operator_scale(effective_hamiltonian(u16, cycle16.cycle_time()), h_ref);

    const Operator u8 = sequence_propagator(cycle8, sys.nspins, hams);
    pt.fit_8 = fit_operator_scale(effective_hamiltonian(u8, cycle8.cycle_time()), h_ref);

    res.points.push_back(pt);
  }
  return res;
}

}  // namespace mqsim
