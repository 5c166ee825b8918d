#pragma once

#include "mqsim/coherence.hpp"
#include "mqsim/hamiltonians.hpp"
#include "mqsim/sequence.hpp"
#include "mqsim/spin_system.hpp"

#include <utility>
#include <vector>

namespace mqsim {

/// Pulse-cycle timings shared by all experiments.
struct ExperimentTimings {
  double delta = 1.3e-6;     // s
  double t_pulse = 0.51e-6;  // s
  double cycle_time() const { return dq16_cycle_time(delta, t_pulse); }
};

/// Collapsed mode evaluates the measurement functional directly on the
/// prepared state; network mode executes the full encoding pulse program
/// with ideal pulses and detects the collective z magnetisation.  The two
/// agree for ideal pulses and an identity time-suspension block.
enum class RunMode { Collapsed, Network };

struct OneDParams {
  Axis basis = Axis::Z;  // Z or X encoding
  int loops = -1;        // preparation = loops x cycle_time when >= 0
  double tau = -1.0;     // direct preparation time (collapsed mode only)
  RunMode mode = RunMode::Collapsed;
  int k_phi = 0;   // 0: default from n_max
  int n_max = 0;   // 0: number of spins
  ExperimentTimings timings;
  int workers = 1;
};

struct OneDResult {
  Axis basis = Axis::Z;
  RunMode mode = RunMode::Collapsed;
  int loops = -1;
  double tau = 0.0;
  double state_purity = 0.0;  // Tr[rho_s^2]
  std::vector<double> phi;
  std::vector<double> signal;
  CoherenceSpectrum spectrum;
  double parseval_error = 0.0;  // |sum I - Tr[rho_s^2]| / Tr[rho_s^2]
  double symmetry_error = 0.0;  // max |I(n) - I(-n)| / total
  double reality_error = 0.0;   // max imaginary residue / Tr[rho_s^2]
};

OneDResult run_1d(const SpinSystem& sys, const OneDParams& p);

struct TwoDParams {
  int loops = -1;
  double tau = -1.0;
  int k_phi = 0;
  int k_beta = 0;
  int n_max = 0;
  bool swapped = false;  // evaluate the (-beta_z)(-phi_x) ordering instead
  ExperimentTimings timings;
  int workers = 1;
};

struct TwoDResult {
  int loops = -1;
  double tau = 0.0;
  double state_purity = 0.0;
  int n_max = 0;
  std::vector<double> phi;
  std::vector<double> beta;
  Eigen::MatrixXd signal;     // k_phi x k_beta
  Eigen::MatrixXd order_map;  // (2 n_max + 1)^2; row = x order, col = z order
  double reality_error = 0.0;

  CoherenceSpectrum marginal_x() const;  // summed over z orders
  CoherenceSpectrum marginal_z() const;  // summed over x orders
};

TwoDResult run_2d(const SpinSystem& sys, const TwoDParams& p);

struct DecayParams {
  int prep_loops = 3;
  double prep_tau = -1.0;
  std::vector<double> times;  // s; the first entry anchors the normalisation
  int k_phi = 0;
  ExperimentTimings timings;
  int workers = 1;
};

/// Evolved-versus-prepared correlation under the secular dipolar
/// Hamiltonian: signal(phi; t) = Tr[R_z(-phi) rho(t) R_z(phi) rho_s].  The
/// zero-quantum component decays while the auto-correlation of rho(t) with
/// itself would be constant by secularity.
struct DecayResult {
  std::vector<double> times;
  std::vector<double> zero_quantum;  // raw correlation values
  std::vector<double> normalized;    // zero_quantum / zero_quantum.front()
  std::vector<int> x_orders;         // |n| = 0..N
  // contributions[k][t]: x-order x_orders[k] part of the zero-quantum signal
  std::vector<std::vector<double>> contributions;
  double sum_check_error = 0.0;  // max |sum_k contrib - zero_quantum| relative
};

DecayResult run_dipolar_decay(const SpinSystem& sys, const DecayParams& p);

// ---------------------------------------------------------------------------
// spin counting
// ---------------------------------------------------------------------------

struct GaussianFit {
  double amplitude = 0.0;
  double sigma = 0.0;     // coherence-order units
  double n_eff = 0.0;     // 2 sigma^2
  double residual = 0.0;  // ||model - data|| / ||data||
  int parity = 0;         // orders used: 0 even, 1 odd
};

/// Least-squares fit of intensity(n) to A exp(-n^2 / (2 sigma^2)) over the
/// populated parity only (structurally forbidden orders are excluded).
/// Throws when fewer than three orders of that parity carry intensity.
GaussianFit gaussian_fit(const CoherenceSpectrum& spec);

/// Unweighted ordinary-least-squares slope of N_x against N_z.
double slope_fit(const std::vector<std::pair<double, double>>& nz_nx);

struct SweepPoint {
  int loops = 0;
  double tau = 0.0;
  GaussianFit z;
  GaussianFit x;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  double slope = 0.0;
};

SweepResult run_spin_count_sweep(const SpinSystem& sys, const std::vector<int>& loops,
                                 RunMode mode, int k_phi, int n_max,
                                 const ExperimentTimings& timings, int workers);

// ---------------------------------------------------------------------------
// average-Hamiltonian validation of the pulsed cycles
// ---------------------------------------------------------------------------

struct AhtPoint {
  double coupling_scale = 1.0;
  double cycle_time_16 = 0.0;
  ScaleFit fit_16;
  ScaleFit fit_8;
};

struct AhtResult {
  bool ideal = true;
  std::vector<AhtPoint> points;
};

/// Extracts the effective Hamiltonian of the 16- and 8-pulse cycles at each
/// coupling scale and fits it against the double-quantum Hamiltonian.
AhtResult run_aht_check(const SpinSystem& sys, const std::vector<double>& scales,
                        bool ideal, const ExperimentTimings& timings);

}  // namespace mqsim
