#pragma once

#include "mqsim/operators.hpp"

#include <map>

namespace mqsim {

/// Coherence-order intensities of a state relative to a quantization axis.
/// intensity(n) = Tr[rho_n rho_n^dag] where rho_n collects the matrix
/// elements between axis eigenstates whose eigenvalue difference is n.  For
/// a Hermitian state the intensities sum to Tr[rho^2] and are symmetric in n.
struct CoherenceSpectrum {
  Axis axis = Axis::Z;
  int n_max = 0;
  std::vector<double> intensity;  // 2 n_max + 1 entries, order n at n + n_max
  double total = 0.0;             // recorded normalisation, sum of intensities

  double at(int n) const;
  double& at(int n);
  void resize(int new_n_max);
};

/// Collective rotation mapping the z machinery onto `axis`: the returned W
/// satisfies W^dag (sum I_z) W = sum I_axis, so the z-order blocks of
/// W rho W^dag are the axis-order blocks of rho.  Identity for z.
Operator basis_change(int nspins, Axis axis);

/// Exact block decomposition rho = sum_n rho_n by axis coherence order;
/// conjugating rho_n by rotation(axis, phi) multiplies it by exp(i n phi).
/// The map holds every order in [-N, N].
std::map<int, Operator> decompose_block(const Operator& rho, Axis axis);

/// Spectrum from the block decomposition.
CoherenceSpectrum spectrum_from_block(const Operator& rho, Axis axis);

/// Spectrum from phase encoding: S(phi_k) = Tr[R(-phi_k) rho R(phi_k) rho]
/// sampled at k_samples uniform phases over [0, 2 pi), discrete-Fourier
/// transformed over phi.  Requires k_samples >= twice the largest order
/// actually present (checked; violating it raises an aliasing error).  When
/// k_samples equals exactly twice the largest representable order the shared
/// Nyquist bin is split evenly between +n and -n.
CoherenceSpectrum decompose_phase_ft(const Operator& rho, Axis axis, int k_samples);

/// Default phase sample count: 4 n_max rounded up to a power of two.
int default_phase_samples(int n_max);

/// Weight of an order when reading a K-bin DFT: 1 inside the unambiguous
/// range, 1/2 on the shared Nyquist bin of an even K, 0 beyond.
double order_bin_weight(int order, int k_samples);

/// Order intensities of a real phase-sampled signal (uniform over [0, 2 pi))
/// by discrete Fourier transform, with the Nyquist-bin split applied.  No
/// aliasing detection; callers must sample adequately.
CoherenceSpectrum spectrum_from_phase_signal(const std::vector<double>& signal,
                                             Axis axis, int n_max);

/// Largest |order| with relative intensity above rel_tol, by block structure.
int max_order_present(const Operator& rho, Axis axis, double rel_tol = 1e-12);

/// Checks the similarity-transform relation between the bases: x-basis
/// intensities of rho measured by phase encoding against z-basis block
/// intensities of the rotated state W rho W^dag.  Returns the maximum
/// per-order deviation.
double basis_transform_check(const Operator& rho, int k_samples = 0);

}  // namespace mqsim
