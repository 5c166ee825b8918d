#pragma once

#include "mqsim/operators.hpp"

#include <map>
#include <string>
#include <vector>

namespace mqsim {

/// One event of a pulse program.  Pulses are collective rotations about an
/// axis in the transverse plane (phase measured from +x); zero duration
/// means an ideal delta pulse large-amplitude limit.  Z-rotations model
/// phase shifts of the whole following pulse group.  Delays evolve under a
/// named Hamiltonian resolved at execution time.
struct PulseEvent {
  enum class Kind { Pulse, ZRotation, Delay };

  Kind kind = Kind::Delay;
  double flip = 0.0;       // pulse flip angle, rad
  double phase = 0.0;      // pulse axis phase, rad
  double angle = 0.0;      // z-rotation angle, rad
  double duration = 0.0;   // s; for pulses 0 = ideal
  std::string hamiltonian; // delay and finite-pulse internal Hamiltonian

  static PulseEvent pulse(double flip, double phase);
  static PulseEvent finite_pulse(double flip, double phase, double duration,
                                 std::string hamiltonian = "internal");
  static PulseEvent z_rotation(double angle);
  static PulseEvent delay(double duration, std::string hamiltonian = "internal");

  /// RF amplitude (rad/s) of a finite-width pulse.
  double rf_amplitude() const;
};

struct PulseSequence {
  std::string name;
  std::vector<PulseEvent> events;

  double cycle_time() const;  // sum of event durations
};

using HamiltonianTable = std::map<std::string, Operator>;

/// U = exp(+i H t) via Hermitian eigendecomposition.
Operator propagator(const Operator& h, double t);

/// U_phi = R_z(-phi) U R_z(phi).
Operator phase_shifted(const Operator& u, double phi);

/// Total propagator of a sequence (product of event propagators, first event
/// rightmost).  Delay and finite-pulse events look up their Hamiltonian by
/// name; an unknown name is an error.
Operator sequence_propagator(const PulseSequence& seq, int nspins,
                             const HamiltonianTable& hams);

/// rho_f = U rho0 U^dag for the sequence propagator.
Operator run_sequence(const PulseSequence& seq, const Operator& rho0,
                      const HamiltonianTable& hams);
Operator run_sequence(const PulseSequence& seq, const Operator& rho0,
                      const Operator& h_internal);

/// Cycle time of the 16-pulse double-quantum cycle, 24 (delta + t_pulse).
double dq16_cycle_time(double delta, double t_pulse);

/// Eight-pulse double-quantum cycle.  Pulse pairs of phases
/// x,x,xbar,xbar,xbar,xbar,x,x (offset by phase_offset), with spacing
/// 2 delta + t_pulse inside a pair and delta between pairs.  In ideal mode
/// the pulses are delta pulses and each pulse's t_pulse budget is absorbed
/// into the adjacent delays, which makes the toggling-frame weighting exact:
/// with de = delta + t_pulse the cycle is
///   [de/2] P [2 de] P [de] P [2 de] P [de] P [2 de] P [de] P [2 de] P [de/2]
/// and zeroth-order average Hamiltonian theory gives a pure double-quantum
/// form with scale -1/2 relative to dq_hamiltonian.  The half-delays at the
/// edges make the cycle time-symmetric, cancelling the first-order term.
PulseSequence build_dq_cycle_8(double delta, double t_pulse, bool ideal,
                               double phase_offset = 0.0);

/// Sixteen-pulse cycle: the eight-pulse cycle followed by the same eight
/// pulses phase shifted by pi.  Cycle time 24 (delta + t_pulse); with the
/// Fig-timing values delta = 1.3 us, t_pulse = 0.51 us this is 43.44 us.
PulseSequence build_dq_cycle_16(double delta, double t_pulse, bool ideal);

/// Hbar = -i log(U) / t_c on the principal branch, Hermitised.  Throws when
/// any eigenphase magnitude exceeds pi (1 - 1e-6), where the branch choice
/// becomes ambiguous.
Operator effective_hamiltonian(const Operator& u, double t_c);

/// Least-squares scalar projection of h onto h_ref and the relative residual
/// ||h - c h_ref|| / ||c h_ref|| (Frobenius).
struct ScaleFit {
  double scale = 0.0;
  double residual = 0.0;
};
ScaleFit fit_operator_scale(const Operator& h, const Operator& h_ref);

}  // namespace mqsim
