#include "mqsim/sequence.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mqsim {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kImag(0.0, 1.0);

const Operator& lookup(const HamiltonianTable& hams, const std::string& name) {
  const auto it = hams.find(name);
  if (it == hams.end())
    throw std::invalid_argument("sequence references unknown Hamiltonian '" + name + "'");
  return it->second;
}

Operator transverse_rotation(int nspins, double flip, double phase) {
  // exp(i flip I_phase) with I_phase = cos(phase) Ix + sin(phase) Iy;
  // single-spin factor in closed form, then Kronecker power
  Eigen::Matrix2cd s;
  const Complex c = std::cos(flip / 2.0);
  const Complex is = kImag * std::sin(flip / 2.0);
  s(0, 0) = c;
  s(1, 1) = c;
  s(0, 1) = is * std::exp(-kImag * phase);
  s(1, 0) = is * std::exp(kImag * phase);
  Operator out = s;
  for (int k = 1; k < nspins; ++k) {
    Operator next(out.rows() * 2, out.cols() * 2);
    next.topLeftCorner(out.rows(), out.cols()) = s(0, 0) * out;
    next.topRightCorner(out.rows(), out.cols()) = s(0, 1) * out;
    next.bottomLeftCorner(out.rows(), out.cols()) = s(1, 0) * out;
    next.bottomRightCorner(out.rows(), out.cols()) = s(1, 1) * out;
    out.swap(next);
  }
  return out;
}

Operator z_phase_diag(int nspins, double angle) {
  const Eigen::Index dim = Eigen::Index(1) << nspins;
  Operator out = Operator::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s)
    out(s, s) = std::exp(kImag * angle * mz_of_state(nspins, s));
  return out;
}

}  // namespace

PulseEvent PulseEvent::pulse(double flip, double phase) {
  PulseEvent e;
  e.kind = Kind::Pulse;
  e.flip = flip;
  e.phase = phase;
  return e;
}

PulseEvent PulseEvent::finite_pulse(double flip, double phase, double duration,
                                    std::string hamiltonian) {
  if (duration <= 0.0) throw std::invalid_argument("finite pulse needs duration > 0");
  PulseEvent e;
  e.kind = Kind::Pulse;
  e.flip = flip;
  e.phase = phase;
  e.duration = duration;
  e.hamiltonian = std::move(hamiltonian);
  return e;
}

PulseEvent PulseEvent::z_rotation(double angle) {
  PulseEvent e;
  e.kind = Kind::ZRotation;
  e.angle = angle;
  return e;
}

PulseEvent PulseEvent::delay(double duration, std::string hamiltonian) {
  if (duration < 0.0) throw std::invalid_argument("delay duration must be >= 0");
  PulseEvent e;
  e.kind = Kind::Delay;
  e.duration = duration;
  e.hamiltonian = std::move(hamiltonian);
  return e;
}

double PulseEvent::rf_amplitude() const {
  return duration > 0.0 ? flip / duration : 0.0;
}

double PulseSequence::cycle_time() const {
  double t = 0.0;
  for (const auto& e : events) t += e.duration;
  return t;
}

Operator propagator(const Operator& h, double t) {
  if (!is_hermitian(h))
    throw std::invalid_argument("propagator requires a Hermitian generator");
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  const Eigen::VectorXd w = es.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(kImag * w(k) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Operator phase_shifted(const Operator& u, double phi) {
  const int n = spin_count_for_dim(u.rows());
  const Operator rm = z_phase_diag(n, -phi);
  const Operator rp = z_phase_diag(n, phi);
  return rm * u * rp;
}

Operator sequence_propagator(const PulseSequence& seq, int nspins,
                             const HamiltonianTable& hams) {
  const Eigen::Index dim = Eigen::Index(1) << nspins;
  Operator u = Operator::Identity(dim, dim);
  for (const auto& e : seq.events) {
    switch (e.kind) {
      case PulseEvent::Kind::Pulse:
        if (e.duration == 0.0) {
          u = transverse_rotation(nspins, e.flip, e.phase) * u;
        } else {
          const Operator& h_int = lookup(hams, e.hamiltonian.empty() ? "internal" : e.hamiltonian);
          const Operator h_rf =
              e.rf_amplitude() * (std::cos(e.phase) * collective_op(nspins, Axis::X) +
                                  std::sin(e.phase) * collective_op(nspins, Axis::Y));
          u = propagator(h_int + h_rf, e.duration) * u;
        }
        break;
      case PulseEvent::Kind::ZRotation:
        u = z_phase_diag(nspins, e.angle) * u;
        break;
      case PulseEvent::Kind::Delay:
        if (e.duration > 0.0)
          u = propagator(lookup(hams, e.hamiltonian.empty() ? "internal" : e.hamiltonian),
                         e.duration) * u;
        break;
    }
  }
  return u;
}

Operator run_sequence(const PulseSequence& seq, const Operator& rho0,
                      const HamiltonianTable& hams) {
  const int n = spin_count_for_dim(rho0.rows());
  const Operator u = sequence_propagator(seq, n, hams);
  return u * rho0 * u.adjoint();
}

Operator run_sequence(const PulseSequence& seq, const Operator& rho0,
                      const Operator& h_internal) {
  return run_sequence(seq, rho0, HamiltonianTable{{"internal", h_internal}});
}

double dq16_cycle_time(double delta, double t_pulse) {
  return 24.0 * (delta + t_pulse);
}

PulseSequence build_dq_cycle_8(double delta, double t_pulse, bool ideal,
                               double phase_offset) {
  if (delta <= 0.0) throw std::invalid_argument("delta must be > 0");
  if (t_pulse < 0.0) throw std::invalid_argument("t_pulse must be >= 0");

  // phases in units of pi: x x xbar xbar xbar xbar x x
  static constexpr double kPhasePattern[8] = {0, 0, 1, 1, 1, 1, 0, 0};

  PulseSequence seq;
  seq.name = ideal ? "dq8-ideal" : "dq8";
  const double de = delta + t_pulse;
  if (ideal) {
    seq.events.push_back(PulseEvent::delay(de / 2.0));
    for (int k = 0; k < 8; ++k) {
      seq.events.push_back(PulseEvent::pulse(kPi / 2.0, kPhasePattern[k] * kPi + phase_offset));
      if (k == 7)
        seq.events.push_back(PulseEvent::delay(de / 2.0));
      else
        seq.events.push_back(PulseEvent::delay(k % 2 == 0 ? 2.0 * de : de));
    }
  } else {
    if (t_pulse == 0.0) throw std::invalid_argument("finite-width cycle needs t_pulse > 0");
    const double dprime = 2.0 * delta + t_pulse;
    seq.events.push_back(PulseEvent::delay(delta / 2.0));
    for (int k = 0; k < 8; ++k) {
      seq.events.push_back(
          PulseEvent::finite_pulse(kPi / 2.0, kPhasePattern[k] * kPi + phase_offset, t_pulse));
      if (k == 7)
        seq.events.push_back(PulseEvent::delay(delta / 2.0));
      else
        seq.events.push_back(PulseEvent::delay(k % 2 == 0 ? dprime : delta));
    }
  }
  return seq;
}

PulseSequence build_dq_cycle_16(double delta, double t_pulse, bool ideal) {
  PulseSequence seq = build_dq_cycle_8(delta, t_pulse, ideal, 0.0);
  const PulseSequence second = build_dq_cycle_8(delta, t_pulse, ideal, kPi);
  seq.events.insert(seq.events.end(), second.events.begin(), second.events.end());
  seq.name = ideal ? "dq16-ideal" : "dq16";
  return seq;
}

Operator effective_hamiltonian(const Operator& u, double t_c) {
  if (t_c <= 0.0) throw std::invalid_argument("cycle time must be > 0");
  const Eigen::Index dim = u.rows();
  if ((u * u.adjoint() - Operator::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("effective_hamiltonian requires a unitary input");

  // U is normal, so its Schur form is diagonal and Q is unitary
  Eigen::ComplexSchur<Operator> schur(u);
  const Operator& q = schur.matrixU();
  Eigen::VectorXd phases(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double theta = std::arg(schur.matrixT()(k, k));
    if (std::abs(theta) > kPi * (1.0 - 1e-6))
      throw std::domain_error(
          "effective_hamiltonian: eigenphase too close to the branch cut; "
          "reduce couplings or the cycle time");
    phases(k) = theta / t_c;
  }
  Operator h = q * phases.asDiagonal() * q.adjoint();
  return 0.5 * (h + h.adjoint());
}

ScaleFit fit_operator_scale(const Operator& h, const Operator& h_ref) {
  const double denom = h_ref.cwiseAbs2().sum();
  if (denom == 0.0) throw std::invalid_argument("reference operator is zero");
  ScaleFit fit;
  fit.scale = (h_ref.adjoint() * h).trace().real() / denom;
  const double scaled_norm = std::abs(fit.scale) * std::sqrt(denom);
  fit.residual = scaled_norm > 0.0
                     ? (h - fit.scale * h_ref).norm() / scaled_norm
                     : std::numeric_limits<double>::infinity();
  return fit;
}

}  // namespace mqsim
