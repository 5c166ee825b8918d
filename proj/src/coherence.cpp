#include "mqsim/coherence.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mqsim {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kImag(0.0, 1.0);

void require_hermitian(const Operator& rho, const char* who) {
  if (rho.rows() != rho.cols() || !is_hermitian(rho, 1e-10 * std::max(1.0, rho.cwiseAbs().maxCoeff())))
    throw std::invalid_argument(std::string(who) + " requires a Hermitian state");
}

// order of matrix element (r, c): m(c) - m(r), matching the phase picked up
// under conjugation by exp(-i phi Iz) ... exp(+i phi Iz)
int order_of(int nspins, Eigen::Index r, Eigen::Index c) {
  return static_cast<int>(std::lround(mz_of_state(nspins, c) - mz_of_state(nspins, r)));
}

double purity(const Operator& rho) { return rho.cwiseAbs2().sum(); }

}  // namespace

double CoherenceSpectrum::at(int n) const {
  if (std::abs(n) > n_max) return 0.0;
  return intensity[static_cast<size_t>(n + n_max)];
}

double& CoherenceSpectrum::at(int n) {
  if (std::abs(n) > n_max) throw std::out_of_range("coherence order out of range");
  return intensity[static_cast<size_t>(n + n_max)];
}

void CoherenceSpectrum::resize(int new_n_max) {
  n_max = new_n_max;
  intensity.assign(static_cast<size_t>(2 * new_n_max + 1), 0.0);
}

Operator basis_change(int nspins, Axis axis) {
  switch (axis) {
    case Axis::Z: {
      const Eigen::Index dim = Eigen::Index(1) << nspins;
      return Operator::Identity(dim, dim);
    }
    case Axis::X:
      return rotation(nspins, Axis::Y, kPi / 2.0);
    case Axis::Y:
      return rotation(nspins, Axis::X, -kPi / 2.0);
  }
  throw std::logic_error("bad axis");
}

std::map<int, Operator> decompose_block(const Operator& rho, Axis axis) {
  require_hermitian(rho, "decompose_block");
  const int n = spin_count_for_dim(rho.rows());
  const Eigen::Index dim = rho.rows();

  const bool rotated = axis != Axis::Z;
  Operator w;
  Operator sigma;
  if (rotated) {
    w = basis_change(n, axis);
    sigma = w * rho * w.adjoint();
  } else {
    sigma = rho;
  }

  std::map<int, Operator> out;
  for (int order = -n; order <= n; ++order) out.emplace(order, Operator::Zero(dim, dim));
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      out[order_of(n, r, c)](r, c) = sigma(r, c);

  if (rotated)
    for (auto& [order, comp] : out) comp = Operator(w.adjoint() * comp * w);
  return out;
}

CoherenceSpectrum spectrum_from_block(const Operator& rho, Axis axis) {
  require_hermitian(rho, "spectrum_from_block");
  const int n = spin_count_for_dim(rho.rows());
  const Eigen::Index dim = rho.rows();

  Operator sigma;
  if (axis != Axis::Z) {
    const Operator w = basis_change(n, axis);
    sigma = w * rho * w.adjoint();
  } else {
    sigma = rho;
  }

  CoherenceSpectrum spec;
  spec.axis = axis;
  spec.resize(n);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      spec.at(order_of(n, r, c)) += std::norm(sigma(r, c));
  for (double v : spec.intensity) spec.total += v;
  return spec;
}

int max_order_present(const Operator& rho, Axis axis, double rel_tol) {
  const CoherenceSpectrum spec = spectrum_from_block(rho, axis);
  if (spec.total == 0.0) return 0;
  int n_pres = 0;
  for (int order = -spec.n_max; order <= spec.n_max; ++order)
    if (spec.at(order) > rel_tol * spec.total) n_pres = std::max(n_pres, std::abs(order));
  return n_pres;
}

CoherenceSpectrum decompose_phase_ft(const Operator& rho, Axis axis, int k_samples) {
  require_hermitian(rho, "decompose_phase_ft");
  const int n = spin_count_for_dim(rho.rows());
  if (k_samples < 1) throw std::invalid_argument("phase sample count must be >= 1");

  // below the physical Nyquist bound, check the orders actually present
  if (k_samples < 2 * n) {
    const int n_pres = max_order_present(rho, axis);
    if (k_samples < 2 * n_pres)
      throw std::invalid_argument(
          "aliasing: state carries coherence order " + std::to_string(n_pres) +
          " but only " + std::to_string(k_samples) +
          " phase samples were requested (need >= " + std::to_string(2 * n_pres) + ")");
  }

  const double tr2 = purity(rho);
  std::vector<double> signal(static_cast<size_t>(k_samples));
  for (int k = 0; k < k_samples; ++k) {
    const double phi = 2.0 * kPi * k / k_samples;
    const Operator r_minus = rotation(n, axis, -phi);
    const Operator a = r_minus * rho * r_minus.adjoint();
    const Complex s = (a.array() * rho.transpose().array()).sum();
    if (std::abs(s.imag()) > 1e-8 * std::max(1.0, tr2))
      throw std::runtime_error("phase-encoded signal has a non-real component");
    signal[static_cast<size_t>(k)] = s.real();
  }

  CoherenceSpectrum spec = spectrum_from_phase_signal(signal, axis, n);

  if (std::abs(spec.total - tr2) > 1e-8 * std::max(1.0, tr2))
    throw std::runtime_error(
        "phase-encoded intensities do not sum to Tr[rho^2]; sampling is aliased");
  return spec;
}

double order_bin_weight(int order, int k_samples) {
  const int half = k_samples / 2;
  if (k_samples % 2 == 1) return std::abs(order) <= half ? 1.0 : 0.0;
  if (std::abs(order) < half) return 1.0;
  return std::abs(order) == half ? 0.5 : 0.0;
}

CoherenceSpectrum spectrum_from_phase_signal(const std::vector<double>& signal,
                                             Axis axis, int n_max) {
  const int k_samples = static_cast<int>(signal.size());
  if (k_samples < 1) throw std::invalid_argument("need at least one phase sample");

  double scale = 0.0;
  for (double s : signal) scale = std::max(scale, std::abs(s));

  CoherenceSpectrum spec;
  spec.axis = axis;
  spec.resize(n_max);
  auto bin = [&](int order) {
    Complex acc(0.0, 0.0);
    for (int k = 0; k < k_samples; ++k) {
      const double ang = -2.0 * kPi * order * k / k_samples;
      acc += signal[static_cast<size_t>(k)] * Complex(std::cos(ang), std::sin(ang));
    }
    return acc.real() / k_samples;
  };
  for (int order = -n_max; order <= n_max; ++order) {
    const double w = order_bin_weight(order, k_samples);
    double v = w > 0.0 ? w * bin(order) : 0.0;
    if (v < 0.0) {
      if (v < -1e-10 * std::max(1.0, scale))
        throw std::runtime_error("negative coherence intensity beyond roundoff");
      v = 0.0;
    }
    // DFT roundoff of structurally empty bins, well below any tolerance used
    if (v < 1e-14 * scale) v = 0.0;
    spec.at(order) = v;
  }
  for (double v : spec.intensity) spec.total += v;
  return spec;
}

int default_phase_samples(int n_max) {
  const unsigned v = 4u * static_cast<unsigned>(std::max(1, n_max));
  return static_cast<int>(std::bit_ceil(v));
}

double basis_transform_check(const Operator& rho, int k_samples) {
  require_hermitian(rho, "basis_transform_check");
  const int n = spin_count_for_dim(rho.rows());
  if (k_samples <= 0) k_samples = default_phase_samples(n);

  const CoherenceSpectrum via_phase = decompose_phase_ft(rho, Axis::X, k_samples);
  const Operator w = basis_change(n, Axis::X);
  const CoherenceSpectrum via_rotation = spectrum_from_block(Operator(w * rho * w.adjoint()), Axis::Z);

  double max_dev = 0.0;
  for (int order = -n; order <= n; ++order)
    max_dev = std::max(max_dev, std::abs(via_phase.at(order) - via_rotation.at(order)));
  return max_dev;
}

}  // namespace mqsim
