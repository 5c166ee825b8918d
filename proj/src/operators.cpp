#include "mqsim/operators.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mqsim {

namespace {

std::atomic<int> g_max_spins{12};

using Matrix2c = Eigen::Matrix2cd;

Matrix2c pauli_half(SpinOp which) {
  const Complex i(0.0, 1.0);
  Matrix2c m = Matrix2c::Zero();
  switch (which) {
    case SpinOp::X:
      m(0, 1) = 0.5;
      m(1, 0) = 0.5;
      break;
    case SpinOp::Y:
      m(0, 1) = -0.5 * i;
      m(1, 0) = 0.5 * i;
      break;
    case SpinOp::Z:
      m(0, 0) = 0.5;
      m(1, 1) = -0.5;
      break;
    case SpinOp::Plus:
      m(0, 1) = 1.0;
      break;
    case SpinOp::Minus:
      m(1, 0) = 1.0;
      break;
  }
  return m;
}

SpinOp to_spin_op(Axis axis) {
  switch (axis) {
    case Axis::X: return SpinOp::X;
    case Axis::Y: return SpinOp::Y;
    case Axis::Z: return SpinOp::Z;
  }
  throw std::logic_error("bad axis");
}

void check_spin_count(int nspins) {
  if (nspins < 1) throw std::invalid_argument("spin count must be >= 1");
  if (nspins > max_spins())
    throw std::invalid_argument("spin count " + std::to_string(nspins) +
                                " exceeds the configured cap of " +
                                std::to_string(max_spins()));
}

}  // namespace

int max_spins() { return g_max_spins.load(); }

void set_max_spins(int n) {
  if (n < 1) throw std::invalid_argument("max_spins must be >= 1");
  g_max_spins.store(n);
}

int spin_count_for_dim(Eigen::Index dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("operator dimension must be a power of two, got " +
                                std::to_string(dim));
  return std::countr_zero(static_cast<unsigned long long>(dim));
}

bool is_hermitian(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double mz_of_state(int nspins, Eigen::Index state) {
  const int down = std::popcount(static_cast<unsigned long long>(state));
  return 0.5 * (nspins - 2 * down);
}

Operator single_spin_op(int nspins, int spin, SpinOp which) {
  check_spin_count(nspins);
  if (spin < 0 || spin >= nspins)
    throw std::invalid_argument("spin index " + std::to_string(spin) +
                                " out of range for " + std::to_string(nspins) +
                                " spins");
  const Eigen::Index dim = Eigen::Index(1) << nspins;
  const Eigen::Index mask = Eigen::Index(1) << (nspins - 1 - spin);
  const Matrix2c s = pauli_half(which);

  Operator out = Operator::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const int b = (r & mask) ? 1 : 0;  // 0 = up, 1 = down
    // diagonal-in-spin part (rows where the partner column equals r)
    if (s(b, b) != Complex(0.0)) out(r, r) += s(b, b);
    const Complex flip = s(b, 1 - b);
    if (flip != Complex(0.0)) out(r, r ^ mask) += flip;
  }
  return out;
}

Operator collective_op(int nspins, Axis axis) {
  check_spin_count(nspins);
  const Eigen::Index dim = Eigen::Index(1) << nspins;
  Operator out = Operator::Zero(dim, dim);
  for (int i = 0; i < nspins; ++i) out += single_spin_op(nspins, i, to_spin_op(axis));
  return out;
}

Operator rotation(int nspins, Axis axis, double angle) {
  check_spin_count(nspins);
  if (!std::isfinite(angle)) throw std::invalid_argument("rotation angle must be finite");
  // exp(i angle sum_i I_a^i) factorises into single-spin rotations
  //   exp(i angle I_a) = cos(angle/2) 1 + 2 i sin(angle/2) I_a.
  const Complex i(0.0, 1.0);
  const Matrix2c u1 = std::cos(angle / 2) * Matrix2c::Identity() +
                      2.0 * i * std::sin(angle / 2) * pauli_half(to_spin_op(axis));
  Operator out = u1;
  for (int k = 1; k < nspins; ++k) {
    Operator next(out.rows() * 2, out.cols() * 2);
    next.topLeftCorner(out.rows(), out.cols()) = u1(0, 0) * out;
    next.topRightCorner(out.rows(), out.cols()) = u1(0, 1) * out;
    next.bottomLeftCorner(out.rows(), out.cols()) = u1(1, 0) * out;
    next.bottomRightCorner(out.rows(), out.cols()) = u1(1, 1) * out;
    out.swap(next);
  }
  return out;
}

std::vector<double> pauli_weight_decompose(const Operator& rho) {
  const int nspins = spin_count_for_dim(rho.rows());
  if (nspins > 8)
    throw std::invalid_argument(
        "pauli_weight_decompose enumerates all 4^N product terms and is only "
        "available for N <= 8, got N = " + std::to_string(nspins));
  if (!is_hermitian(rho))
    throw std::invalid_argument("pauli_weight_decompose requires a Hermitian operator");

  const Eigen::Index dim = rho.rows();
  const double norm = 1.0 / static_cast<double>(dim);  // |Tr[P rho]|^2 / 2^N
  const Complex minus_i(0.0, -1.0);

  std::vector<double> intensity(static_cast<size_t>(nspins) + 1, 0.0);

  // label code: two bits per spin, 0=identity 1=X 2=Y 3=Z, spin 0 in the
  // high bits to match the qubit ordering
  const unsigned long long nterms = 1ull << (2 * nspins);
  for (unsigned long long code = 0; code < nterms; ++code) {
    Eigen::Index xmask = 0;   // spins with X or Y (column flips)
    Eigen::Index zymask = 0;  // spins contributing (-1)^bit
    int ny = 0;
    int weight = 0;
    for (int i = 0; i < nspins; ++i) {
      const int label = int((code >> (2 * (nspins - 1 - i))) & 3ull);
      if (label == 0) continue;
      ++weight;
      const Eigen::Index bit = Eigen::Index(1) << (nspins - 1 - i);
      if (label == 1 || label == 2) xmask |= bit;
      if (label == 2 || label == 3) zymask |= bit;
      if (label == 2) ++ny;
    }
    // P_{r, r^xmask} = (-i)^{nY} (-1)^{popcount(r & zymask)}
    Complex acc(0.0, 0.0);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const Complex v = rho(r ^ xmask, r);
      if (std::popcount(static_cast<unsigned long long>(r & zymask)) & 1)
        acc -= v;
      else
        acc += v;
    }
    Complex phase(1.0, 0.0);
    for (int k = 0; k < (ny & 3); ++k) phase *= minus_i;
    const Complex coeff = phase * acc;
    intensity[static_cast<size_t>(weight)] += std::norm(coeff) * norm;
  }
  return intensity;
}

}  // namespace mqsim
