#pragma once

// Brute-force reference constructions for the tests.  Everything here is
// deliberately independent of the library code it checks: literal Kronecker
// chains, a series matrix exponential, and hand-built states.

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace oracles {

using Complex = std::complex<double>;
using cmat = Eigen::MatrixXcd;

inline cmat kron(const cmat& a, const cmat& b) {
  cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Eigen::Matrix2cd sx_half() {
  Eigen::Matrix2cd m;
  m << 0.0, 0.5, 0.5, 0.0;
  return m;
}

inline Eigen::Matrix2cd sy_half() {
  Eigen::Matrix2cd m;
  m << Complex(0, 0), Complex(0, -0.5), Complex(0, 0.5), Complex(0, 0);
  return m;
}

inline Eigen::Matrix2cd sz_half() {
  Eigen::Matrix2cd m;
  m << 0.5, 0.0, 0.0, -0.5;
  return m;
}

inline Eigen::Matrix2cd splus() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 0.0, 0.0;
  return m;
}

inline Eigen::Matrix2cd sminus() {
  Eigen::Matrix2cd m;
  m << 0.0, 0.0, 1.0, 0.0;
  return m;
}

// I (x) ... (x) s (x) ... (x) I with s at position `spin`, spin 0 leftmost
inline cmat embed(int nspins, int spin, const Eigen::Matrix2cd& s) {
  cmat out = cmat::Identity(1, 1);
  for (int k = 0; k < nspins; ++k)
    out = kron(out, k == spin ? cmat(s) : cmat(Eigen::Matrix2cd::Identity()));
  return out;
}

// scaling-and-squaring Taylor series; test-grade accuracy for small matrices
inline cmat expm_series(const cmat& a) {
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  cmat x = a;
  while (norm > 0.25) {
    x *= 0.5;
    norm *= 0.5;
    ++squarings;
  }
  cmat term = cmat::Identity(a.rows(), a.cols());
  cmat sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * x / double(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline cmat random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  cmat a(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
  return 0.5 * (a + a.adjoint());
}

// exact two-spin state after double-quantum evolution from collective z:
// block-diagonal rotation of diag(1, 0, 0, -1) inside the {uu, dd} block
inline Eigen::Matrix4cd two_spin_dq_state(double d, double t) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = std::cos(2.0 * d * t);
  rho(3, 3) = -std::cos(2.0 * d * t);
  rho(0, 3) = Complex(0.0, -1.0) * std::sin(2.0 * d * t);
  rho(3, 0) = Complex(0.0, 1.0) * std::sin(2.0 * d * t);
  return rho;
}

}  // namespace oracles
