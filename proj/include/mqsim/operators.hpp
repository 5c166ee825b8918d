#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace mqsim {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;

enum class Axis { X, Y, Z };

/// Single-spin operator labels: Cartesian components plus ladder operators.
enum class SpinOp { X, Y, Z, Plus, Minus };

constexpr double kHermitianTol = 1e-12;

// Hilbert-space size guard.  Dense 2^N x 2^N matrices; the default cap of 12
// spins keeps a single operator below ~256 MB.  Set once at startup.
int max_spins();
void set_max_spins(int n);

/// Number of spins for a 2^N-dimensional operator; throws if dim is not a
/// power of two.
int spin_count_for_dim(Eigen::Index dim);

bool is_hermitian(const Operator& a, double tol = kHermitianTol);

// Basis ordering: spin 0 is the most significant qubit, so basis state s has
// spin i up (m = +1/2) when bit (N-1-i) of s is zero.  State 0 is all-up.

/// Collective z magnetic quantum number of basis state `state` (N spins).
double mz_of_state(int nspins, Eigen::Index state);

/// Embedding of a single-spin-1/2 operator on spin `spin` of an N-spin
/// system.  Conventions: I_z|up> = +1/2|up>, I+|down> = |up>, hbar = 1.
Operator single_spin_op(int nspins, int spin, SpinOp which);

/// Sum of single-spin operators over all spins.
Operator collective_op(int nspins, Axis axis);

/// Collective rotation R_axis(angle) = exp(+i angle sum_i I_axis^i).
Operator rotation(int nspins, Axis axis, double angle);

/// Intensity of rho per product-operator weight (number of spins a basis
/// term acts on non-trivially).  Entry w holds the summed squared magnitude
/// of the coefficients of all weight-w Pauli product terms, with the terms
/// normalised to unit Frobenius norm, so the entries sum to Tr[rho^2].
/// Available for N <= 8 only; rho must be Hermitian.
std::vector<double> pauli_weight_decompose(const Operator& rho);

}  // namespace mqsim
