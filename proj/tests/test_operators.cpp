#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mqsim/operators.hpp"

#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace mqsim;
using oracles::cmat;

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd half_op(SpinOp which) {
  switch (which) {
    case SpinOp::X: return oracles::sx_half();
    case SpinOp::Y: return oracles::sy_half();
    case SpinOp::Z: return oracles::sz_half();
    case SpinOp::Plus: return oracles::splus();
    case SpinOp::Minus: return oracles::sminus();
  }
  return {};
}
}  // namespace

TEST_CASE("single-spin operators follow the stated conventions") {
  const Operator z = single_spin_op(1, 0, SpinOp::Z);
  CHECK(z(0, 0) == Complex(0.5, 0.0));
  CHECK(z(1, 1) == Complex(-0.5, 0.0));

  const Operator plus = single_spin_op(1, 0, SpinOp::Plus);
  CHECK(plus(0, 1) == Complex(1.0, 0.0));  // <up|I+|down> = 1
  CHECK(plus(1, 0) == Complex(0.0, 0.0));

  const Operator z2 = single_spin_op(2, 1, SpinOp::Z);
  CHECK(z2(0, 0).real() == doctest::Approx(0.5));
  CHECK(z2(1, 1).real() == doctest::Approx(-0.5));
  CHECK(z2(2, 2).real() == doctest::Approx(0.5));
  CHECK(z2(3, 3).real() == doctest::Approx(-0.5));
}

TEST_CASE("embeddings match the brute-force Kronecker chain") {
  for (int nspins = 1; nspins <= 4; ++nspins) {
    for (int spin = 0; spin < nspins; ++spin) {
      for (SpinOp which :
           {SpinOp::X, SpinOp::Y, SpinOp::Z, SpinOp::Plus, SpinOp::Minus}) {
        const Operator fast = single_spin_op(nspins, spin, which);
        const cmat ref = oracles::embed(nspins, spin, half_op(which));
        CHECK((fast - ref).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("index and size limits are enforced") {
  CHECK_THROWS_AS(single_spin_op(2, 2, SpinOp::Z), std::invalid_argument);
  CHECK_THROWS_AS(single_spin_op(2, -1, SpinOp::Z), std::invalid_argument);
  CHECK_THROWS_AS(single_spin_op(max_spins() + 1, 0, SpinOp::Z), std::invalid_argument);
  CHECK_THROWS_AS(collective_op(0, Axis::Z), std::invalid_argument);
  CHECK_THROWS_AS(spin_count_for_dim(12), std::invalid_argument);
  CHECK(spin_count_for_dim(64) == 6);
}

TEST_CASE("collective operators") {
  const Operator cz = collective_op(2, Axis::Z);
  CHECK(cz(0, 0).real() == doctest::Approx(1.0));
  CHECK(cz(1, 1).real() == doctest::Approx(0.0));
  CHECK(cz(2, 2).real() == doctest::Approx(0.0));
  CHECK(cz(3, 3).real() == doctest::Approx(-1.0));

  const Operator cx = collective_op(1, Axis::X);
  CHECK(cx(0, 1).real() == doctest::Approx(0.5));
  CHECK(cx(1, 0).real() == doctest::Approx(0.5));

  // N=3 z eigenvalues by sector, against the brute-force sum of embeddings
  cmat ref = cmat::Zero(8, 8);
  for (int i = 0; i < 3; ++i) ref += oracles::embed(3, i, oracles::sz_half());
  const Operator c3 = collective_op(3, Axis::Z);
  CHECK((c3 - ref).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-14));
  std::multiset<double> eigs;
  for (int s = 0; s < 8; ++s) eigs.insert(std::round(c3(s, s).real() * 2) / 2);
  CHECK(eigs == std::multiset<double>{-1.5, -0.5, -0.5, -0.5, 0.5, 0.5, 0.5, 1.5});
}

TEST_CASE("rotations are the exponentials of the collective generators") {
  CHECK((rotation(2, Axis::X, 0.0) - Operator::Identity(4, 4)).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0));

  // half-integer spin picks up a sign under a 2 pi rotation
  const Operator full_turn = rotation(1, Axis::Z, 2.0 * kPi);
  CHECK((full_turn + Operator::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-6.0, 6.0);
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    for (int rep = 0; rep < 3; ++rep) {
      const double a = angle(rng);
      const Operator u = rotation(3, axis, a);
      CHECK((u * rotation(3, axis, -a) - Operator::Identity(8, 8)).cwiseAbs().maxCoeff() <
            1e-12);
      CHECK((u * u.adjoint() - Operator::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
      const cmat ref =
          oracles::expm_series(Complex(0, 1) * a * cmat(collective_op(3, axis)));
      CHECK((u - ref).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("product terms are trace-orthogonal with norm 2^N") {
  // all 16 two-spin Pauli strings, built from the doubled single-spin halves
  std::vector<cmat> paulis;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const std::vector<Eigen::Matrix2cd> singles = {
      id, 2.0 * oracles::sx_half(), 2.0 * oracles::sy_half(), 2.0 * oracles::sz_half()};
  for (const auto& a : singles)
    for (const auto& b : singles) paulis.push_back(oracles::kron(a, b));
  for (size_t i = 0; i < paulis.size(); ++i) {
    for (size_t j = 0; j < paulis.size(); ++j) {
      const Complex ip = (paulis[i].adjoint() * paulis[j]).trace();
      if (i == j)
        CHECK(ip.real() == doctest::Approx(4.0));
      else
        CHECK(std::abs(ip) < 1e-14);
    }
  }
}

TEST_CASE("weight decomposition of collective and product states") {
  // sum_i I_z^i is entirely weight 1 and carries Tr[rho^2]
  for (int nspins : {2, 3, 4}) {
    const auto w = pauli_weight_decompose(collective_op(nspins, Axis::Z));
    const double expected = nspins * std::pow(2.0, nspins) / 4.0;
    CHECK(w[1] == doctest::Approx(expected).epsilon(1e-12));
    for (size_t k = 0; k < w.size(); ++k)
      if (k != 1) CHECK(w[k] < 1e-12);
  }

  // I_z1 I_z2 is a single weight-2 term
  const Operator zz = single_spin_op(2, 0, SpinOp::Z) * single_spin_op(2, 1, SpinOp::Z);
  const auto w = pauli_weight_decompose(zz);
  CHECK(w[2] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(w[0] + w[1] < 1e-14);
}

TEST_CASE("weight decomposition of the two-spin double-quantum state") {
  for (double t : {0.3, 0.9, 2.0}) {
    const Eigen::Matrix4cd rho = oracles::two_spin_dq_state(1.0, t);
    const auto w = pauli_weight_decompose(rho);
    const double total = w[0] + w[1] + w[2];
    const double c2 = std::cos(2.0 * t) * std::cos(2.0 * t);
    CHECK(w[1] / total == doctest::Approx(c2).epsilon(1e-10));
    CHECK(w[2] / total == doctest::Approx(1.0 - c2).epsilon(1e-10));
    CHECK(w[0] < 1e-12);
  }
}

TEST_CASE("weight intensities are invariant under collective rotations") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int rep = 0; rep < 5; ++rep) {
    const cmat rho = oracles::random_hermitian(8, rng);
    const auto base = pauli_weight_decompose(rho);

    double total = 0.0;
    for (double v : base) total += v;
    CHECK(total == doctest::Approx(rho.cwiseAbs2().sum()).epsilon(1e-10));

    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
      const Operator u = rotation(3, axis, angle(rng));
      const auto rotated = pauli_weight_decompose(u * rho * u.adjoint());
      for (size_t k = 0; k < base.size(); ++k)
        CHECK(rotated[k] == doctest::Approx(base[k]).epsilon(1e-10));
    }
  }
}

TEST_CASE("weight decomposition rejects bad inputs") {
  Operator non_hermitian = Operator::Zero(4, 4);
  non_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(pauli_weight_decompose(non_hermitian), std::invalid_argument);

  const Operator big = Operator::Zero(512, 512);  // nine spins
  CHECK_THROWS_AS(pauli_weight_decompose(big), std::invalid_argument);
}
