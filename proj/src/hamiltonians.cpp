#include "mqsim/hamiltonians.hpp"

#include <functional>

namespace mqsim {

namespace {

const Complex kImag(0.0, 1.0);

Operator pair_sum(const SpinSystem& sys,
                  const std::function<Operator(int, int)>& term) {
  sys.validate();
  const Eigen::Index dim = Eigen::Index(1) << sys.nspins;
  Operator h = Operator::Zero(dim, dim);
  for (int i = 0; i < sys.nspins; ++i)
    for (int j = i + 1; j < sys.nspins; ++j)
      if (sys.couplings(i, j) != 0.0) h += sys.couplings(i, j) * term(i, j);
  return h;
}

}  // namespace

Operator dq_hamiltonian(const SpinSystem& sys) {
  const int n = sys.nspins;
  return pair_sum(sys, [n](int i, int j) {
    const Operator pi = single_spin_op(n, i, SpinOp::Plus);
    const Operator pj = single_spin_op(n, j, SpinOp::Plus);
    const Operator mi = single_spin_op(n, i, SpinOp::Minus);
    const Operator mj = single_spin_op(n, j, SpinOp::Minus);
    return Operator(pi * pj + mi * mj);
  });
}

Operator dq_hamiltonian_xform(const SpinSystem& sys) {
  const int n = sys.nspins;
  return pair_sum(sys, [n](int i, int j) {
    const Operator xi = single_spin_op(n, i, SpinOp::X);
    const Operator xj = single_spin_op(n, j, SpinOp::X);
    // ladder operators quantised along x
    const Operator pi = single_spin_op(n, i, SpinOp::Y) + kImag * single_spin_op(n, i, SpinOp::Z);
    const Operator pj = single_spin_op(n, j, SpinOp::Y) + kImag * single_spin_op(n, j, SpinOp::Z);
    const Operator mi = pi.adjoint();
    const Operator mj = pj.adjoint();
    const Operator zero_q = 2.0 * xi * xj - 0.5 * (pi * mj + mi * pj);
    const Operator double_q = 0.5 * (pi * pj + mi * mj);
    return Operator(zero_q - double_q);
  });
}

Operator secular_dipolar_hamiltonian(const SpinSystem& sys) {
  const int n = sys.nspins;
  return pair_sum(sys, [n](int i, int j) {
    const Operator zi = single_spin_op(n, i, SpinOp::Z);
    const Operator zj = single_spin_op(n, j, SpinOp::Z);
    const Operator pi = single_spin_op(n, i, SpinOp::Plus);
    const Operator pj = single_spin_op(n, j, SpinOp::Plus);
    const Operator mi = single_spin_op(n, i, SpinOp::Minus);
    const Operator mj = single_spin_op(n, j, SpinOp::Minus);
    return Operator(2.0 * zi * zj - 0.5 * (pi * mj + mi * pj));
  });
}

}  // namespace mqsim
