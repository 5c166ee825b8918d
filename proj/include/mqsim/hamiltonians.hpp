#pragma once

#include "mqsim/operators.hpp"
#include "mqsim/spin_system.hpp"

namespace mqsim {

/// Double-quantum Hamiltonian sum_{i<j} d_ij (I_i+ I_j+ + I_i- I_j-).
/// Raises or lowers the collective z coherence order by exactly 2.
Operator dq_hamiltonian(const SpinSystem& sys);

/// The same physical operator assembled from its x-quantised form,
///   sum_{i<j} d_ij [ {2 I_xi I_xj - (I_xi+ I_xj- + I_xi- I_xj+)/2}
///                    - {I_xi+ I_xj+ + I_xi- I_xj-}/2 ],
/// with x-basis ladder operators I_x± = I_y ± i I_z.  Equals
/// dq_hamiltonian(sys) as a matrix; the x-quantised double-quantum part
/// carries coefficient -1/2 relative to the z form.
Operator dq_hamiltonian_xform(const SpinSystem& sys);

/// Secular (truncated) dipolar Hamiltonian
///   sum_{i<j} d_ij [ 2 I_zi I_zj - (I_i+ I_j- + I_i- I_j+)/2 ].
/// Commutes with the collective I_z, so it conserves z coherence order.
Operator secular_dipolar_hamiltonian(const SpinSystem& sys);

}  // namespace mqsim
