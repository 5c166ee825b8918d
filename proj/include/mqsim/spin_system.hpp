#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <vector>

namespace mqsim {

/// A set of spin-1/2 nuclei and their pairwise couplings d_ij in rad/s.
struct SpinSystem {
  int nspins = 0;
  Eigen::MatrixXd couplings;  // symmetric, zero diagonal, rad/s

  // set when the couplings were derived from a geometry; NaN otherwise
  double geometry_constant = std::numeric_limits<double>::quiet_NaN();

  void validate() const;  // throws std::invalid_argument on violation
};

SpinSystem system_from_couplings(Eigen::MatrixXd couplings);

/// Dipolar couplings from spin positions: d_ij = K (1 - 3 cos^2 theta_ij) / r_ij^3
/// with theta_ij measured against field_axis.  gamma == 0 selects reduced
/// units (K = 1, positions in arbitrary length units); otherwise
/// K = -mu0 hbar gamma^2 / (8 pi) with positions in meters and gamma in
/// rad/(s T).  The constant used is recorded in geometry_constant.
SpinSystem couplings_from_geometry(const std::vector<Eigen::Vector3d>& positions,
                                   const Eigen::Vector3d& field_axis,
                                   double gamma = 0.0);

/// Linear chain perpendicular to the field: unit spacing along x, field along
/// z, geometry constant chosen so the nearest-neighbour coupling equals
/// nn_coupling (rad/s).  Longer-range couplings fall off as 1/|i-j|^3.
SpinSystem chain_system(int nspins, double nn_coupling);

/// All-to-all couplings drawn uniformly from [-scale, scale], seeded.
SpinSystem random_system(int nspins, double scale, std::uint64_t seed);

}  // namespace mqsim
