#include "mqsim/spin_system.hpp"

#include "mqsim/operators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace mqsim {

void SpinSystem::validate() const {
  if (nspins < 1) throw std::invalid_argument("SpinSystem needs at least one spin");
  if (nspins > max_spins())
    throw std::invalid_argument("SpinSystem of " + std::to_string(nspins) +
                                " spins exceeds the configured cap of " +
                                std::to_string(max_spins()));
  if (couplings.rows() != nspins || couplings.cols() != nspins)
    throw std::invalid_argument("coupling matrix must be N x N");
  double max_abs = 0.0;
  for (int i = 0; i < nspins; ++i) {
    if (couplings(i, i) != 0.0)
      throw std::invalid_argument("coupling matrix must have zero diagonal");
    for (int j = 0; j < nspins; ++j) {
      if (!std::isfinite(couplings(i, j)))
        throw std::invalid_argument("coupling matrix entries must be finite");
      if (couplings(i, j) != couplings(j, i))
        throw std::invalid_argument("coupling matrix must be symmetric");
      max_abs = std::max(max_abs, std::abs(couplings(i, j)));
    }
  }
  if (nspins >= 2 && max_abs == 0.0)
    throw std::invalid_argument("coupling matrix must have at least one nonzero entry");
}

SpinSystem system_from_couplings(Eigen::MatrixXd couplings) {
  SpinSystem sys;
  sys.nspins = static_cast<int>(couplings.rows());
  sys.couplings = std::move(couplings);
  sys.validate();
  return sys;
}

SpinSystem couplings_from_geometry(const std::vector<Eigen::Vector3d>& positions,
                                   const Eigen::Vector3d& field_axis,
                                   double gamma) {
  const int n = static_cast<int>(positions.size());
  if (n < 2) throw std::invalid_argument("geometry needs at least two positions");
  if (field_axis.norm() == 0.0)
    throw std::invalid_argument("field axis must have nonzero length");
  const Eigen::Vector3d b = field_axis.normalized();

  double k = 1.0;  // reduced units
  if (gamma != 0.0) {
    constexpr double mu0 = 4.0e-7 * M_PI;      // T m / A
    constexpr double hbar = 1.054571817e-34;   // J s
    k = -mu0 * hbar * gamma * gamma / (8.0 * M_PI);
  }

  SpinSystem sys;
  sys.nspins = n;
  sys.geometry_constant = k;
  sys.couplings = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::Vector3d r = positions[j] - positions[i];
      const double dist = r.norm();
      if (dist == 0.0)
        throw std::invalid_argument("positions " + std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide");
      const double c = r.dot(b) / dist;
      const double d = k * (1.0 - 3.0 * c * c) / (dist * dist * dist);
      sys.couplings(i, j) = d;
      sys.couplings(j, i) = d;
    }
  }
  sys.validate();
  return sys;
}

SpinSystem chain_system(int nspins, double nn_coupling) {
  if (nn_coupling == 0.0) throw std::invalid_argument("chain coupling must be nonzero");
  std::vector<Eigen::Vector3d> pos;
  pos.reserve(static_cast<size_t>(nspins));
  for (int i = 0; i < nspins; ++i) pos.emplace_back(double(i), 0.0, 0.0);
  SpinSystem sys = couplings_from_geometry(pos, Eigen::Vector3d(0, 0, 1), 0.0);
  // perpendicular chain: geometry factor is +1/r^3, so rescale to nn_coupling
  sys.couplings *= nn_coupling;
  sys.geometry_constant = nn_coupling;
  sys.validate();
  return sys;
}

SpinSystem random_system(int nspins, double scale, std::uint64_t seed) {
  if (scale <= 0.0) throw std::invalid_argument("random coupling scale must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(nspins, nspins);
  for (int i = 0; i < nspins; ++i)
    for (int j = i + 1; j < nspins; ++j) d(i, j) = d(j, i) = dist(rng);
  return system_from_couplings(std::move(d));
}

}  // namespace mqsim
