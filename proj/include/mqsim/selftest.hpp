#pragma once

#include <string>
#include <vector>

namespace mqsim {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Full verification suite: selection rules, the exact two-spin oracle,
/// dual-route decomposition agreement, network/collapsed equivalence,
/// Parseval and symmetry across all runs, 2D consistency, the spin-counting
/// trend, average-Hamiltonian cycle validation, secularity and dipolar
/// decay, and worker-count determinism.  When out_dir is non-empty the
/// standard result bundle is written there.
std::vector<CheckResult> run_selftest(int workers, const std::string& out_dir = "");

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace mqsim
