// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  The checks themselves live in the library so the CLI selftest
// runs exactly the same suite.

#include "mqsim/selftest.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
  const int workers = argc > 1 ? std::atoi(argv[1]) : 4;
  const auto results = mqsim::run_selftest(workers);

  for (const auto& r : results)
    std::printf("[%s] %-32s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());

  size_t passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  std::printf("%zu/%zu acceptance checks passed\n", passed, results.size());
  return mqsim::all_passed(results) ? 0 : 1;
}
