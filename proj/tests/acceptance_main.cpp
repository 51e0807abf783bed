#include <cstdlib>
#include <iostream>

#include "vcsp/acceptance.hpp"

// Runs the full acceptance suite twice (the second run feeds the
// reproducibility criterion), prints one line per criterion, and exits
// nonzero when any line is FAIL.

int main(int argc, char** argv) {
  std::uint64_t seed = 20260822;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  try {
    const vcsp::AcceptanceReport report = vcsp::run_all(seed);
    std::cout << vcsp::render_report(report);
    return report.all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance suite aborted: " << e.what() << "\n";
    return 2;
  }
}
