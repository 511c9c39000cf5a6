// Acceptance runner: one PASS/FAIL line per criterion on the default
// configuration.  `--criterion N` runs a single criterion, `--list` names them.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "lagphase/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--list") {
      lagphase::list_checks(std::cout);
      return 0;
    }
    if (arg == "--criterion" && i + 1 < argc) {
      ids.push_back(std::atoi(argv[++i]));
      continue;
    }
    std::cerr << "usage: acceptance [--list] [--criterion N]...\n";
    return 2;
  }
  return lagphase::run_checks(lagphase::Config{}, ids, std::cout) ? 0 : 1;
}
