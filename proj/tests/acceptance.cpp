// Acceptance harness: runs every criterion, prints one PASS/FAIL line each,
// and exits nonzero if any criterion fails.  Optional flags for debugging:
//   --only <name>   run a single criterion
//   --threads <n>   worker threads for the Monte Carlo criteria
#include <cstdlib>
#include <iostream>
#include <string>

#include "streetsim/verify.hpp"

int main(int argc, char** argv) {
  streetsim::VerifyOptions options;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      options.only = argv[++i];
    } else if (arg == "--threads" && i + 1 < argc) {
      options.threads = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only <criterion>] [--threads <n>]\n";
      return 2;
    }
  }

  const auto results = streetsim::run_acceptance(options, std::cout);
  if (results.empty()) {
    std::cerr << "no criterion matched\n";
    return 2;
  }
  size_t passed = 0;
  for (const auto& r : results) passed += r.pass;
  std::cout << (passed == results.size() ? "ALL PASS" : "FAILURES") << " ("
            << passed << "/" << results.size() << ")\n";
  return passed == results.size() ? 0 : 1;
}
