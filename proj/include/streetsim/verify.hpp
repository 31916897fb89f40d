#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace streetsim {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::string only;  // run a single named criterion when non-empty
  int threads = 0;   // worker threads for Monte Carlo criteria (0 = default)
};

// Names of all acceptance criteria, in execution order.
std::vector<std::string> acceptance_names();

// Runs the acceptance suite (or one criterion), streaming one
// "PASS name — detail" / "FAIL name — detail" line per criterion.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options,
                                            std::ostream& progress);

// JSON report (per-check name, statistic lines embedded in detail, verdict).
std::string acceptance_report_json(const std::vector<CriterionResult>& results);

}  // namespace streetsim
