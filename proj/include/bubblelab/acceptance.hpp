#pragma once

#include <string>
#include <vector>

namespace bubble {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AcceptanceOptions {
  double tol = 1e-8;  // integrator tolerance of every trajectory in the battery
  bool diagnostics = true;
};

struct AcceptanceReport {
  std::vector<CriterionResult> primary;
  // Supplementary measurements; never counted toward pass/fail.
  std::vector<CriterionResult> diagnostics;
  double seconds = 0.0;

  bool all_pass() const;
};

// Runs the full battery on the canonical parameter set.
AcceptanceReport run_acceptance(const AcceptanceOptions& opts = {});

// One line per criterion: "PASS|FAIL  <name>  <detail>".
std::string format_report(const AcceptanceReport& report);

}  // namespace bubble
