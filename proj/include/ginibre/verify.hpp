#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ginibre {

struct VerifyOptions {
  std::optional<std::string> only;  // run a single block
  double perturbation = 0.0;        // relative error injected into every left-hand side
};

struct CheckResult {
  std::string block;
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass = true;
  double perturbation = 0.0;
  std::string to_json() const;
};

// Block names accepted by VerifyOptions::only.
std::vector<std::string> verify_blocks();

// Deterministic identity suite; throws InvalidArgument for an unknown block.
VerifyReport run_verify(const VerifyOptions& options = {});

}  // namespace ginibre
