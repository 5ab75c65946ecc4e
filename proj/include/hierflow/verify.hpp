#pragma once

// Self-check suites run by `hierflow verify` and the acceptance binary.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace hierflow {

struct CheckResult {
  std::string name;
  bool passed = false;
  double error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Gaussian Grassmann integration identities, checked exactly.
std::vector<CheckResult> verify_grassmann_suite(std::uint64_t seed = 20240611);

/// Free-fermion two-point function, Matsubara sum and operator Wick rule.
std::vector<CheckResult> verify_fock_suite(std::uint64_t seed = 20240611);

/// "all", "grassmann" or "fock"; throws std::invalid_argument otherwise.
std::vector<CheckResult> run_verify_suite(const std::string& suite, std::uint64_t seed = 20240611);

nlohmann::ordered_json checks_to_json(const std::vector<CheckResult>& checks);

}  // namespace hierflow
