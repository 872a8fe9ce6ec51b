#pragma once

// Acceptance checks over a fixture set. Each check is deterministic and
// reports the measured quantities it compared.

#include <span>
#include <string>
#include <vector>

#include "wavetm/potential.hpp"

namespace wavetm {

struct NamedSpec {
  std::string name;
  PotentialSpec spec;
};

/// Built-in fixture set (the shipped fixtures/*.json describe the same specs).
std::vector<NamedSpec> default_fixtures();

struct CheckResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 11;

/// One criterion, 1..kCriterionCount. Computation errors are caught and
/// reported as failures.
CheckResult run_criterion(int id, std::span<const NamedSpec> fixtures);

/// Criteria in `ids`, or all of them when empty.
std::vector<CheckResult> run_acceptance(std::span<const NamedSpec> fixtures,
                                        std::span<const int> ids = {});

}  // namespace wavetm
