#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace crenrich {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // worst observed deviation and the bound it was held to
  double seconds = 0.0;
};

/// Runs the library invariant suite (barycentric identities, quadrature
/// moments, duality of every element family, closed forms against the generic
/// construction, P2 reproduction, refinement behaviour). Deterministic for a
/// given seed.
std::vector<CheckResult> run_self_checks(std::uint64_t seed = 20240917);

}  // namespace crenrich
