#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logsp/energy.hpp"

namespace logsp::cli {

struct VerifyCheck {
  std::string name;
  double worst = 0.0;      // worst observed relative deviation / margin
  double threshold = 0.0;  // pass bound on worst
  bool passed = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
  std::string render() const;  // deterministic pass/fail table
};

// Identity suite: kernel split, gradient finite differences, dilation laws,
// the augmented-functional derivative, the J/P algebra and the fiber
// inequality margins. Deterministic for a fixed grid and thread count.
VerifyReport run_verify_suite(const ProblemParams& params, const PotentialModel& pot,
                              const KernelTables& tables);

// Deterministic sum of random Gaussian bumps (smooth, decaying).
GridFunction random_smooth_field(const GridSpec& spec, std::uint32_t seed);

}  // namespace logsp::cli
