#pragma once

#include <array>
#include <functional>
#include <string>

#include "logsp/grid.hpp"

namespace logsp {

// Potential well V with an analytic radial pairing (grad V(x), x). The
// derived field calV = V - (grad V, x)/2 drives the Nehari-Pohozaev fiber.
struct PotentialModel {
  std::string name;
  AnalyticField value;           // V(x, y)
  AnalyticField radial_pairing;  // (grad V(x), x)
  double v0 = 0.0;               // inf V
  double v_inf = 0.0;            // lim_{|x|->inf} V
  bool constant = false;

  double calv(double x, double y) const { return value(x, y) - 0.5 * radial_pairing(x, y); }
};

// V(x) = 1 - 1/(2 + |x|^2); V0 = 1/2, Vinf = 1.
PotentialModel builtin_well1();
// V(x) = 1 - 1/(2 + log(1 + |x|^2)); V0 = 1/2, Vinf = 1.
PotentialModel builtin_well2();
// V == c > 0 (the limit problem's potential).
PotentialModel builtin_constant(double c);

struct ConditionCheck {
  bool passed = false;
  double margin = 0.0;              // worst-case slack (negative on failure)
  std::array<double, 2> witness{};  // sample point realizing the margin
};

struct PotentialReport {
  ConditionCheck positivity;      // inf V > 0, V <= Vinf, far field approaches Vinf
  ConditionCheck bounded_pairing; // |(grad V, x)| bounded; margin = eta estimate
  ConditionCheck ray_monotone;    // calV(t x) nondecreasing in t per ray
  ConditionCheck upper_bound;     // V + (grad V, x)/2 <= Vinf
  ConditionCheck pairing_nonneg;  // (grad V, x) >= 0
  double eta = 0.0;               // max |(grad V, x)| over all samples
  bool strict_well = false;       // inf V < Vinf (informational)

  bool all_passed() const {
    return positivity.passed && bounded_pairing.passed && ray_monotone.passed &&
           upper_bound.passed && pairing_nonneg.passed;
  }
};

// Samples V, (grad V, x) and calV at all grid nodes and along 64 rays with
// ray_samples logarithmic radii in [1e-3, 1e3]. ray_samples >= 32.
PotentialReport check_conditions(const PotentialModel& model, const GridSpec& spec,
                                 int ray_samples);

}  // namespace logsp
