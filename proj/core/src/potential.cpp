#include "logsp/potential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace logsp {

PotentialModel builtin_well1() {
  PotentialModel m;
  m.name = "well1";
  m.value = [](double x, double y) { return 1.0 - 1.0 / (2.0 + x * x + y * y); };
  m.radial_pairing = [](double x, double y) {
    const double r2 = x * x + y * y;
    const double q = 2.0 + r2;
    return 2.0 * r2 / (q * q);
  };
  m.v0 = 0.5;
  m.v_inf = 1.0;
  return m;
}

PotentialModel builtin_well2() {
  PotentialModel m;
  m.name = "well2";
  m.value = [](double x, double y) {
    return 1.0 - 1.0 / (2.0 + std::log1p(x * x + y * y));
  };
  m.radial_pairing = [](double x, double y) {
    const double r2 = x * x + y * y;
    const double q = 2.0 + std::log1p(r2);
    return 2.0 * r2 / ((1.0 + r2) * q * q);
  };
  m.v0 = 0.5;
  m.v_inf = 1.0;
  return m;
}

PotentialModel builtin_constant(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("builtin_constant: c must be > 0");
  PotentialModel m;
  m.name = "constant";
  m.value = [c](double, double) { return c; };
  m.radial_pairing = [](double, double) { return 0.0; };
  m.v0 = c;
  m.v_inf = c;
  m.constant = true;
  return m;
}

namespace {
constexpr int kRayDirections = 64;
constexpr double kRayMin = 1e-3;
constexpr double kRayMax = 1e3;
constexpr double kSlack = 1e-12;

void track_min(ConditionCheck& c, double margin, double x, double y) {
  if (margin < c.margin) {
    c.margin = margin;
    c.witness = {x, y};
  }
}
}  // namespace

PotentialReport check_conditions(const PotentialModel& model, const GridSpec& spec,
                                 int ray_samples) {
  if (ray_samples < 32) throw std::invalid_argument("check_conditions: ray_samples >= 32");

  PotentialReport rep;
  rep.positivity.margin = rep.bounded_pairing.margin = rep.ray_monotone.margin =
      rep.upper_bound.margin = rep.pairing_nonneg.margin =
          std::numeric_limits<double>::infinity();

  double min_v = std::numeric_limits<double>::infinity();
  double max_v = -std::numeric_limits<double>::infinity();
  std::array<double, 2> max_v_at{};

  auto visit = [&](double x, double y) {
    const double v = model.value(x, y);
    const double g = model.radial_pairing(x, y);
    if (v < min_v) min_v = v;
    if (v > max_v) {
      max_v = v;
      max_v_at = {x, y};
    }
    rep.eta = std::max(rep.eta, std::abs(g));
    track_min(rep.positivity, v, x, y);
    track_min(rep.upper_bound, model.v_inf - (v + 0.5 * g), x, y);
    track_min(rep.pairing_nonneg, g, x, y);
  };

  const int n = spec.points_per_axis;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) visit(spec.node(ix), spec.node(iy));

  // Ray sweep: calV monotonicity plus far-field behavior of V. The sup must
  // be approached along the rays, so the gap to Vinf has to shrink toward
  // the end of each ray and end up small against the well depth.
  const double log_lo = std::log(kRayMin), log_hi = std::log(kRayMax);
  const double depth = std::max(model.v_inf - model.v0, kSlack);
  bool far_field_ok = true;
  std::array<double, 2> far_witness{};
  for (int d = 0; d < kRayDirections; ++d) {
    const double theta = 2.0 * M_PI * d / kRayDirections;
    const double cx = std::cos(theta), cy = std::sin(theta);
    double prev_calv = 0.0;
    double prev_gap = 0.0;
    for (int s = 0; s < ray_samples; ++s) {
      const double t = std::exp(log_lo + (log_hi - log_lo) * s / (ray_samples - 1));
      const double x = t * cx, y = t * cy;
      visit(x, y);
      const double cv = model.calv(x, y);
      if (s > 0) track_min(rep.ray_monotone, cv - prev_calv, x, y);
      prev_calv = cv;
      const double gap = std::abs(model.value(x, y) - model.v_inf);
      if (s + 1 == ray_samples &&
          (gap > prev_gap + kSlack || gap > 0.2 * depth + kSlack)) {
        far_field_ok = false;
        far_witness = {x, y};
      }
      if (s + 2 == ray_samples) prev_gap = gap;
    }
  }

  rep.strict_well = min_v < model.v_inf - kSlack;

  rep.positivity.passed = rep.positivity.margin > 0.0 &&
                          max_v <= model.v_inf + kSlack * std::abs(model.v_inf) && far_field_ok;
  if (max_v > model.v_inf + kSlack * std::abs(model.v_inf)) {
    rep.positivity.witness = max_v_at;
    rep.positivity.margin = model.v_inf - max_v;
  } else if (!far_field_ok) {
    rep.positivity.witness = far_witness;
  }

  rep.bounded_pairing.passed = std::isfinite(rep.eta);
  rep.bounded_pairing.margin = rep.eta;
  rep.ray_monotone.passed = rep.ray_monotone.margin >= -kSlack;
  rep.upper_bound.passed = rep.upper_bound.margin >= -kSlack;
  rep.pairing_nonneg.passed = rep.pairing_nonneg.margin >= -kSlack;
  return rep;
}

}  // namespace logsp
