#include "verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "logsp/manifolds.hpp"

namespace logsp::cli {

namespace {

double rel(double got, double want, double floor_scale) {
  return std::abs(got - want) / std::max(std::abs(want), floor_scale);
}

GridFunction gaussian_fixture(const GridSpec& spec) {
  return sample_function(spec, [](double x, double y) { return std::exp(-0.5 * (x * x + y * y)); });
}

}  // namespace

GridFunction random_smooth_field(const GridSpec& spec, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(-spec.half_width / 4.0, spec.half_width / 4.0);
  std::uniform_real_distribution<double> width(0.6, 1.8);
  struct Bump {
    double a, cx, cy, w;
  };
  std::vector<Bump> bumps(4);
  for (auto& b : bumps) b = {amp(rng), pos(rng), pos(rng), width(rng)};
  return sample_function(spec, [bumps](double x, double y) {
    double s = 0.0;
    for (const auto& b : bumps) {
      const double dx = x - b.cx, dy = y - b.cy;
      s += b.a * std::exp(-(dx * dx + dy * dy) / (2.0 * b.w * b.w));
    }
    return s;
  });
}

bool VerifyReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string VerifyReport::render() const {
  std::ostringstream os;
  os.setf(std::ios::scientific);
  os.precision(6);
  for (const auto& c : checks) {
    os << "verify: " << c.name;
    for (std::size_t pad = c.name.size(); pad < 22; ++pad) os << ' ';
    os << (c.passed ? "PASS" : "FAIL") << "  worst=" << c.worst
       << "  tol=" << c.threshold << "\n";
  }
  os << (all_passed() ? "verify: all checks passed\n" : "verify: FAILURES present\n");
  return os.str();
}

VerifyReport run_verify_suite(const ProblemParams& params, const PotentialModel& pot,
                              const KernelTables& tables) {
  const GridSpec& spec = tables.spec;
  VerifyReport rep;

  {  // kernel split identity on random smooth fields
    VerifyCheck c{"kernel_split", 0.0, 1e-10, false};
    for (std::uint32_t i = 0; i < 20; ++i) {
      GridFunction u = random_smooth_field(spec, 1000 + i);
      GridFunction u2 = squared(u);
      const double n0 = b_form(tables, 0, u2, u2);
      const double n1 = b_form(tables, 1, u2, u2);
      const double n2 = b_form(tables, 2, u2, u2);
      c.worst = std::max(c.worst, std::abs(n0 - (n1 - n2)) / (std::abs(n1) + std::abs(n2)));
    }
    c.passed = c.worst <= c.threshold;
    rep.checks.push_back(c);
  }

  GridFunction gauss = gaussian_fixture(spec);

  {  // directional derivative of I against the residual field
    VerifyCheck c{"gradient_fd", 0.0, 1e-5, false};
    const double eps = 1e-4;
    GridFunction r = residual(gauss, params, pot, tables);
    for (std::uint32_t i = 0; i < 5; ++i) {
      GridFunction v = random_smooth_field(spec, 2000 + i);
      GridFunction up = gauss, um = gauss;
      for (std::size_t k = 0; k < v.values.size(); ++k) {
        up.values[k] += eps * v.values[k];
        um.values[k] -= eps * v.values[k];
      }
      up.closure.reset();
      um.closure.reset();
      const double ip = energy_value(energy_terms(up, params, pot, tables), params);
      const double im = energy_value(energy_terms(um, params, pot, tables), params);
      const double fd = (ip - im) / (2.0 * eps);
      std::vector<double> prod(r.values.size());
      for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = r.values[k] * v.values[k];
      const double pairing = spec.spacing * spec.spacing *
                             compensated_sum(prod, spec.points_per_axis, spec.points_per_axis);
      c.worst = std::max(c.worst, rel(fd, pairing, 1e-12));
    }
    c.passed = c.worst <= c.threshold;
    rep.checks.push_back(c);
  }

  {  // dilation laws for the analytic Gaussian
    VerifyCheck c{"dilation_laws", 0.0, 1e-5, false};
    const double l2 = integrate(squared(gauss));
    const double grad = h1_seminorm_sq(gauss);
    const double n0 = n_functional(tables, 0, gauss);
    for (double t : {0.5, 2.0}) {
      GridFunction ut = dilate(gauss, t);
      c.worst = std::max(c.worst, rel(integrate(squared(ut)), t * t * l2, 1e-12));
      c.worst = std::max(c.worst, rel(h1_seminorm_sq(ut), t * t * t * t * grad, 1e-12));
      for (double q : {3.0, 4.0}) {
        const double want = std::pow(t, 2.0 * q - 2.0) * lp_norm_p(gauss, q);
        c.worst = std::max(c.worst, rel(lp_norm_p(ut, q), want, 1e-12));
      }
      const double want_n0 =
          t * t * t * t * n0 - t * t * t * t * std::log(t) / (2.0 * M_PI) * l2 * l2;
      c.worst = std::max(c.worst, rel(n_functional(tables, 0, ut), want_n0, 1e-12));
    }
    c.passed = c.worst <= c.threshold;
    rep.checks.push_back(c);
  }

  {  // d/ds of the augmented functional against J along the dilation fiber
    VerifyCheck c{"augmented_phi_ds", 0.0, 1e-5, false};
    const double ds = 1e-5;
    for (double s : {-0.5, 0.0, 0.5}) {
      const double fd = (augmented_phi(s + ds, gauss, params, pot, tables) -
                         augmented_phi(s - ds, gauss, params, pot, tables)) /
                        (2.0 * ds);
      FiberScan f = np_fiber(gauss, params, pot, tables, {std::exp(s)});
      c.worst = std::max(c.worst, rel(fd, f.derivative_values[0], 1e-12));
    }
    c.passed = c.worst <= c.threshold;
    rep.checks.push_back(c);
  }

  {  // J = 2 I'(u)u - P(u)
    VerifyCheck c{"j_identity", 0.0, 1e-10, false};
    for (std::uint32_t i = 0; i < 20; ++i) {
      GridFunction u = random_smooth_field(spec, 3000 + i);
      EnergyTerms t = energy_terms(u, params, pot, tables);
      const double j = j_value(t, params);
      const double two_ip = 2.0 * pairing_value(t, params);
      const double p = p_value(t, params);
      const double scale = std::max({std::abs(j), std::abs(two_ip), std::abs(p), 1e-12});
      c.worst = std::max(c.worst, std::abs(j - (two_ip - p)) / scale);
    }
    c.passed = c.worst <= c.threshold;
    rep.checks.push_back(c);
  }

  {  // fiber inequality margins
    VerifyCheck c{"lemma55_margin", 0.0, 0.0, false};
    std::vector<double> ts = log_spaced(0.25, 4.0, 41);
    double worst = 0.0;  // most negative normalized margin
    for (std::uint32_t i = 0; i < 3; ++i) {
      GridFunction u = (i == 0) ? gauss : random_smooth_field(spec, 4000 + i);
      const double margin = lemma55_check(u, params, pot, tables, ts);
      const double i_u = energy_value(energy_terms(u, params, pot, tables), params);
      worst = std::min(worst, margin / (1.0 + std::abs(i_u)));
    }
    c.worst = worst;
    c.threshold = -1e-8;
    c.passed = worst >= c.threshold;
    rep.checks.push_back(c);
  }

  return rep;
}

}  // namespace logsp::cli
