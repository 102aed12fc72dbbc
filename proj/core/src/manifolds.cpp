#include "logsp/manifolds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace logsp {

namespace {

constexpr double kBracketLo = 1e-8;
constexpr double kBracketHi = 1e8;
constexpr int kMaxBisect = 60;

void require_nonzero(const EnergyTerms& t, const char* who) {
  if (t.l2_sq <= 0.0) throw std::invalid_argument(std::string(who) + ": u must be nonzero");
}

// Amplitude fiber h(t) = I(t u) and its derivative, from one set of terms.
struct NehariFiber {
  double norm_sq, n0, lp, b, p;
  double value(double t) const {
    double v = 0.5 * t * t * norm_sq + 0.25 * t * t * t * t * n0;
    if (b > 0.0) v -= b / p * std::pow(t, p) * lp;
    return v;
  }
  double deriv(double t) const {
    double v = t * norm_sq + t * t * t * n0;
    if (b > 0.0) v -= b * std::pow(t, p - 1.0) * lp;
    return v;
  }
  double second(double t) const {
    double v = norm_sq + 3.0 * t * t * n0;
    if (b > 0.0) v -= b * (p - 1.0) * std::pow(t, p - 2.0) * lp;
    return v;
  }
};

// Dilation fiber h(t) = I(Q(t, u)); the potential moment is resampled per t.
struct NpFiber {
  const GridFunction* u;
  const PotentialModel* pot;
  double grad_sq, n0, l2_sq, lp, b, p;

  ScaledPotentialMoments moments(double t) const {
    if (pot->constant) return {pot->v0 * l2_sq, pot->v0 * l2_sq};
    return scaled_potential_moments(*u, *pot, t);
  }
  double value(double t, const ScaledPotentialMoments& m) const {
    const double t2 = t * t, t4 = t2 * t2;
    double v = 0.5 * t4 * grad_sq + 0.5 * t2 * m.v_moment + 0.25 * t4 * n0 -
               t4 * std::log(t) / (8.0 * M_PI) * l2_sq * l2_sq;
    if (b > 0.0) v -= b / p * std::pow(t, 2.0 * p - 2.0) * lp;
    return v;
  }
  // J(Q(t, u)) = t h'(t)
  double deriv(double t, const ScaledPotentialMoments& m) const {
    const double t2 = t * t, t4 = t2 * t2;
    double v = 2.0 * t4 * grad_sq + t2 * m.calv_moment + t4 * n0 -
               t4 * std::log(t) / (2.0 * M_PI) * l2_sq * l2_sq -
               t4 / (8.0 * M_PI) * l2_sq * l2_sq;
    if (b > 0.0) v -= 2.0 * b * (p - 1.0) / p * std::pow(t, 2.0 * p - 2.0) * lp;
    return v;
  }
};

// Shared bracket-from-1 plus bisection driver on a derivative with the
// one-sign-change structure (positive left of the root).
FiberRoot bracket_and_bisect(const std::function<double(double)>& g, const char* who) {
  FiberRoot out;
  double t = 1.0, g1 = g(1.0);
  if (g1 == 0.0) {
    out.t_star = 1.0;
    out.bracket_lo = out.bracket_hi = 1.0;
    return out;
  }
  double lo, hi;
  if (g1 > 0.0) {
    do {
      lo = t;
      t *= 2.0;
      if (t > kBracketHi) throw std::runtime_error(std::string(who) + ": no sign change up to t = 1e8");
      ++out.iterations;
    } while (g(t) > 0.0);
    hi = t;
  } else {
    do {
      hi = t;
      t *= 0.5;
      if (t < kBracketLo) throw std::runtime_error(std::string(who) + ": no sign change down to t = 1e-8");
      ++out.iterations;
    } while (g(t) < 0.0);
    lo = t;
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  for (int i = 0; i < kMaxBisect && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    ++out.iterations;
    if (gm == 0.0) { lo = hi = mid; break; }
    if (gm > 0.0) lo = mid; else hi = mid;
  }
  out.t_star = 0.5 * (lo + hi);
  return out;
}

}  // namespace

std::vector<double> log_spaced(double t_min, double t_max, int count) {
  if (!(t_min > 0.0) || !(t_max > t_min) || count < 2)
    throw std::invalid_argument("log_spaced: need 0 < t_min < t_max and count >= 2");
  std::vector<double> t(count);
  const double lo = std::log(t_min), hi = std::log(t_max);
  for (int i = 0; i < count; ++i) t[i] = std::exp(lo + (hi - lo) * i / (count - 1));
  return t;
}

FiberScan nehari_fiber(const GridFunction& u, const ProblemParams& params,
                       const PotentialModel& pot, const KernelTables& tables,
                       const std::vector<double>& t_values) {
  EnergyTerms terms = energy_terms(u, params, pot, tables);
  require_nonzero(terms, "nehari_fiber");
  NehariFiber f{terms.grad_sq + terms.v_u2, terms.n0, terms.lp, params.b, params.p};
  FiberScan scan;
  scan.family = FiberFamily::nehari;
  scan.t_values = t_values;
  scan.i_values.reserve(t_values.size());
  scan.derivative_values.reserve(t_values.size());
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    const double t = t_values[i];
    if (!(t > 0.0)) throw std::invalid_argument("nehari_fiber: t values must be positive");
    if (i > 0 && !(t > t_values[i - 1]))
      throw std::invalid_argument("nehari_fiber: t values must be strictly increasing");
    scan.i_values.push_back(f.value(t));
    scan.derivative_values.push_back(f.deriv(t));
  }
  return scan;
}

bool nehari_condition(const EnergyTerms& terms, const ProblemParams& params) {
  if (params.p == 4.0) return terms.n0 - params.b * terms.lp < 0.0;
  return terms.n0 < 0.0 || params.b > 0.0;
}

bool nehari_condition(const EnergyReport& report, const ProblemParams& params) {
  if (params.p == 4.0) return report.N0 - params.b * report.lp < 0.0;
  return report.N0 < 0.0 || params.b > 0.0;
}

FiberRoot nehari_fiber_maximizer(const EnergyTerms& terms, const ProblemParams& params,
                                 double tol) {
  require_nonzero(terms, "nehari_fiber_maximizer");
  if (!(params.p >= 4.0))
    throw std::invalid_argument("nehari_fiber_maximizer: requires p >= 4");
  if (!nehari_condition(terms, params))
    throw std::runtime_error("nehari_fiber_maximizer: no maximizer (fiber increases without bound)");
  NehariFiber f{terms.grad_sq + terms.v_u2, terms.n0, terms.lp, params.b, params.p};
  FiberRoot root = bracket_and_bisect([&](double t) { return f.deriv(t); }, "nehari_fiber_maximizer");
  // One Newton polish with the closed-form second derivative.
  const double curv = f.second(root.t_star);
  if (curv != 0.0) {
    const double polished = root.t_star - f.deriv(root.t_star) / curv;
    if (polished > 0.0) root.t_star = polished;
  }
  root.residual = std::abs(root.t_star * f.deriv(root.t_star));
  const double scale = root.t_star * root.t_star * (terms.grad_sq + terms.v_u2);
  if (!(root.residual <= tol * scale))
    throw std::runtime_error("nehari_fiber_maximizer: projection residual above tolerance");
  return root;
}

ProjectionResult nehari_project(const GridFunction& u, const ProblemParams& params,
                                const PotentialModel& pot, const KernelTables& tables,
                                double tol) {
  EnergyTerms terms = energy_terms(u, params, pot, tables);
  FiberRoot root = nehari_fiber_maximizer(terms, params, tol);
  ProjectionResult out;
  out.t_star = root.t_star;
  out.projected = scale(u, root.t_star);
  out.residual = root.residual;
  out.bracket_lo = root.bracket_lo;
  out.bracket_hi = root.bracket_hi;
  out.iterations = root.iterations;
  return out;
}

FiberScan np_fiber(const GridFunction& u, const ProblemParams& params,
                   const PotentialModel& pot, const KernelTables& tables,
                   const std::vector<double>& t_values) {
  EnergyTerms terms = energy_terms(u, params, pot, tables);
  require_nonzero(terms, "np_fiber");
  NpFiber f{&u, &pot, terms.grad_sq, terms.n0, terms.l2_sq, terms.lp, params.b, params.p};
  FiberScan scan;
  scan.family = FiberFamily::pohozaev;
  scan.t_values = t_values;
  scan.i_values.reserve(t_values.size());
  scan.derivative_values.reserve(t_values.size());
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    const double t = t_values[i];
    if (!(t > 0.0)) throw std::invalid_argument("np_fiber: t values must be positive");
    if (i > 0 && !(t > t_values[i - 1]))
      throw std::invalid_argument("np_fiber: t values must be strictly increasing");
    const auto m = f.moments(t);
    scan.i_values.push_back(f.value(t, m));
    scan.derivative_values.push_back(f.deriv(t, m));
  }
  return scan;
}

FiberRoot np_fiber_maximizer(const GridFunction& u, const EnergyTerms& terms,
                             const ProblemParams& params, const PotentialModel& pot,
                             double tol) {
  require_nonzero(terms, "np_fiber_maximizer");
  if (!(params.p >= 3.0)) throw std::invalid_argument("np_fiber_maximizer: requires p >= 3");
  NpFiber f{&u, &pot, terms.grad_sq, terms.n0, terms.l2_sq, terms.lp, params.b, params.p};
  auto g = [&](double t) { return f.deriv(t, f.moments(t)); };
  FiberRoot root = bracket_and_bisect(g, "np_fiber_maximizer");
  // Secant polish (no closed-form curvature for a general potential).
  {
    double t1 = root.t_star;
    double t0 = t1 * (1.0 + 1e-7);
    double g1 = g(t1), g0 = g(t0);
    for (int i = 0; i < 3 && g1 != g0; ++i) {
      const double t2 = t1 - g1 * (t1 - t0) / (g1 - g0);
      if (!(t2 > 0.0) || !std::isfinite(t2)) break;
      t0 = t1; g0 = g1;
      t1 = t2; g1 = g(t1);
    }
    root.t_star = t1;
  }
  root.residual = std::abs(g(root.t_star));
  const double scale_sq = terms.grad_sq + terms.v_u2;
  if (!(root.residual <= tol * scale_sq))
    throw std::runtime_error("np_fiber_maximizer: projection residual above tolerance");
  return root;
}

ProjectionResult np_project(const GridFunction& u, const ProblemParams& params,
                            const PotentialModel& pot, const KernelTables& tables,
                            double tol) {
  EnergyTerms terms = energy_terms(u, params, pot, tables);
  FiberRoot root = np_fiber_maximizer(u, terms, params, pot, tol);
  ProjectionResult out;
  out.t_star = root.t_star;
  out.projected = dilate(u, root.t_star);
  out.residual = root.residual;
  out.bracket_lo = root.bracket_lo;
  out.bracket_hi = root.bracket_hi;
  out.iterations = root.iterations;
  return out;
}

double lemma55_check(const GridFunction& u, const ProblemParams& params,
                     const PotentialModel& pot, const KernelTables& tables,
                     const std::vector<double>& t_values) {
  EnergyTerms terms = energy_terms(u, params, pot, tables);
  require_nonzero(terms, "lemma55_check");
  NpFiber f{&u, &pot, terms.grad_sq, terms.n0, terms.l2_sq, terms.lp, params.b, params.p};
  const auto m1 = f.moments(1.0);
  const double i_u = f.value(1.0, m1);
  const double j_u = f.deriv(1.0, m1);
  double worst = std::numeric_limits<double>::infinity();
  for (double t : t_values) {
    if (!(t > 0.0)) throw std::invalid_argument("lemma55_check: t values must be positive");
    const double t4 = t * t * t * t;
    const double margin = i_u - 0.25 * (1.0 - t4) * j_u - f.value(t, f.moments(t));
    worst = std::min(worst, margin);
  }
  return worst;
}

}  // namespace logsp
