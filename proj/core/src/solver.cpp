#include "logsp/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "logsp/io.hpp"
#include "logsp/threading.hpp"

namespace logsp {

namespace {

constexpr double kArmijoC = 1e-4;
constexpr double kShrink = 0.5;
constexpr int kMaxBacktracks = 40;
constexpr double kStepCap = 1e3;

struct Iterate {
  GridFunction state;
  GridFunction w0;  // K0 * state^2
  EnergyTerms terms;
  double value = 0.0;  // I(state)
};

double l2_norm(const GridFunction& f) {
  const int n = f.spec.points_per_axis;
  std::vector<double> sq(f.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = f.values[i] * f.values[i];
  return std::sqrt(f.spec.spacing * f.spec.spacing * compensated_sum(sq, n, n));
}

double l2_inner(const GridFunction& a, const GridFunction& b) {
  const int n = a.spec.points_per_axis;
  std::vector<double> prod(a.values.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a.values[i] * b.values[i];
  return a.spec.spacing * a.spec.spacing * compensated_sum(prod, n, n);
}

GridFunction axpy(const GridFunction& u, double alpha, const GridFunction& d) {
  GridFunction out;
  out.spec = u.spec;
  out.values.resize(u.values.size());
  parallel_for(0, u.values.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out.values[i] = u.values[i] + alpha * d.values[i];
  });
  return out;
}

// Exact rescaling of terms and cached convolution under u -> t u.
Iterate scaled_iterate(const GridFunction& u, const GridFunction& w0, const EnergyTerms& t,
                       const ProblemParams& params, double s) {
  Iterate it;
  it.state = scale(u, s);
  it.w0 = scale(w0, s * s);
  const double s2 = s * s, s4 = s2 * s2;
  it.terms = t;
  it.terms.grad_sq = s2 * t.grad_sq;
  it.terms.v_u2 = s2 * t.v_u2;
  it.terms.xgv_u2 = s2 * t.xgv_u2;
  it.terms.n0 = s4 * t.n0;
  it.terms.l2_sq = s2 * t.l2_sq;
  it.terms.lp = std::pow(s, params.p) * t.lp;
  it.value = energy_value(it.terms, params);
  return it;
}

bool detect_sign_change(const GridFunction& u) {
  double mn = 0.0, mx = 0.0, amax = 0.0;
  for (double v : u.values) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
    amax = std::max(amax, std::abs(v));
  }
  const double delta = 1e-8 * amax;
  return mn < -delta && mx > delta;
}

enum class Manifold { nehari, pohozaev };

// Retraction onto the configured manifold. Throws when the trial has no
// projection (no maximizer / bracket failure); the line search treats that
// as a rejected step.
Iterate retract(Manifold mf, const GridFunction& w, const ProblemParams& params,
                const PotentialModel& pot, const KernelTables& tables, double proj_tol) {
  Iterate trial;
  trial.terms = energy_terms(w, params, pot, tables, &trial.w0);
  if (mf == Manifold::nehari) {
    FiberRoot root = nehari_fiber_maximizer(trial.terms, params, proj_tol);
    return scaled_iterate(w, trial.w0, trial.terms, params, root.t_star);
  }
  FiberRoot root = np_fiber_maximizer(w, trial.terms, params, pot, proj_tol);
  Iterate out;
  out.state = dilate(w, root.t_star);
  out.terms = energy_terms(out.state, params, pot, tables, &out.w0);
  out.value = energy_value(out.terms, params);
  return out;
}

// Amplitude pre-balance for the dilation-retracted path: picks alpha > 0 with
// J(alpha u) = 0 when such a root exists, so the first fiber maximizer sits
// near t = 1 and the dilated seed stays resolved on the grid. J(alpha u) is
// a closed-form polynomial in alpha; no extra field work.
GridFunction prebalance_np_seed(GridFunction seed, const EnergyTerms& t,
                                const ProblemParams& params) {
  const double a_coef = 2.0 * t.grad_sq + (t.v_u2 - 0.5 * t.xgv_u2);
  const double b_coef = t.n0 - t.l2_sq * t.l2_sq / (8.0 * M_PI);
  const double c_coef = (params.b > 0.0) ? 2.0 * params.b * (params.p - 1.0) / params.p * t.lp
                                         : 0.0;
  auto g = [&](double alpha) {
    return a_coef + alpha * alpha * b_coef -
           c_coef * std::pow(alpha, params.p - 2.0);
  };
  // g(0+) = a_coef > 0; find the first sign change by expansion.
  double lo = 1.0, hi = 1.0;
  if (g(1.0) > 0.0) {
    do {
      hi *= 2.0;
      if (hi > 1e8) return seed;  // no admissible rescaling; keep the seed
    } while (g(hi) > 0.0);
    lo = hi * 0.5;
  } else {
    do {
      lo *= 0.5;
      if (lo < 1e-8) return seed;
    } while (g(lo) < 0.0);
    hi = lo * 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return scale(seed, 0.5 * (lo + hi));
}

SolveResult run_descent(Manifold mf, const SolveConfig& config, const ProblemParams& params,
                        const PotentialModel& pot, const KernelTables& tables) {
  validate(config);
  validate(params);

  GridFunction seed = make_seed(config, tables.spec);
  const double proj_tol = 1e-10;

  if (mf == Manifold::pohozaev) {
    EnergyTerms seed_terms = energy_terms(seed, params, pot, tables);
    seed = prebalance_np_seed(std::move(seed), seed_terms, params);
  }
  Iterate cur = retract(mf, seed, params, pot, tables, proj_tol);

  SolveResult result;
  result.residual_history.reserve(config.max_iter);
  result.energy_history.push_back(cur.value);
  double step = config.step0;

  for (int iter = 0; iter < config.max_iter; ++iter) {
    result.iterations = iter;
    GridFunction grad = residual_given_convolution(cur.state, cur.w0, params, pot);
    const double grad_norm = l2_norm(grad);
    const double state_norm = std::sqrt(cur.terms.grad_sq + cur.terms.v_u2);
    const double manifold_raw = (mf == Manifold::nehari)
                                    ? std::abs(pairing_value(cur.terms, params))
                                    : std::abs(j_value(cur.terms, params));
    const double rel_res = grad_norm / state_norm;
    result.residual_history.push_back(rel_res);
    const double rel_manifold = manifold_raw / (state_norm * state_norm);
    if (rel_res <= config.tol_grad && rel_manifold <= config.tol_manifold) {
      result.converged = true;
      break;
    }

    GridFunction dir = config.precondition ? precondition_gradient(grad, pot) : grad;
    for (auto& v : dir.values) v = -v;
    const double slope = l2_inner(grad, dir);  // negative

    bool accepted = false;
    double alpha = std::min(step * 2.0, kStepCap);
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      try {
        Iterate trial = retract(mf, axpy(cur.state, alpha, dir), params, pot, tables, proj_tol);
        if (trial.value <= cur.value + kArmijoC * alpha * slope) {
          cur = std::move(trial);
          result.energy_history.push_back(cur.value);
          step = alpha;
          accepted = true;
          break;
        }
      } catch (const std::runtime_error&) {
        // projection failed for this trial; shrink
      }
      alpha *= kShrink;
    }
    if (!accepted) break;  // stalled; converged stays false
  }

  result.state = cur.state;
  result.report = energy(cur.state, params, pot, tables);
  result.level = result.report.I;
  const double nsq = result.report.norm_sq;
  result.manifold_residual = (mf == Manifold::nehari ? std::abs(result.report.Ipair)
                                                     : std::abs(result.report.J)) / nsq;
  result.pohozaev_residual = std::abs(result.report.P);
  result.sign_changed = detect_sign_change(cur.state);
  return result;
}

}  // namespace

void validate(const SolveConfig& config) {
  if (config.max_iter < 1) throw std::invalid_argument("SolveConfig: max_iter >= 1");
  if (!(config.step0 > 0.0)) throw std::invalid_argument("SolveConfig: step0 must be > 0");
  if (!(config.tol_grad > 0.0) || !(config.tol_manifold > 0.0))
    throw std::invalid_argument("SolveConfig: tolerances must be positive");
  if (config.seed_kind == SolveConfig::SeedKind::gaussian) {
    if (!(config.seed_width > 0.0)) throw std::invalid_argument("SolveConfig: seed width must be > 0");
    if (config.seed_amplitude == 0.0)
      throw std::invalid_argument("SolveConfig: zero seed rejected");
  }
}

GridFunction make_seed(const SolveConfig& config, const GridSpec& spec) {
  if (config.seed_kind == SolveConfig::SeedKind::file) {
    GridFunction u = read_field(config.seed_path);
    if (!(u.spec == spec)) throw std::invalid_argument("seed file grid does not match config grid");
    return u;
  }
  const double w = config.seed_width, a = config.seed_amplitude;
  return sample_function(spec, [w, a](double x, double y) {
    return a * std::exp(-(x * x + y * y) / (2.0 * w * w));
  });
}

GridFunction precondition_gradient(const GridFunction& g, const PotentialModel& pot) {
  return spectral_helmholtz_inverse(g, pot.v0);
}

SolveResult minimize_nehari(const SolveConfig& config, const ProblemParams& params,
                            const PotentialModel& pot, const KernelTables& tables) {
  if (!(params.p >= 4.0)) throw std::invalid_argument("minimize_nehari: requires p >= 4");
  return run_descent(Manifold::nehari, config, params, pot, tables);
}

SolveResult minimize_np(const SolveConfig& config, const ProblemParams& params,
                        const PotentialModel& pot, const KernelTables& tables) {
  if (!(params.p >= 3.0)) throw std::invalid_argument("minimize_np: requires p >= 3");
  if (!pot.constant) {
    PotentialReport rep = check_conditions(pot, tables.spec, 128);
    if (!rep.ray_monotone.passed || !rep.upper_bound.passed)
      throw std::invalid_argument("minimize_np: potential fails the fiber monotonicity conditions");
  }
  return run_descent(Manifold::pohozaev, config, params, pot, tables);
}

SolveResult solve_limit_problem(const SolveConfig& config, const ProblemParams& params,
                                double v_inf, const KernelTables& tables) {
  if (!(v_inf > 0.0)) throw std::invalid_argument("solve_limit_problem: Vinf must be > 0");
  const PotentialModel limit = builtin_constant(v_inf);
  if (params.p >= 4.0) return minimize_nehari(config, params, limit, tables);
  return minimize_np(config, params, limit, tables);
}

LevelComparison compare_levels(const SolveConfig& config, const ProblemParams& params,
                               const PotentialModel& pot, const KernelTables& tables) {
  if (pot.constant) throw std::invalid_argument("compare_levels: needs a non-constant well");
  if (!(pot.v0 > 0.0) || !(pot.v0 < pot.v_inf))
    throw std::invalid_argument("compare_levels: potential is not a positive bounded well");
  LevelComparison cmp;
  cmp.well = (params.p >= 4.0) ? minimize_nehari(config, params, pot, tables)
                               : minimize_np(config, params, pot, tables);
  cmp.limit = solve_limit_problem(config, params, pot.v_inf, tables);
  if (!cmp.well.converged || !cmp.limit.converged)
    throw std::runtime_error("compare_levels: a solve did not converge");
  cmp.m_well = cmp.well.level;
  cmp.m_limit = cmp.limit.level;
  cmp.margin = cmp.m_limit - cmp.m_well;
  return cmp;
}

}  // namespace logsp
