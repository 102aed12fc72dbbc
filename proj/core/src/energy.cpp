#include "logsp/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "logsp/threading.hpp"

namespace logsp {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

double weighted_quadrature(const GridFunction& u, const std::vector<double>& w) {
  const int n = u.spec.points_per_axis;
  const double h = u.spec.spacing;
  return h * h * compensated_sum(w, n, n);
}
}  // namespace

EnergyTerms energy_terms(const GridFunction& u, const ProblemParams& params,
                         const PotentialModel& pot, const KernelTables& tables,
                         GridFunction* w0_out) {
  if (!(u.spec == tables.spec)) throw std::invalid_argument("energy_terms: grid mismatch");
  validate(params);
  EnergyTerms t;
  t.grad_sq = h1_seminorm_sq(u);

  const int n = u.spec.points_per_axis;
  std::vector<double> sq(u.values.size());
  parallel_for(0, u.values.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) sq[i] = u.values[i] * u.values[i];
  });
  t.l2_sq = weighted_quadrature(u, sq);
  if (pot.constant) {
    t.v_u2 = pot.v0 * t.l2_sq;
    t.xgv_u2 = 0.0;
  } else {
    std::vector<double> vw(u.values.size()), gw(u.values.size());
    parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t ix = lo; ix < hi; ++ix) {
        const double x = u.spec.node(static_cast<int>(ix));
        for (int iy = 0; iy < n; ++iy) {
          const double y = u.spec.node(iy);
          const double uu = sq[ix * n + iy];
          vw[ix * n + iy] = pot.value(x, y) * uu;
          gw[ix * n + iy] = pot.radial_pairing(x, y) * uu;
        }
      }
    });
    t.v_u2 = weighted_quadrature(u, vw);
    t.xgv_u2 = weighted_quadrature(u, gw);
  }

  GridFunction u2;
  u2.spec = u.spec;
  u2.values = std::move(sq);
  GridFunction w0 = convolve(tables, 0, u2);
  std::vector<double> prod(u.values.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = w0.values[i] * u2.values[i];
  t.n0 = weighted_quadrature(u, prod) / kTwoPi;
  if (params.b > 0.0) t.lp = lp_norm_p(u, params.p);
  if (w0_out) *w0_out = std::move(w0);
  return t;
}

double energy_value(const EnergyTerms& t, const ProblemParams& params) {
  double v = 0.5 * (t.grad_sq + t.v_u2) + 0.25 * t.n0;
  if (params.b > 0.0) v -= params.b / params.p * t.lp;
  return v;
}

double pairing_value(const EnergyTerms& t, const ProblemParams& params) {
  double v = t.grad_sq + t.v_u2 + t.n0;
  if (params.b > 0.0) v -= params.b * t.lp;
  return v;
}

double j_value(const EnergyTerms& t, const ProblemParams& params) {
  double v = 2.0 * t.grad_sq + (t.v_u2 - 0.5 * t.xgv_u2) + t.n0 -
             t.l2_sq * t.l2_sq / (8.0 * M_PI);
  if (params.b > 0.0) v -= 2.0 * params.b * (params.p - 1.0) / params.p * t.lp;
  return v;
}

double p_value(const EnergyTerms& t, const ProblemParams& params) {
  double v = (t.v_u2 + 0.5 * t.xgv_u2) + t.n0 + t.l2_sq * t.l2_sq / (8.0 * M_PI);
  if (params.b > 0.0) v -= 2.0 * params.b / params.p * t.lp;
  return v;
}

EnergyReport energy(const GridFunction& u, const ProblemParams& params,
                    const PotentialModel& pot, const KernelTables& tables) {
  EnergyTerms t = energy_terms(u, params, pot, tables);
  if (params.b == 0.0) t.lp = lp_norm_p(u, params.p);

  EnergyReport r;
  r.grad_sq = t.grad_sq;
  r.weighted_V = t.v_u2;
  r.norm_sq = t.grad_sq + t.v_u2;
  r.N0 = t.n0;
  GridFunction u2 = squared(u);
  r.N1 = b_form(tables, 1, u2, u2);
  r.N2 = b_form(tables, 2, u2, u2);
  r.lp = t.lp;
  r.l2_sq = t.l2_sq;
  r.star_sq = star_norm_sq(u);
  r.I = energy_value(t, params);
  r.Ipair = pairing_value(t, params);
  r.J = j_value(t, params);
  r.P = p_value(t, params);
  return r;
}

GridFunction residual_given_convolution(const GridFunction& u, const GridFunction& w0,
                                        const ProblemParams& params, const PotentialModel& pot) {
  validate(params);
  GridFunction out = spectral_minus_laplacian(u);
  const int n = u.spec.points_per_axis;
  const double b = params.b, pm1 = params.p - 1.0;
  parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ix = lo; ix < hi; ++ix) {
      const double x = u.spec.node(static_cast<int>(ix));
      for (int iy = 0; iy < n; ++iy) {
        const std::size_t idx = ix * n + iy;
        const double v = u.values[idx];
        double r = out.values[idx] + pot.value(x, u.spec.node(iy)) * v +
                   w0.values[idx] * v / kTwoPi;
        if (b > 0.0 && v != 0.0) r -= b * std::copysign(std::pow(std::abs(v), pm1), v);
        out.values[idx] = r;
      }
    }
  });
  return out;
}

GridFunction residual(const GridFunction& u, const ProblemParams& params,
                      const PotentialModel& pot, const KernelTables& tables) {
  if (!(u.spec == tables.spec)) throw std::invalid_argument("residual: grid mismatch");
  GridFunction w0 = convolve(tables, 0, squared(u));
  return residual_given_convolution(u, w0, params, pot);
}

EnergyReport limit_energy(const GridFunction& u, const ProblemParams& params, double v_inf,
                          const KernelTables& tables) {
  if (!(v_inf > 0.0)) throw std::invalid_argument("limit_energy: Vinf must be > 0");
  return energy(u, params, builtin_constant(v_inf), tables);
}

ScaledPotentialMoments scaled_potential_moments(const GridFunction& u, const PotentialModel& pot,
                                                double t) {
  if (!(t > 0.0)) throw std::invalid_argument("scaled_potential_moments: t must be > 0");
  const int n = u.spec.points_per_axis;
  if (pot.constant) {
    std::vector<double> sq(u.values.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = u.values[i] * u.values[i];
    const double moment = pot.v0 * weighted_quadrature(u, sq);
    return {moment, moment};
  }
  std::vector<double> vw(u.values.size()), cw(u.values.size());
  const double inv_t = 1.0 / t;
  parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ix = lo; ix < hi; ++ix) {
      const double x = u.spec.node(static_cast<int>(ix)) * inv_t;
      for (int iy = 0; iy < n; ++iy) {
        const double y = u.spec.node(iy) * inv_t;
        const double v = u.values[ix * n + iy];
        const double uu = v * v;
        const double vv = pot.value(x, y);
        const double gg = pot.constant ? 0.0 : pot.radial_pairing(x, y);
        vw[ix * n + iy] = vv * uu;
        cw[ix * n + iy] = (vv - 0.5 * gg) * uu;
      }
    }
  });
  ScaledPotentialMoments m;
  m.v_moment = weighted_quadrature(u, vw);
  m.calv_moment = weighted_quadrature(u, cw);
  return m;
}

double augmented_phi(double s, const GridFunction& v, const ProblemParams& params,
                     const PotentialModel& pot, const KernelTables& tables) {
  const EnergyTerms t = energy_terms(v, params, pot, tables);
  const double e2s = std::exp(2.0 * s), e4s = e2s * e2s;
  const double beta = scaled_potential_moments(v, pot, std::exp(s)).v_moment;
  double phi = 0.5 * e4s * t.grad_sq + 0.5 * e2s * beta + 0.25 * e4s * t.n0 -
               s * e4s / (8.0 * M_PI) * t.l2_sq * t.l2_sq;
  if (params.b > 0.0) phi -= params.b / params.p * std::exp(2.0 * s * (params.p - 1.0)) * t.lp;
  return phi;
}

}  // namespace logsp
