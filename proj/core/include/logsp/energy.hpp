#pragma once

#include "logsp/grid.hpp"
#include "logsp/kernels.hpp"
#include "logsp/potential.hpp"

namespace logsp {

// Every scalar functional of one state. norm_sq is the V-weighted H1 norm
// used throughout; Ipair = I'(u)u; J and P are the auxiliary functional and
// the Pohozaev combination, tied by J = 2 Ipair - P.
struct EnergyReport {
  double I = 0.0;
  double grad_sq = 0.0;    // |grad u|_2^2
  double weighted_V = 0.0; // int V u^2
  double norm_sq = 0.0;    // grad_sq + weighted_V
  double N0 = 0.0, N1 = 0.0, N2 = 0.0;
  double lp = 0.0;         // |u|_p^p
  double l2_sq = 0.0;      // |u|_2^2
  double star_sq = 0.0;    // |u|_*^2
  double Ipair = 0.0;      // I'(u)u
  double J = 0.0;
  double P = 0.0;
};

// The ingredients needed by fibers and the solver; costs one K0 convolution.
struct EnergyTerms {
  double grad_sq = 0.0;
  double v_u2 = 0.0;    // int V u^2
  double xgv_u2 = 0.0;  // int (grad V, x) u^2
  double n0 = 0.0;
  double l2_sq = 0.0;
  double lp = 0.0;      // computed only when b > 0
};

EnergyTerms energy_terms(const GridFunction& u, const ProblemParams& params,
                         const PotentialModel& pot, const KernelTables& tables,
                         GridFunction* w0_out = nullptr);

double energy_value(const EnergyTerms& t, const ProblemParams& params);   // I
double pairing_value(const EnergyTerms& t, const ProblemParams& params);  // I'(u)u
double j_value(const EnergyTerms& t, const ProblemParams& params);        // J
double p_value(const EnergyTerms& t, const ProblemParams& params);        // P

// Full report; N0/N1/N2 each evaluated through their own kernel table so the
// split identity stays a genuine two-route check.
EnergyReport energy(const GridFunction& u, const ProblemParams& params,
                    const PotentialModel& pot, const KernelTables& tables);

// L2 representation of I'(u):
//   -lap u + V u + (1/2pi)(K0 * u^2) u - b |u|^{p-2} u.
GridFunction residual(const GridFunction& u, const ProblemParams& params,
                      const PotentialModel& pot, const KernelTables& tables);

// Same assembly with the convolution w0 = K0 * u^2 supplied by the caller
// (the solver reuses the convolution computed for the energy terms).
GridFunction residual_given_convolution(const GridFunction& u, const GridFunction& w0,
                                        const ProblemParams& params, const PotentialModel& pot);

// Same as energy() with V == Vinf (limit problem). Requires Vinf > 0.
EnergyReport limit_energy(const GridFunction& u, const ProblemParams& params, double v_inf,
                          const KernelTables& tables);

// h^2 sums of V(x/t) u^2 and calV(x/t) u^2 with the potential resampled
// analytically at the scaled nodes.
struct ScaledPotentialMoments {
  double v_moment = 0.0;
  double calv_moment = 0.0;
};
ScaledPotentialMoments scaled_potential_moments(const GridFunction& u, const PotentialModel& pot,
                                                double t);

// phi(s, v) = I(v_t) with t = e^s, evaluated in closed form (dilation laws +
// potential resampling), interpolation-free. d/ds phi = J(v_t).
double augmented_phi(double s, const GridFunction& v, const ProblemParams& params,
                     const PotentialModel& pot, const KernelTables& tables);

}  // namespace logsp
