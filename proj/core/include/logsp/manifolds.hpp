#pragma once

#include <vector>

#include "logsp/energy.hpp"

namespace logsp {

enum class FiberFamily { nehari, pohozaev };

// 1D restriction of I along a scaling family. For the Nehari family the
// derivative column is h'_u(t) with h_u(t) = I(t u); for the
// Nehari-Pohozaev family it is J(Q(t, u)) = t h'_u(t) with h_u(t) = I(u_t).
struct FiberScan {
  FiberFamily family = FiberFamily::nehari;
  std::vector<double> t_values;
  std::vector<double> i_values;
  std::vector<double> derivative_values;
};

struct ProjectionResult {
  double t_star = 0.0;
  GridFunction projected;
  double residual = 0.0;  // |I'(t*u)(t*u)| resp. |J(Q(t*, u))|
  double bracket_lo = 0.0, bracket_hi = 0.0;
  int iterations = 0;
};

// Scalar outcome of the fiber root-find (projections without field work).
struct FiberRoot {
  double t_star = 0.0;
  double residual = 0.0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  int iterations = 0;
};

FiberScan nehari_fiber(const GridFunction& u, const ProblemParams& params,
                       const PotentialModel& pot, const KernelTables& tables,
                       const std::vector<double>& t_values);

// Whether the amplitude fiber has a maximizer: for p = 4 requires
// b |u|_4^4 > N0(u); for p > 4 requires N0(u) < 0 or b > 0.
bool nehari_condition(const EnergyTerms& terms, const ProblemParams& params);
bool nehari_condition(const EnergyReport& report, const ProblemParams& params);

FiberRoot nehari_fiber_maximizer(const EnergyTerms& terms, const ProblemParams& params,
                                 double tol);
ProjectionResult nehari_project(const GridFunction& u, const ProblemParams& params,
                                const PotentialModel& pot, const KernelTables& tables,
                                double tol = 1e-10);

FiberScan np_fiber(const GridFunction& u, const ProblemParams& params,
                   const PotentialModel& pot, const KernelTables& tables,
                   const std::vector<double>& t_values);

FiberRoot np_fiber_maximizer(const GridFunction& u, const EnergyTerms& terms,
                             const ProblemParams& params, const PotentialModel& pot,
                             double tol);
ProjectionResult np_project(const GridFunction& u, const ProblemParams& params,
                            const PotentialModel& pot, const KernelTables& tables,
                            double tol = 1e-10);

// min over the scan of I(u) - (1 - t^4)/4 J(u) - I(Q(t, u)); nonnegative
// (up to roundoff) under ray-monotone potentials.
double lemma55_check(const GridFunction& u, const ProblemParams& params,
                     const PotentialModel& pot, const KernelTables& tables,
                     const std::vector<double>& t_values);

// Log-spaced scan grid helper.
std::vector<double> log_spaced(double t_min, double t_max, int count);

}  // namespace logsp
