#pragma once

#include <string>
#include <vector>

#include "logsp/energy.hpp"
#include "logsp/manifolds.hpp"

namespace logsp {

struct SolveConfig {
  enum class SeedKind { gaussian, file };
  SeedKind seed_kind = SeedKind::gaussian;
  double seed_width = 1.0;
  double seed_amplitude = 1.0;
  std::string seed_path;  // LOGSP1 field, used when seed_kind == file

  int max_iter = 2000;
  double step0 = 1.0;
  double tol_grad = 1e-6;      // relative L2 residual
  double tol_manifold = 1e-9;  // relative manifold identity residual
  bool precondition = true;
};

void validate(const SolveConfig& config);

struct SolveResult {
  GridFunction state;
  EnergyReport report;
  double level = 0.0;                    // report.I
  std::vector<double> residual_history;  // relative L2 residual per iteration
  std::vector<double> energy_history;    // I at each accepted iterate
  double manifold_residual = 0.0;        // |I'(u)u| resp. |J(u)|, relative to ||u||^2
  double pohozaev_residual = 0.0;        // |P(u)|, absolute
  bool sign_changed = false;
  bool converged = false;
  int iterations = 0;
};

struct LevelComparison {
  double m_well = 0.0;
  double m_limit = 0.0;
  double margin = 0.0;  // m_limit - m_well
  SolveResult well;
  SolveResult limit;
};

// H1-metric direction: (-lap + V0)^{-1} g with V0 = inf V.
GridFunction precondition_gradient(const GridFunction& g, const PotentialModel& pot);

// Projected-gradient minimization of I over the Nehari manifold (p >= 4).
SolveResult minimize_nehari(const SolveConfig& config, const ProblemParams& params,
                            const PotentialModel& pot, const KernelTables& tables);

// Same over the Nehari-Pohozaev manifold (p >= 3); the potential must pass
// the ray-monotonicity and upper-bound conditions unless it is constant.
SolveResult minimize_np(const SolveConfig& config, const ProblemParams& params,
                        const PotentialModel& pot, const KernelTables& tables);

// Minimizes with V == Vinf; the manifold is chosen by p (>= 4: Nehari).
SolveResult solve_limit_problem(const SolveConfig& config, const ProblemParams& params,
                                double v_inf, const KernelTables& tables);

// Runs the well and the limit solves and reports the level gap.
LevelComparison compare_levels(const SolveConfig& config, const ProblemParams& params,
                               const PotentialModel& pot, const KernelTables& tables);

// Materializes the configured seed on the grid (shared with the CLI).
GridFunction make_seed(const SolveConfig& config, const GridSpec& spec);

}  // namespace logsp
