#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "logsp/io.hpp"
#include "logsp/kernels.hpp"
#include "logsp/manifolds.hpp"
#include "logsp/solver.hpp"
#include "verify.hpp"

namespace logsp::cli {

namespace {

namespace fs = std::filesystem;

fs::path ensure_outdir(const RunConfig& c) {
  fs::path dir(c.output_directory);
  fs::create_directories(dir);
  return dir;
}

SolveResult dispatch_solve(const RunConfig& c, const PotentialModel& pot,
                           const KernelTables& tables) {
  if (c.problem.p < 3.0)
    throw ConfigError("key \"problem.p\" below supported range (need p >= 3)");
  if (c.problem.p >= 4.0) return minimize_nehari(c.solver, c.problem, pot, tables);
  return minimize_np(c.solver, c.problem, pot, tables);
}

void print_check(std::ostream& out, const char* name, const ConditionCheck& c) {
  out << "  " << name << ": " << (c.passed ? "PASS" : "FAIL")
      << "  margin=" << format_double(c.margin) << "  at (" << format_double(c.witness[0])
      << ", " << format_double(c.witness[1]) << ")\n";
}

}  // namespace

int cmd_solve(const RunConfig& config, std::ostream& out) {
  try {
    const GridSpec spec = grid_of(config);
    const PotentialModel pot = potential_of(config);
    const KernelTables tables = build_kernel_tables(spec);
    SolveResult res = dispatch_solve(config, pot, tables);

    const fs::path dir = ensure_outdir(config);
    if (config.write_csv) {
      std::ofstream sum(dir / "summary.csv");
      sum << "level,converged,iterations,grad_residual,manifold_residual,pohozaev_residual,"
             "sign_changed\n"
          << format_double(res.level) << ',' << (res.converged ? 1 : 0) << ',' << res.iterations
          << ',' << format_double(res.residual_history.back()) << ','
          << format_double(res.manifold_residual) << ','
          << format_double(res.pohozaev_residual) << ',' << (res.sign_changed ? 1 : 0) << "\n";
      std::ofstream hist(dir / "residuals.csv");
      write_residual_history_csv(hist, res.residual_history);
      std::ofstream rep(dir / "energy_report.csv");
      rep << energy_report_csv_header() << "\n" << energy_report_csv_row(res.report) << "\n";
    }
    if (config.write_field) write_field((dir / "state.logsp1").string(), res.state);
    std::ofstream eff(dir / "effective_config.json");
    eff << serialize_config(config);

    out << "solve: level=" << format_double(res.level) << " converged=" << res.converged
        << " iterations=" << res.iterations << " sign_changed=" << res.sign_changed << "\n";
    return res.converged ? 0 : 2;
  } catch (const ConfigError& e) {
    out << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    out << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    out << "solve failed: " << e.what() << "\n";
    return 2;
  }
}

int cmd_scan(const RunConfig& config, const std::string& family, double t_min, double t_max,
             int count, std::ostream& out) {
  try {
    if (family != "nehari" && family != "pohozaev")
      throw ConfigError("--family must be nehari or pohozaev");
    if (!(t_min > 0.0) || !(t_min < t_max))
      throw ConfigError("scan range requires 0 < t-min < t-max");
    if (count < 2) throw ConfigError("--count must be >= 2");
    const GridSpec spec = grid_of(config);
    const PotentialModel pot = potential_of(config);
    const KernelTables tables = build_kernel_tables(spec);
    GridFunction seed = make_seed(config.solver, spec);
    const std::vector<double> ts = log_spaced(t_min, t_max, count);
    FiberScan scan = (family == "nehari")
                         ? nehari_fiber(seed, config.problem, pot, tables, ts)
                         : np_fiber(seed, config.problem, pot, tables, ts);
    const fs::path dir = ensure_outdir(config);
    const fs::path file = dir / ("scan_" + family + ".csv");
    std::ofstream os(file);
    write_fiber_scan_csv(os, scan);
    int sign_changes = 0;
    for (std::size_t i = 1; i < scan.derivative_values.size(); ++i)
      if (scan.derivative_values[i - 1] > 0.0 && scan.derivative_values[i] < 0.0) ++sign_changes;
    out << "scan: wrote " << file.string() << " (" << count
        << " points, derivative sign changes: " << sign_changes << ")\n";
    return 0;
  } catch (const ConfigError& e) {
    out << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    out << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    out << "scan failed: " << e.what() << "\n";
    return 2;
  }
}

int cmd_check_potential(const RunConfig& config, std::ostream& out) {
  try {
    const GridSpec spec = grid_of(config);
    const PotentialModel pot = potential_of(config);
    PotentialReport rep = check_conditions(pot, spec, 128);
    out << "potential " << pot.name << ":\n";
    print_check(out, "positivity/well ", rep.positivity);
    print_check(out, "bounded pairing ", rep.bounded_pairing);
    print_check(out, "ray monotone    ", rep.ray_monotone);
    print_check(out, "upper bound     ", rep.upper_bound);
    print_check(out, "pairing nonneg  ", rep.pairing_nonneg);
    out << "  eta=" << format_double(rep.eta)
        << "  strict_well=" << (rep.strict_well ? 1 : 0) << "\n";
    return rep.all_passed() ? 0 : 2;
  } catch (const ConfigError& e) {
    out << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    out << "config error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  try {
    const GridSpec spec = grid_of(config);
    const PotentialModel pot = potential_of(config);
    const KernelTables tables = build_kernel_tables(spec);
    VerifyReport rep = run_verify_suite(config.problem, pot, tables);
    out << rep.render();
    return rep.all_passed() ? 0 : 2;
  } catch (const ConfigError& e) {
    out << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    out << "config error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_compare(const RunConfig& config, std::ostream& out) {
  try {
    const GridSpec spec = grid_of(config);
    const PotentialModel pot = potential_of(config);
    if (pot.constant) throw ConfigError("compare needs a non-constant well potential");
    const KernelTables tables = build_kernel_tables(spec);
    LevelComparison cmp = compare_levels(config.solver, config.problem, pot, tables);
    out << "compare: m=" << format_double(cmp.m_well) << " m_inf=" << format_double(cmp.m_limit)
        << " margin=" << format_double(cmp.margin) << "\n";
    return (cmp.margin > 0.0) ? 0 : 2;
  } catch (const ConfigError& e) {
    out << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    out << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    out << "compare failed: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace logsp::cli
