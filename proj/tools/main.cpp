#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "logsp/threading.hpp"

int main(int argc, char** argv) {
  CLI::App app{"logsp: planar log-kernel Schrodinger-Poisson ground-state laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON run configuration")->required();
    cmd->add_option("--out", out_dir, "output directory (overrides config)");
    cmd->add_option("--threads", threads, "worker threads (env LOGSP_THREADS as fallback)");
  };

  CLI::App* solve = app.add_subcommand("solve", "minimize I over the configured manifold");
  add_common(solve);

  CLI::App* scan = app.add_subcommand("scan", "tabulate a fiber I(t), derivative(t)");
  add_common(scan);
  std::string family = "nehari";
  double t_min = 0.01, t_max = 100.0;
  int count = 400;
  scan->add_option("--family", family, "nehari or pohozaev");
  scan->add_option("--t-min", t_min, "scan start (> 0)");
  scan->add_option("--t-max", t_max, "scan end");
  scan->add_option("--count", count, "number of points");

  CLI::App* checkp = app.add_subcommand("check-potential", "evaluate the well conditions");
  add_common(checkp);

  CLI::App* verify = app.add_subcommand("verify", "run the identity suite");
  add_common(verify);

  CLI::App* compare = app.add_subcommand("compare", "well level versus limit level");
  add_common(compare);

  CLI11_PARSE(app, argc, argv);

  if (threads <= 0) {
    if (const char* env = std::getenv("LOGSP_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) logsp::set_thread_count(threads);

  logsp::cli::RunConfig cfg;
  try {
    cfg = logsp::cli::load_config(config_path);
  } catch (const logsp::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  if (!out_dir.empty()) cfg.output_directory = out_dir;

  if (solve->parsed()) return logsp::cli::cmd_solve(cfg, std::cout);
  if (scan->parsed()) return logsp::cli::cmd_scan(cfg, family, t_min, t_max, count, std::cout);
  if (checkp->parsed()) return logsp::cli::cmd_check_potential(cfg, std::cout);
  if (verify->parsed()) return logsp::cli::cmd_verify(cfg, std::cout);
  if (compare->parsed()) return logsp::cli::cmd_compare(cfg, std::cout);
  return 1;
}
