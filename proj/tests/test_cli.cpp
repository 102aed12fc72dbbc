#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "verify.hpp"

using namespace logsp;
using namespace logsp::cli;
using logsp::testing::spec96;

namespace {

RunConfig tiny_config() {
  RunConfig c = parse_config_text(R"({
    "grid": {"L": 8.0, "n": 48},
    "problem": {"p": 4.0, "b": 1.0},
    "potential": {"name": "constant", "params": {"c": 1.0}},
    "solver": {"max_iter": 3000, "tol_grad": 1e-6, "tol_manifold": 1e-8}
  })");
  c.output_directory = (std::filesystem::temp_directory_path() / "logsp_cli_test").string();
  return c;
}

}  // namespace

TEST_CASE("config parsing: defaults, unknown keys, validation") {
  RunConfig c = parse_config_text("{}");
  CHECK(c.grid_L == 12.0);
  CHECK(c.grid_n == 256);
  CHECK(c.problem.p == 4.0);
  CHECK(c.potential_name == "well1");

  CHECK_THROWS_WITH_AS(parse_config_text(R"({"grid": {"bogus": 1}})"),
                       doctest::Contains("grid.bogus"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"grid": {"n": 15}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"problem": {"p": 1.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"potential": {"name": "nope"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"solver": {"seed": {"type": "file"}}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("not json"), ConfigError);

  // round trip through the serializer
  RunConfig c2 = parse_config_text(serialize_config(c));
  CHECK(serialize_config(c2) == serialize_config(c));
}

TEST_CASE("cmd_solve: exit codes and artifacts") {
  RunConfig c = tiny_config();
  std::ostringstream out;
  CHECK(cmd_solve(c, out) == 0);
  namespace fs = std::filesystem;
  const fs::path dir(c.output_directory);
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(fs::exists(dir / "residuals.csv"));
  CHECK(fs::exists(dir / "state.logsp1"));
  CHECK(fs::exists(dir / "effective_config.json"));

  // re-running from the effective config reproduces the artifacts bit for bit
  std::ifstream eff(dir / "effective_config.json");
  std::stringstream buf;
  buf << eff.rdbuf();
  RunConfig c2 = parse_config_text(buf.str());
  c2.output_directory = c.output_directory + "_again";
  std::ostringstream out2;
  CHECK(cmd_solve(c2, out2) == 0);
  const std::string a = out.str(), b = out2.str();
  CHECK(a.substr(0, a.find("iterations")) == b.substr(0, b.find("iterations")));
  auto slurp = [](const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  const fs::path dir2(c2.output_directory);
  CHECK(slurp(dir / "summary.csv") == slurp(dir2 / "summary.csv"));
  CHECK(slurp(dir / "state.logsp1") == slurp(dir2 / "state.logsp1"));

  // p below the supported solver range
  RunConfig low = c;
  low.problem.p = 2.5;
  std::ostringstream out3;
  CHECK(cmd_solve(low, out3) == 1);
  CHECK(out3.str().find("below supported range") != std::string::npos);

  // forced non-convergence
  RunConfig stuck = c;
  stuck.solver.max_iter = 1;
  std::ostringstream out4;
  CHECK(cmd_solve(stuck, out4) == 2);
}

TEST_CASE("cmd_scan") {
  RunConfig c = tiny_config();
  std::ostringstream out;
  CHECK(cmd_scan(c, "nehari", 0.01, 100.0, 400, out) == 0);
  CHECK(out.str().find("derivative sign changes: 1") != std::string::npos);

  std::ostringstream bad;
  CHECK(cmd_scan(c, "nehari", 2.0, 1.0, 100, bad) == 1);
  std::ostringstream badfam;
  CHECK(cmd_scan(c, "sideways", 0.1, 1.0, 100, badfam) == 1);
  std::ostringstream badcount;
  CHECK(cmd_scan(c, "nehari", 0.1, 1.0, 1, badcount) == 1);

  // pohozaev fiber at constant potential: I decreases past the maximizer
  std::ostringstream pout;
  CHECK(cmd_scan(c, "pohozaev", 1.0, 100.0, 200, pout) == 0);
  std::ifstream csv(std::filesystem::path(c.output_directory) / "scan_pohozaev.csv");
  std::string line;
  std::getline(csv, line);  // header
  std::vector<double> ivals;
  while (std::getline(csv, line)) {
    const auto c1 = line.find(','), c2 = line.rfind(',');
    ivals.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
  }
  REQUIRE(ivals.size() == 200);
  std::size_t arg = 0;
  for (std::size_t i = 0; i < ivals.size(); ++i)
    if (ivals[i] > ivals[arg]) arg = i;
  for (std::size_t i = std::max<std::size_t>(arg, 1); i + 1 < ivals.size(); ++i)
    CHECK(ivals[i + 1] < ivals[i]);
  CHECK(ivals.back() < 0.0);
}

TEST_CASE("cmd_solve dispatches 3 <= p < 4 to the Nehari-Pohozaev manifold") {
  RunConfig c = tiny_config();
  c.problem = ProblemParams{3.0, 1.0};
  c.solver.tol_grad = 1e-5;  // coarse grid plateau
  c.output_directory += "_np";
  std::ostringstream out;
  CHECK(cmd_solve(c, out) == 0);
  CHECK(out.str().find("converged=1") != std::string::npos);
}

TEST_CASE("cmd_check_potential") {
  RunConfig c = tiny_config();
  c.potential_name = "well1";
  std::ostringstream out;
  CHECK(cmd_check_potential(c, out) == 0);

  RunConfig k = tiny_config();  // constant passes with eta = 0
  std::ostringstream outk;
  CHECK(cmd_check_potential(k, outk) == 0);
  CHECK(outk.str().find("eta=0") != std::string::npos);
}

TEST_CASE("cmd_verify and the corrupted-tables hook") {
  RunConfig c = tiny_config();
  c.grid_n = 128;
  c.grid_L = 12.0;
  std::ostringstream out;
  CHECK(cmd_verify(c, out) == 0);
  CHECK(out.str().find("all checks passed") != std::string::npos);

  // b = 0 configuration also verifies
  RunConfig b0 = c;
  b0.problem = ProblemParams{3.0, 0.0};
  std::ostringstream out0;
  CHECK(cmd_verify(b0, out0) == 0);

  // corrupt a kernel table and re-run the underlying suite
  const GridSpec spec = grid_of(c);
  KernelTables tables = build_kernel_tables(spec);
  tables.spectra[0][1000] += 0.5;
  VerifyReport rep = run_verify_suite(c.problem, potential_of(c), tables);
  CHECK_FALSE(rep.all_passed());
}

TEST_CASE("cmd_verify output is deterministic") {
  RunConfig c = tiny_config();
  c.grid_n = 128;
  c.grid_L = 12.0;
  std::ostringstream a, b;
  CHECK(cmd_verify(c, a) == 0);
  CHECK(cmd_verify(c, b) == 0);
  CHECK(a.str() == b.str());
}

TEST_CASE("cmd_compare") {
  RunConfig c = tiny_config();
  c.potential_name = "well1";
  c.solver.tol_grad = 1e-6;
  std::ostringstream out;
  CHECK(cmd_compare(c, out) == 0);
  CHECK(out.str().find("margin=") != std::string::npos);

  RunConfig k = tiny_config();  // constant potential rejected
  std::ostringstream outk;
  CHECK(cmd_compare(k, outk) == 1);
}
