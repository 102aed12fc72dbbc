#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace logsp::cli {

// Exit-code contract: 0 success, 1 usage/config error, 2 non-convergence
// (or a failed comparison / verification).
int cmd_solve(const RunConfig& config, std::ostream& out);
int cmd_scan(const RunConfig& config, const std::string& family, double t_min, double t_max,
             int count, std::ostream& out);
int cmd_check_potential(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_compare(const RunConfig& config, std::ostream& out);

}  // namespace logsp::cli
