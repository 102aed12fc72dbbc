#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "logsp/energy.hpp"
#include "logsp/grid.hpp"
#include "logsp/manifolds.hpp"

namespace logsp {

// Field file format LOGSP1: one ASCII header line "LOGSP1 <n> <L>\n"
// followed by n*n little-endian 64-bit floats, row-major.
void write_field(std::ostream& os, const GridFunction& u);
void write_field(const std::string& path, const GridFunction& u);
GridFunction read_field(std::istream& is);
GridFunction read_field(const std::string& path);

// EnergyReport as a flat CSV row; column order documented in the README.
std::string energy_report_csv_header();
std::string energy_report_csv_row(const EnergyReport& r);

// FiberScan CSV with columns t, I, deriv.
void write_fiber_scan_csv(std::ostream& os, const FiberScan& scan);

// Residual history CSV with columns iter, residual.
void write_residual_history_csv(std::ostream& os, const std::vector<double>& history);

// Shortest round-trip decimal formatting used by every CSV writer.
std::string format_double(double v);

}  // namespace logsp
