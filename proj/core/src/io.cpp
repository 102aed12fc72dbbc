#include "logsp/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace logsp {

namespace {

static_assert(std::endian::native == std::endian::little,
              "LOGSP1 writer assumes a little-endian host");

void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

void write_field(std::ostream& os, const GridFunction& u) {
  os << "LOGSP1 " << u.spec.points_per_axis << " " << format_double(u.spec.half_width) << "\n";
  for (double v : u.values) put_f64(os, v);
  if (!os) throw std::runtime_error("write_field: stream failure");
}

void write_field(const std::string& path, const GridFunction& u) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_field: cannot open " + path);
  write_field(os, u);
}

GridFunction read_field(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("read_field: missing header");
  std::istringstream hs(header);
  std::string magic;
  int n = 0;
  double half_width = 0.0;
  hs >> magic >> n >> half_width;
  if (magic != "LOGSP1" || hs.fail())
    throw std::runtime_error("read_field: bad LOGSP1 header");
  GridFunction u = GridFunction::zeros(make_grid(half_width, n));
  is.read(reinterpret_cast<char*>(u.values.data()),
          static_cast<std::streamsize>(u.values.size() * sizeof(double)));
  if (is.gcount() != static_cast<std::streamsize>(u.values.size() * sizeof(double)))
    throw std::runtime_error("read_field: truncated payload");
  for (double v : u.values)
    if (!std::isfinite(v)) throw std::runtime_error("read_field: non-finite sample");
  return u;
}

GridFunction read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_field: cannot open " + path);
  return read_field(is);
}

std::string energy_report_csv_header() {
  return "I,grad_sq,weighted_V,norm_sq,N0,N1,N2,lp,l2_sq,star_sq,Ipair,J,P";
}

std::string energy_report_csv_row(const EnergyReport& r) {
  std::ostringstream os;
  os << format_double(r.I) << ',' << format_double(r.grad_sq) << ','
     << format_double(r.weighted_V) << ',' << format_double(r.norm_sq) << ','
     << format_double(r.N0) << ',' << format_double(r.N1) << ',' << format_double(r.N2) << ','
     << format_double(r.lp) << ',' << format_double(r.l2_sq) << ','
     << format_double(r.star_sq) << ',' << format_double(r.Ipair) << ','
     << format_double(r.J) << ',' << format_double(r.P);
  return os.str();
}

void write_fiber_scan_csv(std::ostream& os, const FiberScan& scan) {
  os << "t,I,deriv\n";
  for (std::size_t i = 0; i < scan.t_values.size(); ++i) {
    os << format_double(scan.t_values[i]) << ',' << format_double(scan.i_values[i]) << ','
       << format_double(scan.derivative_values[i]) << "\n";
  }
}

void write_residual_history_csv(std::ostream& os, const std::vector<double>& history) {
  os << "iter,residual\n";
  for (std::size_t i = 0; i < history.size(); ++i)
    os << i << ',' << format_double(history[i]) << "\n";
}

}  // namespace logsp
