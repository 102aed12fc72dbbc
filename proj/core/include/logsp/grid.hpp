#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace logsp {

// Uniform cell-centered grid on [-L, L]^2. Nodes x_i = -L + (i + 1/2) h,
// h = 2L/n, so no node sits on the origin.
struct GridSpec {
  double half_width = 0.0;   // L
  int points_per_axis = 0;   // n, even, >= 16
  double spacing = 0.0;      // h = 2L/n

  double node(int i) const { return -half_width + (i + 0.5) * spacing; }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(points_per_axis) * points_per_axis;
  }
  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.half_width == b.half_width && a.points_per_axis == b.points_per_axis;
  }
};

GridSpec make_grid(double half_width, int points_per_axis);

using AnalyticField = std::function<double(double, double)>;

// Real scalar field sampled at the cell centers, row-major with the x index
// slow: values[ix * n + iy] = u(node(ix), node(iy)). Value semantics; an
// optional analytic closure enables exact rescaling in dilate().
struct GridFunction {
  GridSpec spec;
  std::vector<double> values;
  std::shared_ptr<const AnalyticField> closure;

  double& at(int ix, int iy) { return values[static_cast<std::size_t>(ix) * spec.points_per_axis + iy]; }
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(ix) * spec.points_per_axis + iy]; }

  static GridFunction zeros(const GridSpec& spec);
};

struct ProblemParams {
  double p = 4.0;  // exponent, > 2
  double b = 1.0;  // coupling, >= 0
};

void validate(const ProblemParams& params);

// Samples f at the cell centers and keeps the closure for exact dilation.
// Rejects non-finite samples.
GridFunction sample_function(const GridSpec& spec, AnalyticField f);

// Midpoint quadrature h^2 * sum over cells (compensated row sums, fixed
// combine order, independent of thread partitioning).
double integrate(const GridFunction& f);

// |u|_p^p = integral of |u|^p (the p-th power, not the root). Requires p >= 1.
double lp_norm_p(const GridFunction& u, double p);

// |grad u|_2^2 by Fourier multiplier |k|^2 on the periodic extension.
double h1_seminorm_sq(const GridFunction& u);

// Weighted norm: integral of log(1 + |x|) u^2.
double star_norm_sq(const GridFunction& u);

// Pointwise t * u; closure composed when present.
GridFunction scale(const GridFunction& u, double t);

// u_t(x) = t^2 u(t x), t > 0. Exact sampling when the closure is attached,
// bilinear interpolation otherwise (points outside the box read as 0).
GridFunction dilate(const GridFunction& u, double t);

// Spectral field operators on the periodic extension (used by the residual
// and the solver preconditioner).
GridFunction spectral_minus_laplacian(const GridFunction& u);
// (-Laplacian + shift)^{-1} u, shift > 0.
GridFunction spectral_helmholtz_inverse(const GridFunction& u, double shift);

// Deterministic compensated sum of a raw sample array (no h^2 factor).
double compensated_sum(const std::vector<double>& samples, int rows, int cols);

}  // namespace logsp
