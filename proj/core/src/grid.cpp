#include "logsp/grid.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "logsp/fft.hpp"
#include "logsp/threading.hpp"

namespace logsp {

GridSpec make_grid(double half_width, int points_per_axis) {
  if (half_width <= 0.0) throw std::invalid_argument("make_grid: half_width must be > 0");
  if (points_per_axis < 16) throw std::invalid_argument("make_grid: need points_per_axis >= 16");
  if (points_per_axis % 2 != 0) throw std::invalid_argument("make_grid: points_per_axis must be even");
  GridSpec spec;
  spec.half_width = half_width;
  spec.points_per_axis = points_per_axis;
  spec.spacing = 2.0 * half_width / points_per_axis;
  return spec;
}

GridFunction GridFunction::zeros(const GridSpec& spec) {
  GridFunction u;
  u.spec = spec;
  u.values.assign(spec.cell_count(), 0.0);
  return u;
}

void validate(const ProblemParams& params) {
  if (!(params.p > 2.0)) throw std::invalid_argument("ProblemParams: p must be > 2");
  if (!(params.b >= 0.0)) throw std::invalid_argument("ProblemParams: b must be >= 0");
}

GridFunction sample_function(const GridSpec& spec, AnalyticField f) {
  GridFunction u;
  u.spec = spec;
  const int n = spec.points_per_axis;
  u.values.resize(spec.cell_count());
  auto shared = std::make_shared<const AnalyticField>(std::move(f));
  parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ix = lo; ix < hi; ++ix) {
      const double x = spec.node(static_cast<int>(ix));
      for (int iy = 0; iy < n; ++iy) {
        u.values[ix * n + iy] = (*shared)(x, spec.node(iy));
      }
    }
  });
  for (double v : u.values) {
    if (!std::isfinite(v)) throw std::runtime_error("sample_function: non-finite sample");
  }
  u.closure = shared;
  return u;
}

double compensated_sum(const std::vector<double>& samples, int rows, int cols) {
  // Neumaier per row, then rows combined in index order.
  std::vector<double> row_sum(rows, 0.0);
  parallel_for(0, rows, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      double s = 0.0, c = 0.0;
      const double* p = samples.data() + r * cols;
      for (int j = 0; j < cols; ++j) {
        const double t = s + p[j];
        if (std::abs(s) >= std::abs(p[j]))
          c += (s - t) + p[j];
        else
          c += (p[j] - t) + s;
        s = t;
      }
      row_sum[r] = s + c;
    }
  });
  double s = 0.0, c = 0.0;
  for (int r = 0; r < rows; ++r) {
    const double t = s + row_sum[r];
    if (std::abs(s) >= std::abs(row_sum[r]))
      c += (s - t) + row_sum[r];
    else
      c += (row_sum[r] - t) + s;
    s = t;
  }
  return s + c;
}

double integrate(const GridFunction& f) {
  const int n = f.spec.points_per_axis;
  const double h = f.spec.spacing;
  return h * h * compensated_sum(f.values, n, n);
}

double lp_norm_p(const GridFunction& u, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_p: p must be >= 1");
  const int n = u.spec.points_per_axis;
  std::vector<double> powed(u.values.size());
  parallel_for(0, u.values.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) powed[i] = std::pow(std::abs(u.values[i]), p);
  });
  return u.spec.spacing * u.spec.spacing * compensated_sum(powed, n, n);
}

double star_norm_sq(const GridFunction& u) {
  const int n = u.spec.points_per_axis;
  std::vector<double> w(u.values.size());
  parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ix = lo; ix < hi; ++ix) {
      const double x = u.spec.node(static_cast<int>(ix));
      for (int iy = 0; iy < n; ++iy) {
        const double y = u.spec.node(iy);
        const double v = u.values[ix * n + iy];
        w[ix * n + iy] = std::log1p(std::sqrt(x * x + y * y)) * v * v;
      }
    }
  });
  return u.spec.spacing * u.spec.spacing * compensated_sum(w, n, n);
}

namespace {

// Angular wavenumber for DFT index m on an n-point axis of period 2L.
inline double wavenumber(int m, int n, double half_width) {
  const int s = (m <= n / 2) ? m : m - n;
  return M_PI * s / half_width;
}

// Applies a real symbol g(kx^2 + ky^2) in Fourier space.
GridFunction apply_symbol(const GridFunction& u, const std::function<double(double)>& symbol) {
  const int n = u.spec.points_per_axis;
  auto plan = Fft2::get(n);
  std::vector<std::complex<double>> a(u.values.begin(), u.values.end());
  plan->forward(a.data(), a.data());
  for (int ix = 0; ix < n; ++ix) {
    const double kx = wavenumber(ix, n, u.spec.half_width);
    for (int iy = 0; iy < n; ++iy) {
      const double ky = wavenumber(iy, n, u.spec.half_width);
      a[static_cast<std::size_t>(ix) * n + iy] *= symbol(kx * kx + ky * ky);
    }
  }
  plan->backward(a.data(), a.data());
  GridFunction out = GridFunction::zeros(u.spec);
  const double inv = 1.0 / (static_cast<double>(n) * n);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a[i].real() * inv;
  return out;
}

}  // namespace

double h1_seminorm_sq(const GridFunction& u) {
  const int n = u.spec.points_per_axis;
  auto plan = Fft2::get(n);
  std::vector<std::complex<double>> a(u.values.begin(), u.values.end());
  plan->forward(a.data(), a.data());
  std::vector<double> terms(u.values.size());
  for (int ix = 0; ix < n; ++ix) {
    const double kx = wavenumber(ix, n, u.spec.half_width);
    for (int iy = 0; iy < n; ++iy) {
      const double ky = wavenumber(iy, n, u.spec.half_width);
      terms[static_cast<std::size_t>(ix) * n + iy] =
          (kx * kx + ky * ky) * std::norm(a[static_cast<std::size_t>(ix) * n + iy]);
    }
  }
  const double h = u.spec.spacing;
  const double scale = h * h / (static_cast<double>(n) * n);
  return scale * compensated_sum(terms, n, n);
}

GridFunction spectral_minus_laplacian(const GridFunction& u) {
  return apply_symbol(u, [](double k2) { return k2; });
}

GridFunction spectral_helmholtz_inverse(const GridFunction& u, double shift) {
  if (!(shift > 0.0)) throw std::invalid_argument("spectral_helmholtz_inverse: shift must be > 0");
  return apply_symbol(u, [shift](double k2) { return 1.0 / (k2 + shift); });
}

GridFunction scale(const GridFunction& u, double t) {
  GridFunction out;
  out.spec = u.spec;
  out.values.resize(u.values.size());
  for (std::size_t i = 0; i < u.values.size(); ++i) out.values[i] = t * u.values[i];
  if (u.closure) {
    auto base = u.closure;
    out.closure = std::make_shared<const AnalyticField>(
        [base, t](double x, double y) { return t * (*base)(x, y); });
  }
  return out;
}

namespace {
// Catmull-Rom weights for fractional offset a in [0, 1).
inline void cubic_weights(double a, double w[4]) {
  const double a2 = a * a, a3 = a2 * a;
  w[0] = 0.5 * (-a3 + 2.0 * a2 - a);
  w[1] = 0.5 * (3.0 * a3 - 5.0 * a2 + 2.0);
  w[2] = 0.5 * (-3.0 * a3 + 4.0 * a2 + a);
  w[3] = 0.5 * (a3 - a2);
}
}  // namespace

GridFunction dilate(const GridFunction& u, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("dilate: t must be > 0");
  const GridSpec& spec = u.spec;
  const int n = spec.points_per_axis;
  if (t == 1.0) return u;
  if (u.closure) {
    auto base = u.closure;
    return sample_function(spec, [base, t](double x, double y) {
      return t * t * (*base)(t * x, t * y);
    });
  }
  GridFunction out = GridFunction::zeros(spec);
  const double h = spec.spacing, L = spec.half_width;
  const double t2 = t * t;
  parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ix = lo; ix < hi; ++ix) {
      const double qx = t * spec.node(static_cast<int>(ix));
      const double fx = (qx + L) / h - 0.5;
      const int ix0 = static_cast<int>(std::floor(fx));
      double wx[4];
      cubic_weights(fx - ix0, wx);
      for (int iy = 0; iy < n; ++iy) {
        const double qy = t * spec.node(iy);
        const double fy = (qy + L) / h - 0.5;
        const int iy0 = static_cast<int>(std::floor(fy));
        double wy[4];
        cubic_weights(fy - iy0, wy);
        double v = 0.0;
        for (int a = 0; a < 4; ++a) {
          const int i = ix0 - 1 + a;
          if (i < 0 || i >= n || wx[a] == 0.0) continue;  // outside the box reads 0
          const double* row = u.values.data() + static_cast<std::size_t>(i) * n;
          double rv = 0.0;
          for (int b = 0; b < 4; ++b) {
            const int j = iy0 - 1 + b;
            if (j < 0 || j >= n) continue;
            rv += wy[b] * row[j];
          }
          v += wx[a] * rv;
        }
        out.values[ix * n + iy] = t2 * v;
      }
    }
  });
  return out;
}

}  // namespace logsp
