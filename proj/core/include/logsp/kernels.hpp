#pragma once

#include <array>
#include <complex>
#include <vector>

#include "logsp/grid.hpp"

namespace logsp {

// Free-space convolution tables for the three kernels
//   K0 = log r,   K1 = log(1 + r),   K2 = log(1 + 1/r),
// sampled at displacement cell centers on the zero-padded 2n x 2n grid
// (wrapped layout). K0's singular cell holds the exact cell mean of log|x|
// plus a local quadrature correction (see kernels.cpp); K2 is defined cell
// by cell as K1 - K0 so the split identity is exact everywhere.
struct KernelTables {
  GridSpec spec;
  int padded = 0;  // 2n
  std::array<std::vector<double>, 3> cells;                 // effective real-space kernels
  std::array<std::vector<std::complex<double>>, 3> spectra; // unnormalized DFTs

  // Kernel value at displacement (di, dj) cells, di/dj in [-n, n-1].
  double cell(int kernel_id, int di, int dj) const {
    const int m = padded;
    const int a = (di % m + m) % m;
    const int b = (dj % m + m) % m;
    return cells[kernel_id][static_cast<std::size_t>(a) * m + b];
  }
};

KernelTables build_kernel_tables(const GridSpec& spec);

// w(x) = sum_y K(x - y) density(y) h^2, exact linear (non-circular)
// convolution via the zero-padded transforms; output on the n x n grid.
GridFunction convolve(const KernelTables& tables, int kernel_id, const GridFunction& density);

// B_i(f, g) = (1/2pi) Iint K_i(x - y) f(x) g(y); symmetric and bilinear.
double b_form(const KernelTables& tables, int kernel_id, const GridFunction& f,
              const GridFunction& g);

// N_i(u) = B_i(u^2, u^2).
double n_functional(const KernelTables& tables, int kernel_id, const GridFunction& u);

// Cell mean of log|x| over the unit square centered at the origin.
double log_kernel_cell_constant();

// Pointwise square u^2 (helper shared by the energy module).
GridFunction squared(const GridFunction& u);

}  // namespace logsp
