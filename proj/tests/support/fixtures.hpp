#pragma once

#include <cmath>

#include "logsp/energy.hpp"
#include "logsp/kernels.hpp"

namespace logsp::testing {

// Standard box: tails of the Gaussian fixtures are < 1e-30 at the boundary.
inline const GridSpec& spec256() {
  static const GridSpec s = make_grid(12.0, 256);
  return s;
}
inline const GridSpec& spec192() {
  static const GridSpec s = make_grid(12.0, 192);
  return s;
}
inline const GridSpec& spec96() {
  static const GridSpec s = make_grid(12.0, 96);
  return s;
}

inline const KernelTables& tables256() {
  static const KernelTables t = build_kernel_tables(spec256());
  return t;
}
inline const KernelTables& tables96() {
  static const KernelTables t = build_kernel_tables(spec96());
  return t;
}

inline GridFunction gaussian(const GridSpec& spec, double width = 1.0, double amplitude = 1.0) {
  return sample_function(spec, [width, amplitude](double x, double y) {
    return amplitude * std::exp(-(x * x + y * y) / (2.0 * width * width));
  });
}

constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace logsp::testing
