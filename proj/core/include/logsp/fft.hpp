#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace logsp {

// Process-wide cache of complex-to-complex 2D FFT plans (FFTW backend,
// FFTW_ESTIMATE so planning is deterministic). Plan execution is thread-safe;
// creation is serialized internally.
class Fft2 {
 public:
  // Plan for an m x m transform. Cached per size.
  static std::shared_ptr<const Fft2> get(int m);
  ~Fft2();

  int size() const { return m_; }

  // Unnormalized forward/backward DFT, out may alias in.
  void forward(const std::complex<double>* in, std::complex<double>* out) const;
  void backward(const std::complex<double>* in, std::complex<double>* out) const;

  Fft2(const Fft2&) = delete;
  Fft2& operator=(const Fft2&) = delete;

 private:
  explicit Fft2(int m);
  int m_;
  void* fwd_;  // fftw_plan
  void* bwd_;
};

}  // namespace logsp
