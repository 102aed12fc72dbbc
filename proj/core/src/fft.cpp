#include "logsp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace logsp {

namespace {
std::mutex g_planner_mutex;
std::map<int, std::shared_ptr<const Fft2>> g_plan_cache;
}  // namespace

Fft2::Fft2(int m) : m_(m) {
  // Plan on a scratch buffer; FFTW_UNALIGNED lets execution run on any
  // caller-provided storage (std::vector) via the new-array interface.
  std::vector<std::complex<double>> scratch(static_cast<size_t>(m) * m);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  fwd_ = fftw_plan_dft_2d(m, m, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_dft_2d(m, m, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Fft2::~Fft2() {
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

std::shared_ptr<const Fft2> Fft2::get(int m) {
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  auto it = g_plan_cache.find(m);
  if (it != g_plan_cache.end()) return it->second;
  auto plan = std::shared_ptr<const Fft2>(new Fft2(m));
  g_plan_cache.emplace(m, plan);
  return plan;
}

void Fft2::forward(const std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(static_cast<fftw_plan>(fwd_),
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void Fft2::backward(const std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(static_cast<fftw_plan>(bwd_),
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace logsp
