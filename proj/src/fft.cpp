#include "focuslab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>

namespace focuslab {

struct FftPlan::Impl {
  fftw_complex* buffer = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  ~Impl() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buffer) fftw_free(buffer);
  }
};

FftPlan::FftPlan(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n == 0) throw InvalidInput("FftPlan: length must be positive");
  impl_->buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  const int len = static_cast<int>(n);
  impl_->fwd = fftw_plan_dft_1d(len, impl_->buffer, impl_->buffer, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_1d(len, impl_->buffer, impl_->buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

namespace {

void run(fftw_plan plan, fftw_complex* buffer, std::span<Complex> data, std::size_t n) {
  if (data.size() != n) throw InvalidInput("FftPlan: length mismatch");
  // std::complex<double> is layout-compatible with fftw_complex.
  std::memcpy(buffer, data.data(), sizeof(fftw_complex) * n);
  fftw_execute(plan);
  std::memcpy(static_cast<void*>(data.data()), buffer, sizeof(fftw_complex) * n);
}

}  // namespace

void FftPlan::forward(std::span<Complex> data) { run(impl_->fwd, impl_->buffer, data, n_); }
void FftPlan::backward(std::span<Complex> data) { run(impl_->bwd, impl_->buffer, data, n_); }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace focuslab
