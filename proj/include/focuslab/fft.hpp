#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "focuslab/signal.hpp"

namespace focuslab {

// Unnormalized in-place complex FFT of a fixed length, backed by FFTW.
// forward: X[k] = sum x[n] exp(-2i pi kn/N); backward uses the + sign.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const { return n_; }
  void forward(std::span<Complex> data);
  void backward(std::span<Complex> data);

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

std::size_t next_pow2(std::size_t n);

}  // namespace focuslab
