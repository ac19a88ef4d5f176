#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "focuslab/errors.hpp"

namespace focuslab {

using Complex = std::complex<double>;

// Uniformly sampled function of time. Samples are finite, the rate is positive
// and there is at least one sample.
template <typename T>
class BasicSignal {
 public:
  using value_type = T;

  BasicSignal(std::vector<T> samples, double sample_rate, double start_time = 0.0);

  const std::vector<T>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double sample_rate() const { return sample_rate_; }
  double start_time() const { return start_time_; }
  double dt() const { return 1.0 / sample_rate_; }
  double duration() const { return static_cast<double>(samples_.size()) * dt(); }
  double time_at(std::size_t n) const { return start_time_ + static_cast<double>(n) * dt(); }

  const T& operator[](std::size_t n) const { return samples_[n]; }

 private:
  std::vector<T> samples_;
  double sample_rate_;
  double start_time_;
};

using RealSignal = BasicSignal<double>;
using ComplexSignal = BasicSignal<Complex>;

extern template class BasicSignal<double>;
extern template class BasicSignal<Complex>;

ComplexSignal to_complex(const RealSignal& signal);

// Discrete approximation of the continuous Fourier transform.
//
// bins[k] = dt * sum_n x[n] exp(-2i pi k n / N). Bin k sits at frequency
// signed_index(k) * freq_step, negative frequencies in wrap-around order; for
// even N the Nyquist bin is counted as negative. Phases are relative to
// time_origin, the time of the first sample.
struct Spectrum {
  std::vector<Complex> bins;
  double freq_step = 1.0;
  double time_origin = 0.0;

  std::size_t size() const { return bins.size(); }
  long signed_index(std::size_t k) const;
  double frequency(std::size_t k) const { return static_cast<double>(signed_index(k)) * freq_step; }
};

ComplexSignal dft_inverse(const Spectrum& spectrum);
Spectrum dft_forward(const ComplexSignal& signal);
Spectrum dft_forward(const RealSignal& signal);

// Orthogonal projection onto the discrete Hardy space: only strictly positive
// frequency bins survive (DC and Nyquist are dropped).
ComplexSignal hardy_project(const RealSignal& signal);

// Riemann approximation of the L2 energy, sum |x|^2 dt.
double signal_energy(const RealSignal& signal);
double signal_energy(const ComplexSignal& signal);

// Complex matrix over a (row, frame) grid. Rows index frequency or scale and
// carry nonnegative measure weights; frames are uniformly spaced in time.
class TimeFrequencyMatrix {
 public:
  TimeFrequencyMatrix() = default;
  TimeFrequencyMatrix(std::size_t rows, std::size_t frames, std::vector<double> time_axis,
                      std::vector<double> row_axis, std::vector<double> row_weights,
                      double frame_step);
  TimeFrequencyMatrix(std::vector<Complex> values, std::vector<double> time_axis,
                      std::vector<double> row_axis, std::vector<double> row_weights,
                      double frame_step);

  std::size_t rows() const { return row_axis_.size(); }
  std::size_t frames() const { return time_axis_.size(); }
  double frame_step() const { return frame_step_; }
  const std::vector<double>& time_axis() const { return time_axis_; }
  const std::vector<double>& row_axis() const { return row_axis_; }
  const std::vector<double>& row_weights() const { return row_weights_; }
  const std::vector<Complex>& values() const { return values_; }

  Complex& at(std::size_t row, std::size_t frame) { return values_[row * frames() + frame]; }
  const Complex& at(std::size_t row, std::size_t frame) const {
    return values_[row * frames() + frame];
  }
  std::span<Complex> row(std::size_t r) { return {values_.data() + r * frames(), frames()}; }
  std::span<const Complex> row(std::size_t r) const {
    return {values_.data() + r * frames(), frames()};
  }

  // Keep only rows whose axis value is >= min_axis (order preserved).
  TimeFrequencyMatrix rows_from(double min_axis) const;

 private:
  void validate() const;

  std::vector<Complex> values_;
  std::vector<double> time_axis_;
  std::vector<double> row_axis_;
  std::vector<double> row_weights_;
  double frame_step_ = 1.0;
};

// sum_rows sum_frames |value|^2 * frame_step * row_weight.
double weighted_energy(const TimeFrequencyMatrix& m);

}  // namespace focuslab

namespace focuslab {

// Sampling grid of a signal without its values.
struct SampleGrid {
  std::size_t size = 0;
  double sample_rate = 1.0;
  double start_time = 0.0;

  double dt() const { return 1.0 / sample_rate; }
  double time_at(std::size_t n) const { return start_time + static_cast<double>(n) * dt(); }

  template <typename T>
  static SampleGrid of(const BasicSignal<T>& s) {
    return {s.size(), s.sample_rate(), s.start_time()};
  }
};

}  // namespace focuslab
