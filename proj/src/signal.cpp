#include "focuslab/signal.hpp"

#include <cmath>
#include <string>

#include "focuslab/fft.hpp"

namespace focuslab {

namespace {

bool finite(double v) { return std::isfinite(v); }
bool finite(const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

template <typename T>
BasicSignal<T>::BasicSignal(std::vector<T> samples, double sample_rate, double start_time)
    : samples_(std::move(samples)), sample_rate_(sample_rate), start_time_(start_time) {
  if (samples_.empty()) throw InvalidInput("signal must contain at least one sample");
  if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_))
    throw InvalidInput("sample rate must be positive and finite");
  if (!std::isfinite(start_time_)) throw InvalidInput("start time must be finite");
  for (std::size_t n = 0; n < samples_.size(); ++n) {
    if (!finite(samples_[n]))
      throw InvalidInput("non-finite sample at index " + std::to_string(n));
  }
}

template class BasicSignal<double>;
template class BasicSignal<Complex>;

ComplexSignal to_complex(const RealSignal& signal) {
  std::vector<Complex> out(signal.samples().begin(), signal.samples().end());
  return ComplexSignal(std::move(out), signal.sample_rate(), signal.start_time());
}

long Spectrum::signed_index(std::size_t k) const {
  const std::size_t n = bins.size();
  // Strictly positive half: 1 .. ceil(N/2)-1; Nyquist (even N) goes negative.
  return k <= (n - 1) / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

Spectrum dft_forward(const ComplexSignal& signal) {
  Spectrum s;
  s.bins = signal.samples();
  FftPlan plan(s.bins.size());
  plan.forward(s.bins);
  const double dt = signal.dt();
  for (auto& b : s.bins) b *= dt;
  s.freq_step = signal.sample_rate() / static_cast<double>(s.bins.size());
  s.time_origin = signal.start_time();
  return s;
}

Spectrum dft_forward(const RealSignal& signal) { return dft_forward(to_complex(signal)); }

ComplexSignal dft_inverse(const Spectrum& spectrum) {
  if (spectrum.bins.empty()) throw InvalidInput("dft_inverse: empty spectrum");
  if (!(spectrum.freq_step > 0.0)) throw InvalidInput("dft_inverse: freq_step must be positive");
  std::vector<Complex> x = spectrum.bins;
  FftPlan plan(x.size());
  plan.backward(x);
  for (auto& v : x) v *= spectrum.freq_step;
  const double rate = spectrum.freq_step * static_cast<double>(x.size());
  return ComplexSignal(std::move(x), rate, spectrum.time_origin);
}

ComplexSignal hardy_project(const RealSignal& signal) {
  Spectrum s = dft_forward(signal);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.signed_index(k) <= 0) s.bins[k] = 0.0;
  }
  return dft_inverse(s);
}

double signal_energy(const RealSignal& signal) {
  double acc = 0.0;
  for (double v : signal.samples()) acc += v * v;
  return acc * signal.dt();
}

double signal_energy(const ComplexSignal& signal) {
  double acc = 0.0;
  for (const Complex& v : signal.samples()) acc += std::norm(v);
  return acc * signal.dt();
}

TimeFrequencyMatrix::TimeFrequencyMatrix(std::size_t rows, std::size_t frames,
                                         std::vector<double> time_axis,
                                         std::vector<double> row_axis,
                                         std::vector<double> row_weights, double frame_step)
    : values_(rows * frames),
      time_axis_(std::move(time_axis)),
      row_axis_(std::move(row_axis)),
      row_weights_(std::move(row_weights)),
      frame_step_(frame_step) {
  if (row_axis_.size() != rows || time_axis_.size() != frames)
    throw InvalidInput("TimeFrequencyMatrix: axis lengths do not match dimensions");
  validate();
}

TimeFrequencyMatrix::TimeFrequencyMatrix(std::vector<Complex> values,
                                         std::vector<double> time_axis,
                                         std::vector<double> row_axis,
                                         std::vector<double> row_weights, double frame_step)
    : values_(std::move(values)),
      time_axis_(std::move(time_axis)),
      row_axis_(std::move(row_axis)),
      row_weights_(std::move(row_weights)),
      frame_step_(frame_step) {
  validate();
}

void TimeFrequencyMatrix::validate() const {
  if (values_.size() != row_axis_.size() * time_axis_.size())
    throw InvalidInput("TimeFrequencyMatrix: value count does not match axes");
  if (row_weights_.size() != row_axis_.size())
    throw InvalidInput("TimeFrequencyMatrix: one weight per row required");
  for (double w : row_weights_) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw InvalidInput("TimeFrequencyMatrix: row weights must be finite and nonnegative");
  }
  if (!(frame_step_ > 0.0) || !std::isfinite(frame_step_))
    throw InvalidInput("TimeFrequencyMatrix: frame step must be positive");
}

TimeFrequencyMatrix TimeFrequencyMatrix::rows_from(double min_axis) const {
  std::vector<Complex> vals;
  std::vector<double> axis, weights;
  for (std::size_t r = 0; r < rows(); ++r) {
    if (row_axis_[r] < min_axis) continue;
    auto src = row(r);
    vals.insert(vals.end(), src.begin(), src.end());
    axis.push_back(row_axis_[r]);
    weights.push_back(row_weights_[r]);
  }
  return TimeFrequencyMatrix(std::move(vals), time_axis_, std::move(axis), std::move(weights),
                             frame_step_);
}

double weighted_energy(const TimeFrequencyMatrix& m) {
  double total = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double row_acc = 0.0;
    for (const Complex& v : m.row(r)) row_acc += std::norm(v);
    total += row_acc * m.row_weights()[r];
  }
  return total * m.frame_step();
}

}  // namespace focuslab
