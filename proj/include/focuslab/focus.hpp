#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "focuslab/freq_focus.hpp"
#include "focuslab/signal.hpp"
#include "focuslab/time_focus.hpp"
#include "focuslab/wavelet.hpp"

namespace focuslab {

struct FocusSpec {
  enum class Kind { moment, shannon, renyi };

  Kind kind = Kind::shannon;
  int order = 1;           // moment order n
  double alpha = 2.0;      // Renyi order
  double sigma_max = 5.0;
  std::size_t smoothing = 0;  // moving-average width on raw values, 0 = off

  // "moment:<n>" | "entropy" | "renyi:<alpha>"
  static FocusSpec parse(std::string_view text, double sigma_max = 5.0);
  void validate() const;
  std::string describe() const;
};

// Min-max map onto [1, sigma_max]; constant input maps to all ones.
std::vector<double> affine_renormalize(std::span<const double> raw, double sigma_max);

// Centered moving average with edge truncation; width <= 1 is the identity.
std::vector<double> moving_average(std::span<const double> raw, std::size_t width);

// -sum p log(p / delta) with p_k = s_k delta / sum s delta.
double shannon_entropy_slice(std::span<const double> slice, double delta);
// (1 / (1 - alpha)) log(sum s^alpha delta / (sum s delta)^alpha)
double renyi_entropy_slice(std::span<const double> slice, double alpha, double delta);

// Raw per-frame focus values from a reference transform: moment weight
// |omega|^n or slice entropy, zero for empty slices.
std::vector<double> time_focus_raw(const TimeFrequencyMatrix& v, const FocusSpec& spec);

// Profiles built from the sigma = 1 transform with the same configuration.
// Frames centred outside the signal get sigma = 1; the rest are renormalized.
TimeFocusProfile moment_time_focus(const ComplexSignal& f, const FocusSpec& spec,
                                   const TimeFocusConfig& cfg);
TimeFocusProfile shannon_entropy_time_focus(const ComplexSignal& f, const FocusSpec& spec,
                                            const TimeFocusConfig& cfg);
TimeFocusProfile renyi_time_focus(const ComplexSignal& f, const FocusSpec& spec,
                                  const TimeFocusConfig& cfg);
TimeFocusProfile time_focus(const ComplexSignal& f, const FocusSpec& spec,
                            const TimeFocusConfig& cfg);
TimeFocusProfile time_focus(const RealSignal& f, const FocusSpec& spec, const TimeFocusConfig& cfg);

// Entropy of each scale row of the wavelet transform over time. The outer
// rows (outer_rows at each end, default size/8) are pinned to sigma = 1.
FreqFocusProfile entropy_freq_focus(const ComplexSignal& f_analytic, const FocusSpec& spec,
                                    const ScaleGrid& grid, const AnalyticWavelet& w,
                                    std::size_t outer_rows = static_cast<std::size_t>(-1));

}  // namespace focuslab
