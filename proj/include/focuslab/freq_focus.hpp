#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "focuslab/scale_map.hpp"
#include "focuslab/signal.hpp"
#include "focuslab/wavelet.hpp"

namespace focuslab {

// Uniform grid u_0 < ... < u_{R-1} of scale labels, mapped to frequency
// ratios by a positive scale map gamma.
class ScaleGrid {
 public:
  ScaleGrid(std::vector<double> u_values, ScaleMap gamma);
  // Rows whose centre frequencies gamma(u) * xi0 span [fmin, fmax].
  static ScaleGrid band(double fmin, double fmax, std::size_t rows, double xi0,
                        ScaleMap gamma = ScaleMap::exponential());

  std::size_t size() const { return u_.size(); }
  const std::vector<double>& u_values() const { return u_; }
  const ScaleMap& gamma() const { return gamma_; }
  double du() const { return du_; }
  double scale(std::size_t j) const { return gamma_.eval(u_[j]); }

  // gamma'(u_j) du
  std::vector<double> wavelet_weights() const;
  // gamma'(u_j) / gamma(u_j) du
  std::vector<double> cqt_weights() const;

  // Cell j covers gamma(u_j -+ du/2) on the y = gamma(u) axis.
  double cell_lo(std::size_t j) const { return gamma_.eval(u_[j] - 0.5 * du_); }
  double cell_hi(std::size_t j) const { return gamma_.eval(u_[j] + 0.5 * du_); }

  // Throws InvalidGrid unless gamma_max * support.hi fits below Nyquist.
  void check_band(Interval support, double sample_rate) const;

 private:
  std::vector<double> u_;
  ScaleMap gamma_;
  double du_ = 1.0;
};

// Squeezing factor per scale row; 1 outside the grid.
class FreqFocusProfile {
 public:
  FreqFocusProfile(std::vector<double> sigma, double sigma_max);
  static FreqFocusProfile constant(std::size_t rows, double value = 1.0);

  const std::vector<double>& sigma() const { return sigma_; }
  double sigma_max() const { return sigma_max_; }
  std::size_t size() const { return sigma_.size(); }

 private:
  std::vector<double> sigma_;
  double sigma_max_;
};

struct FreqBoundReport {
  double d_psi = 0.0;
  double C_sigma = 0.0;
  double measured_energy = 0.0;
  double signal_energy = 0.0;
  double slack = 1e-2;
  bool truncated = false;  // some squeezed atom is under-resolved on the DFT grid
  bool lower_ok = false;
  bool upper_ok = false;
  bool pass() const { return lower_ok && upper_ok; }
};

// Constant-Q transform evaluated at physical times tau (t = gamma(u) tau in
// the atom's own coordinate). The input must be complex with content inside
// the band; row weights are gamma' du so that weighted_energy uses the measure
// gamma'/gamma du dt after the change of time variable.
TimeFrequencyMatrix cqt_transform(const ComplexSignal& f, const ScaleGrid& grid,
                                  const CqtReference& h, std::size_t hop = 1);

// Analytic wavelet transform of an H2 signal (see hardy_project).
TimeFrequencyMatrix wavelet_transform(const ComplexSignal& f_analytic, const ScaleGrid& grid,
                                      const AnalyticWavelet& w, std::size_t hop = 1);

// xi_1 = (sigma - 1) xi0
double freq_shift(double sigma, const AnalyticWavelet& w);
// beta_u(xi) = (sigma / gamma(u)) xi - xi_1
double squeeze(double xi, double u, double sigma, const ScaleGrid& grid, const AnalyticWavelet& w);

struct FocusedAtomSpectrum {
  Spectrum spectrum;
  bool truncated = false;
};

// DFT-grid samples of (1/sqrt(gamma(u))) psi_hat(beta_u(xi)) exp(-2i pi xi t),
// phases relative to the grid start like dft_forward.
FocusedAtomSpectrum focused_atom_spectrum(double t, double u, double sigma, const ScaleGrid& grid,
                                          const AnalyticWavelet& w, const SampleGrid& samples);

TimeFrequencyMatrix transform_freq_focused(const ComplexSignal& f_analytic,
                                           const FreqFocusProfile& profile, const ScaleGrid& grid,
                                           const AnalyticWavelet& w, std::size_t hop = 1);

// K(xi) = int_0^inf |psi_hat(beta_{gamma^-1(y)}(xi))|^2 dy / y
std::vector<double> kernel_freq(const FreqFocusProfile& profile, const ScaleGrid& grid,
                                const AnalyticWavelet& w, const std::vector<double>& xi_grid);
// Same kernel after the substitution y -> xi / y.
std::vector<double> kernel_freq_substituted(const FreqFocusProfile& profile,
                                            const ScaleGrid& grid, const AnalyticWavelet& w,
                                            const std::vector<double>& xi_grid);

// c_psi + A_psi int (sigma(gamma^-1(y)) - 1) dy / y
double upper_bound_C(const FreqFocusProfile& profile, const ScaleGrid& grid,
                     const AnalyticWavelet& w);
// |psi_hat(xi0)|^2 / 2 * ln(b / a) over the half-power interval (a, b).
double lower_bound_d(const AnalyticWavelet& w);
double lower_bound_d(double peak_value, double a, double b);

FreqBoundReport check_freq_bounds(const ComplexSignal& f_analytic, const FreqFocusProfile& profile,
                                  const ScaleGrid& grid, const AnalyticWavelet& w,
                                  double slack = 1e-2);

}  // namespace focuslab
