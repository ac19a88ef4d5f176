#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "focuslab/freq_focus.hpp"
#include "focuslab/signal.hpp"
#include "focuslab/time_focus.hpp"
#include "focuslab/wavelet.hpp"

namespace focuslab {

struct CheckReport {
  std::string name;
  int criterion = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string metadata;
};

// rel = |lhs - rhs| / |rhs| (absolute difference when rhs = 0).
CheckReport check_equal(std::string name, int criterion, double lhs, double rhs, double tol,
                        std::string metadata = {});
// lhs <= rhs: rel = max(0, (lhs - rhs) / |rhs|).
CheckReport check_at_most(std::string name, int criterion, double lhs, double rhs, double tol,
                          std::string metadata = {});
// lhs >= rhs: rel = max(0, (rhs - lhs) / |rhs|).
CheckReport check_at_least(std::string name, int criterion, double lhs, double rhs, double tol,
                           std::string metadata = {});

std::string format_report(const CheckReport& r);
std::string format_summary(std::span<const CheckReport> reports);
bool all_pass(std::span<const CheckReport> reports);

// sum f conj(g) dt. periodic: plain sum (matches signal_energy);
// halved: trapezoid weights 1/2 on the two end samples.
enum class EndpointRule { periodic, halved };
Complex quadrature_inner_product(const ComplexSignal& f, const ComplexSignal& g,
                                 EndpointRule rule = EndpointRule::periodic);

// <f, h_{t,omega,sigma}> from closed-form atom samples.
Complex time_atom_oracle(const ComplexSignal& f, double t, double omega, double sigma,
                         const TimeFocusConfig& cfg);

// Time samples of the squeezed atom by direct summation of its Fourier series
// over the DFT grid of `samples` (no FFT).
ComplexSignal freq_atom_samples(double t, double u, double sigma, const ScaleGrid& grid,
                                const AnalyticWavelet& w, const SampleGrid& samples);
Complex freq_atom_oracle(const ComplexSignal& f, double t, double u, double sigma,
                         const ScaleGrid& grid, const AnalyticWavelet& w);

// Random signals whose spectrum lives on the DFT bins with |xi| in [f_lo, f_hi].
RealSignal random_bandlimited_real(std::size_t n, double sample_rate, double f_lo, double f_hi,
                                   std::uint64_t seed);
// Same with positive frequencies only (an H2 signal).
ComplexSignal random_bandlimited_analytic(std::size_t n, double sample_rate, double f_lo,
                                          double f_hi, std::uint64_t seed);

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t corpus_size = 20;
  // Multiplies the time upper bound C_f; values < 1 act as a negative control.
  double upper_bound_scale = 1.0;
};

inline constexpr int kSuiteCriteria = 11;

std::vector<CheckReport> run_criterion(int criterion, const SuiteConfig& cfg);
std::vector<CheckReport> run_suite(const SuiteConfig& cfg);

}  // namespace focuslab
