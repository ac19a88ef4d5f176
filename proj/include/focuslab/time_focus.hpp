#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "focuslab/scale_map.hpp"
#include "focuslab/signal.hpp"
#include "focuslab/window.hpp"

namespace focuslab {

// Uniform grid of frame centres t_m = t0 + m * step.
struct FrameGrid {
  double t0 = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  double time(std::size_t m) const { return t0 + step * static_cast<double>(m); }
  bool operator==(const FrameGrid&) const = default;
};

struct TimeFocusConfig {
  explicit TimeFocusConfig(Window w) : window(std::move(w)) {}

  Window window;
  ScaleMap gamma = ScaleMap::identity();
  std::size_t hop = 1;
  std::size_t fft_size = 0;       // 0: smallest power of two holding the window
  bool force_quadrature = false;  // use the per-row path even for gamma = identity
};

// Frames sit on the sample grid (decimated by hop) and extend half a window
// beyond each end of the signal so every sample is fully covered.
FrameGrid frame_grid(const SampleGrid& grid, const TimeFocusConfig& cfg);
std::size_t effective_fft_size(const SampleGrid& grid, const TimeFocusConfig& cfg);

// Time focus sampled per frame. Between frames sigma is held constant over the
// frame cell [t_m - step/2, t_m + step/2); outside the grid it is 1.
class TimeFocusProfile {
 public:
  TimeFocusProfile(FrameGrid grid, std::vector<double> sigma, double sigma_max);
  static TimeFocusProfile constant(FrameGrid grid, double value);

  const FrameGrid& grid() const { return grid_; }
  const std::vector<double>& sigma() const { return sigma_; }
  double sigma_max() const { return sigma_max_; }
  double frame_step() const { return grid_.step; }

  double at(double t) const;
  // Cell boundaries inside (a, b), sorted ascending.
  std::vector<double> breaks_between(double a, double b) const;

 private:
  FrameGrid grid_;
  std::vector<double> sigma_;
  double sigma_max_;
};

// x -> sqrt(gamma'(omega) sigma) exp(2i pi gamma(omega) x) h(sigma (x - t)) on the grid.
ComplexSignal time_focused_atom(double t, double omega, double sigma, const TimeFocusConfig& cfg,
                                const SampleGrid& grid);

// Rows of the time-focused transform: ascending omega, fft_size rows spanning
// [gamma^-1(-fs/2), gamma^-1(fs/2)) uniformly. Row weights are d omega.
std::vector<double> time_focus_rows(const SampleGrid& grid, const TimeFocusConfig& cfg);

TimeFrequencyMatrix transform_time_focused(const ComplexSignal& f, const TimeFocusProfile& profile,
                                           const TimeFocusConfig& cfg);
TimeFrequencyMatrix transform_time_focused(const RealSignal& f, const TimeFocusProfile& profile,
                                           const TimeFocusConfig& cfg);

// Phi(t) = int sigma(x) |h(sigma(x)(x - t))|^2 dx (inverse Fourier transform of the kernel).
std::vector<double> inverse_kernel_profile(const TimeFocusProfile& profile,
                                           const TimeFocusConfig& cfg,
                                           const std::vector<double>& t_grid);

// Kernel K(u) = int Phi(t) exp(-2i pi u t) dt on the DFT grid of a uniform
// sampling of Phi. The t grid contains t = 0 and resolves the narrowest
// rescaled window with at least 8 points.
struct TimeKernel {
  std::vector<double> t;     // Phi sampling grid
  std::vector<double> phi;
  std::vector<double> u;     // ascending signed frequencies
  std::vector<Complex> values;
  double du = 0.0;
};
TimeKernel kernel_time(const TimeFocusProfile& profile, const TimeFocusConfig& cfg,
                       double resolution = 0.0);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
};

// int K(u) du  vs  int |h(sigma(t) t)|^2 sigma(t) dt
IdentityCheck l1_kernel_identity(const TimeFocusProfile& profile, const TimeFocusConfig& cfg);
// ||K||^2  vs  ||h||^2 int |h(sigma(t) t)|^2 sigma(t)^2 dt
IdentityCheck l2_kernel_identity(const TimeFocusProfile& profile, const TimeFocusConfig& cfg);

// int |h(sigma(t) t)|^2 sigma(t) dt, equal to Phi(0).
double upper_bound_Cf(const TimeFocusProfile& profile, const TimeFocusConfig& cfg);

struct LowerBound {
  double c_f = 0.0;    // inf_t int |h(x sigma(x + t))|^2 dx
  double floor = 0.0;  // a ||h||_inf^2, a the half-height radius of |h|
};
LowerBound lower_bound_cf(const TimeFocusProfile& profile, const TimeFocusConfig& cfg);

// sup_t Phi(t) on the refined frame grid: the tightest constant for which
// ||M f||^2 <= const * ||f||^2 holds for every f given this profile.
double kernel_sup(const TimeFocusProfile& profile, const TimeFocusConfig& cfg);

struct TimeBoundReport {
  double c_f = 0.0;
  double C_f = 0.0;
  double sigma_independent_floor = 0.0;
  double phi_sup = 0.0;
  double measured_energy = 0.0;
  double signal_energy = 0.0;
  double slack = 1e-2;
  bool lower_ok = false;
  bool upper_ok = false;
  bool floor_ok = false;
  bool pass() const { return lower_ok && upper_ok && floor_ok; }
};

TimeBoundReport check_time_bounds(const ComplexSignal& f, const TimeFocusProfile& profile,
                                  const TimeFocusConfig& cfg, double slack = 1e-2);
TimeBoundReport check_time_bounds(const RealSignal& f, const TimeFocusProfile& profile,
                                  const TimeFocusConfig& cfg, double slack = 1e-2);

}  // namespace focuslab
