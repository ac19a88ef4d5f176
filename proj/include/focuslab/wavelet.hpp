#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include "focuslab/signal.hpp"

namespace focuslab {

using FourierProfile = std::function<Complex(double)>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return x > lo && x < hi; }
};

// Analytic (progressive) wavelet defined by its Fourier profile, which vanishes
// outside a compact support strictly inside (0, inf). The constants the norm
// bounds need are computed once at construction.
class AnalyticWavelet {
 public:
  // Profile must be zero outside `support`; `support.lo` must be > 0.
  static AnalyticWavelet from_profile(FourierProfile profile, Interval support,
                                      std::string name = "custom");

  Complex operator()(double xi) const {
    return support_.contains(xi) ? profile_(xi) : Complex(0.0);
  }
  double power(double xi) const { return std::norm((*this)(xi)); }

  const Interval& support() const { return support_; }
  const std::string& name() const { return name_; }
  double xi0() const { return xi0_; }
  double c_psi() const { return c_psi_; }
  double a_psi() const { return a_psi_; }
  const Interval& halfpower() const { return halfpower_; }
  double peak_value() const { return peak_value_; }
  double norm_squared() const { return norm_squared_; }

 private:
  AnalyticWavelet() = default;
  FourierProfile profile_;
  Interval support_;
  std::string name_;
  double norm_squared_ = 0.0;
  double xi0_ = 0.0;
  double c_psi_ = 0.0;
  double a_psi_ = 0.0;
  Interval halfpower_;
  double peak_value_ = 0.0;
};

// psi_hat(xi) = exp(-(xi - center)^2 / (2 width^2)) * taper(xi), the taper being
// a C-infinity step equal to 1 on the inner 80% of center +- halfwidth.
AnalyticWavelet make_fourier_bump_wavelet(double center, double width, double support_halfwidth);
// "bump:<xi0>:<width>:<halfwidth>"
AnalyticWavelet parse_wavelet(std::string_view text);

// C-infinity transition: 1 for r <= inner, 0 for r >= 1.
double smooth_taper(double r, double inner = 0.8);

// (1/||psi||^2) int xi |psi_hat|^2 d xi.
double frequency_localization(const AnalyticWavelet& w);
double frequency_localization(const FourierProfile& profile, Interval support);
// int_{R+} |psi_hat(y)|^2 / y dy.
double admissibility_constant(const FourierProfile& profile, Interval support);
// sup |(|psi_hat|^2)'(xi)| * |xi - xi0| over a dense grid of the support.
double derivative_bound(const FourierProfile& profile, Interval support, double xi0,
                        std::size_t grid_points = 20001);
// Largest interval around xi0 on which |psi_hat|^2 >= |psi_hat(xi0)|^2 / 2.
Interval halfpower_interval(const FourierProfile& profile, Interval support, double xi0);

// Reference waveform of the constant-Q transform tied to the wavelet through
// psi(x) = h(x) exp(2i pi x), i.e. h_hat(y) = psi_hat(y + 1).
struct CqtReference {
  FourierProfile profile;  // h_hat
  Interval support;        // support of h_hat
  double c_h = 0.0;        // int_{-1}^inf |h_hat(y)|^2 / (y + 1) dy
};
CqtReference cqt_reference_from_wavelet(const AnalyticWavelet& w);

// Both sides of the two-sided constant-Q admissibility condition for a
// reference profile supported on `support` (upper: y > -1, lower: y < -1).
std::pair<double, double> cqt_admissibility_integrals(const FourierProfile& h_hat,
                                                      Interval support);

}  // namespace focuslab
