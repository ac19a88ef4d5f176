#include "focuslab/wavelet.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include "focuslab/errors.hpp"
#include "focuslab/quadrature.hpp"

namespace focuslab {

namespace {

double power_of(const FourierProfile& p, Interval s, double xi) {
  return s.contains(xi) ? std::norm(p(xi)) : 0.0;
}

// Interior breakpoints: quartiles of the support keep the adaptive rule away
// from any taper shoulders without knowing the profile.
std::vector<double> default_breaks(Interval s) {
  std::vector<double> b;
  for (int i = 1; i < 8; ++i) b.push_back(s.lo + s.width() * i / 8.0);
  return b;
}

}  // namespace

double smooth_taper(double r, double inner) {
  r = std::abs(r);
  if (r >= 1.0) return 0.0;
  if (r <= inner) return 1.0;
  const double s = (r - inner) / (1.0 - inner);
  auto g = [](double z) { return z > 0.0 ? std::exp(-1.0 / z) : 0.0; };
  const double up = g(1.0 - s);
  return up / (up + g(s));
}

double frequency_localization(const FourierProfile& profile, Interval support) {
  const auto breaks = default_breaks(support);
  const double mass = quad::integrate_pieces(
      [&](double x) { return power_of(profile, support, x); }, support.lo, support.hi, breaks);
  if (!(mass > 0.0)) throw InvalidInput("frequency_localization: zero wavelet");
  const double first = quad::integrate_pieces(
      [&](double x) { return x * power_of(profile, support, x); }, support.lo, support.hi, breaks);
  return first / mass;
}

double frequency_localization(const AnalyticWavelet& w) {
  return frequency_localization([&w](double x) { return w(x); }, w.support());
}

double admissibility_constant(const FourierProfile& profile, Interval support) {
  if (!(support.lo > 0.0))
    throw DivergenceError("admissibility integral diverges: support reaches frequency 0");
  const auto breaks = default_breaks(support);
  return quad::integrate_pieces([&](double y) { return power_of(profile, support, y) / y; },
                                support.lo, support.hi, breaks);
}

double derivative_bound(const FourierProfile& profile, Interval support, double xi0,
                        std::size_t grid_points) {
  const double step = support.width() / static_cast<double>(grid_points + 1);
  const double delta = 1e-6 * support.width();
  double best = 0.0;
  for (std::size_t i = 1; i <= grid_points; ++i) {
    const double xi = support.lo + step * static_cast<double>(i);
    const double d = (power_of(profile, support, xi + delta) -
                      power_of(profile, support, xi - delta)) / (2.0 * delta);
    best = std::max(best, std::abs(d) * std::abs(xi - xi0));
  }
  return best;
}

Interval halfpower_interval(const FourierProfile& profile, Interval support, double xi0) {
  const double target = 0.5 * power_of(profile, support, xi0);
  auto edge = [&](double limit) {
    constexpr int kScan = 4000;
    const double step = (limit - xi0) / kScan;
    double inside = xi0;
    for (int i = 1; i <= kScan; ++i) {
      const double x = xi0 + step * i;
      if (i == kScan || power_of(profile, support, x) < target) {
        if (i == kScan && power_of(profile, support, x) >= target) return limit;
        double a = inside, b = x;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (a + b);
          (power_of(profile, support, mid) >= target ? a : b) = mid;
        }
        return a;
      }
      inside = x;
    }
    return limit;
  };
  return {edge(support.lo), edge(support.hi)};
}

AnalyticWavelet AnalyticWavelet::from_profile(FourierProfile profile, Interval support,
                                              std::string name) {
  if (!(support.lo > 0.0) || !(support.hi > support.lo))
    throw InvalidInput("analytic wavelet support must be an interval inside (0, inf)");
  AnalyticWavelet w;
  w.profile_ = std::move(profile);
  w.support_ = support;
  w.name_ = std::move(name);
  const auto breaks = default_breaks(support);
  w.norm_squared_ = quad::integrate_pieces([&](double x) { return w.power(x); }, support.lo,
                                           support.hi, breaks);
  if (!(w.norm_squared_ > 0.0)) throw InvalidInput("analytic wavelet is identically zero");
  w.xi0_ = frequency_localization(w.profile_, support);
  w.peak_value_ = std::abs(w(w.xi0_));
  if (!(w.peak_value_ > 0.0)) throw InvalidInput("wavelet vanishes at its localization xi0");
  w.c_psi_ = admissibility_constant(w.profile_, support);
  w.a_psi_ = derivative_bound(w.profile_, support, w.xi0_);
  w.halfpower_ = halfpower_interval(w.profile_, support, w.xi0_);
  return w;
}

AnalyticWavelet make_fourier_bump_wavelet(double center, double width, double support_halfwidth) {
  if (!(width > 0.0)) throw InvalidInput("bump wavelet width must be positive");
  if (!(support_halfwidth > 0.0)) throw InvalidInput("bump wavelet halfwidth must be positive");
  if (!(center - support_halfwidth > 0.0))
    throw InvalidInput("bump wavelet support must stay in (0, inf) to be analytic");
  auto profile = [center, width, support_halfwidth](double xi) -> Complex {
    const double r = (xi - center) / support_halfwidth;
    if (std::abs(r) >= 1.0) return 0.0;
    const double d = xi - center;
    return std::exp(-d * d / (2.0 * width * width)) * smooth_taper(r);
  };
  char name[96];
  std::snprintf(name, sizeof name, "bump:%g:%g:%g", center, width, support_halfwidth);
  return AnalyticWavelet::from_profile(profile, {center - support_halfwidth,
                                                 center + support_halfwidth}, name);
}

AnalyticWavelet parse_wavelet(std::string_view text) {
  if (!text.starts_with("bump:")) throw InvalidInput("unknown wavelet spec: " + std::string(text));
  double v[3];
  auto rest = text.substr(5);
  for (int i = 0; i < 3; ++i) {
    auto sep = rest.find(':');
    auto tok = rest.substr(0, sep);
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v[i]);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || (i < 2) == (sep == std::string_view::npos))
      throw InvalidInput("wavelet spec must be bump:<xi0>:<width>:<halfwidth>, got " +
                         std::string(text));
    rest = sep == std::string_view::npos ? std::string_view{} : rest.substr(sep + 1);
  }
  return make_fourier_bump_wavelet(v[0], v[1], v[2]);
}

CqtReference cqt_reference_from_wavelet(const AnalyticWavelet& w) {
  CqtReference ref;
  ref.profile = [w](double y) { return w(y + 1.0); };
  ref.support = {w.support().lo - 1.0, w.support().hi - 1.0};
  ref.c_h = cqt_admissibility_integrals(ref.profile, ref.support).first;
  return ref;
}

std::pair<double, double> cqt_admissibility_integrals(const FourierProfile& h_hat,
                                                      Interval support) {
  const auto breaks = default_breaks(support);
  auto p = [&](double y) { return power_of(h_hat, support, y); };
  const double upper = quad::integrate_pieces([&](double y) { return p(y) / (y + 1.0); },
                                              std::max(support.lo, -1.0), support.hi, breaks);
  const double lower = quad::integrate_pieces([&](double y) { return p(y) / (-y - 1.0); },
                                              support.lo, std::min(support.hi, -1.0), breaks);
  return {upper, lower};
}

}  // namespace focuslab
