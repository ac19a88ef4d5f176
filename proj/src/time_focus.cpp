#include "focuslab/time_focus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "focuslab/errors.hpp"
#include "focuslab/fft.hpp"

namespace focuslab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t window_samples(double length, double dt) {
  return static_cast<std::size_t>(std::ceil(length / dt)) + 1;
}

// Piece of the real line where sigma is constant.
struct Piece {
  double a;
  double b;
  double s;
};

// Split [a, b] into pieces of constant sigma.
std::vector<Piece> pieces(const TimeFocusProfile& p, double a, double b) {
  std::vector<Piece> out;
  if (!(b > a)) return out;
  auto breaks = p.breaks_between(a, b);
  double lo = a;
  for (std::size_t i = 0; i <= breaks.size(); ++i) {
    const double hi = i < breaks.size() ? breaks[i] : b;
    if (hi > lo) out.push_back({lo, hi, p.at(0.5 * (lo + hi))});
    lo = hi;
  }
  return out;
}

// Phi(t) and the companion integral H(t) = int |h((x - t) sigma(x))|^2 dx.
// Both are exact per piece through the energy primitive of h.
double phi_at(const TimeFocusProfile& p, const Window& h, double t) {
  const double half = h.half_support();
  double acc = 0.0;
  for (const auto& pc : pieces(p, t - half, t + half))
    acc += h.energy_between(pc.s * (pc.a - t), pc.s * (pc.b - t));
  return acc;
}

double shifted_energy_at(const TimeFocusProfile& p, const Window& h, double t) {
  // The integrand vanishes once |x - t| > l/2 since sigma >= 1.
  const double half = h.half_support();
  double acc = 0.0;
  for (const auto& pc : pieces(p, t - half, t + half))
    acc += h.energy_between(pc.s * (pc.a - t), pc.s * (pc.b - t)) / pc.s;
  return acc;
}

// Frame grid refined x4 and extended one window past each end.
std::vector<double> refined_times(const TimeFocusProfile& p, const Window& h) {
  const auto& g = p.grid();
  const double step = g.step / 4.0;
  const double first = g.time(0) - h.support_length();
  const double last = g.time(g.count - 1) + h.support_length();
  const auto n = static_cast<std::size_t>(std::ceil((last - first) / step)) + 1;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = first + step * static_cast<double>(i);
  return t;
}

// int sigma^power |h(sigma x)|^2 dx, exact per constant piece.
double sigma_weighted_energy(const TimeFocusProfile& p, const Window& h, int power) {
  const double half = h.half_support();
  double acc = 0.0;
  for (const auto& pc : pieces(p, -half, half))
    acc += std::pow(pc.s, power - 1) * h.energy_between(pc.s * pc.a, pc.s * pc.b);
  return acc;
}

}  // namespace

FrameGrid frame_grid(const SampleGrid& grid, const TimeFocusConfig& cfg) {
  if (cfg.hop == 0) throw InvalidInput("hop must be positive");
  if (grid.size == 0) throw InvalidInput("empty signal");
  const double dt = grid.dt();
  const auto pad = static_cast<long>(std::ceil(cfg.window.half_support() / dt));
  const long last = static_cast<long>(grid.size) - 1 + pad;
  const long hop = static_cast<long>(cfg.hop);
  const std::size_t count = static_cast<std::size_t>((last + pad) / hop + 1);
  return {grid.start_time - static_cast<double>(pad) * dt, static_cast<double>(cfg.hop) * dt, count};
}

std::size_t effective_fft_size(const SampleGrid& grid, const TimeFocusConfig& cfg) {
  const std::size_t needed = window_samples(cfg.window.support_length(), grid.dt());
  if (cfg.fft_size == 0) return next_pow2(std::max<std::size_t>(needed, 4));
  if (cfg.fft_size % 2 != 0) throw InvalidInput("fft_size must be even");
  if (cfg.fft_size < needed)
    throw InvalidInput("fft_size " + std::to_string(cfg.fft_size) +
                       " is shorter than the window (" + std::to_string(needed) + " samples)");
  return cfg.fft_size;
}

TimeFocusProfile::TimeFocusProfile(FrameGrid grid, std::vector<double> sigma, double sigma_max)
    : grid_(grid), sigma_(std::move(sigma)), sigma_max_(sigma_max) {
  if (!(sigma_max_ >= 1.0) || !std::isfinite(sigma_max_))
    throw InvalidInput("sigma_max must be finite and >= 1");
  if (sigma_.size() != grid_.count) throw InvalidInput("sigma length does not match frame count");
  if (grid_.count == 0 || !(grid_.step > 0.0)) throw InvalidInput("empty frame grid");
  for (double s : sigma_) {
    if (!std::isfinite(s) || s < 1.0 || s > sigma_max_ * (1.0 + 1e-12))
      throw InvalidInput("sigma values must lie in [1, sigma_max]");
  }
}

TimeFocusProfile TimeFocusProfile::constant(FrameGrid grid, double value) {
  return TimeFocusProfile(grid, std::vector<double>(grid.count, value), value);
}

double TimeFocusProfile::at(double t) const {
  const double r = (t - grid_.t0) / grid_.step;
  const double m = std::floor(r + 0.5);
  if (m < 0.0 || m >= static_cast<double>(grid_.count)) return 1.0;
  return sigma_[static_cast<std::size_t>(m)];
}

std::vector<double> TimeFocusProfile::breaks_between(double a, double b) const {
  std::vector<double> out;
  if (!(b > a)) return out;
  // Boundaries sit at t0 + (m - 1/2) step for m = 0 .. count.
  const double first = grid_.t0 - 0.5 * grid_.step;
  const double lo = std::max(0.0, std::floor((a - first) / grid_.step));
  const double hi = std::min(static_cast<double>(grid_.count), std::ceil((b - first) / grid_.step));
  for (double m = lo; m <= hi; m += 1.0) {
    const double x = first + m * grid_.step;
    if (x > a && x < b) out.push_back(x);
  }
  return out;
}

ComplexSignal time_focused_atom(double t, double omega, double sigma, const TimeFocusConfig& cfg,
                                const SampleGrid& grid) {
  if (!(sigma >= 1.0)) throw InvalidInput("sigma must be >= 1");
  const double g = cfg.gamma.eval(omega);
  const double amp = std::sqrt(cfg.gamma.deriv(omega) * sigma);
  std::vector<Complex> x(grid.size);
  for (std::size_t n = 0; n < grid.size; ++n) {
    const double xn = grid.time_at(n);
    const double w = cfg.window(sigma * (xn - t));
    if (w != 0.0) x[n] = amp * w * std::polar(1.0, kTwoPi * g * xn);
  }
  return ComplexSignal(std::move(x), grid.sample_rate, grid.start_time);
}

std::vector<double> time_focus_rows(const SampleGrid& grid, const TimeFocusConfig& cfg) {
  const std::size_t rows = effective_fft_size(grid, cfg);
  const double nyq = 0.5 * grid.sample_rate;
  const double lo = cfg.gamma.invert(-nyq);
  const double hi = cfg.gamma.invert(nyq);
  std::vector<double> axis(rows);
  const double step = (hi - lo) / static_cast<double>(rows);
  for (std::size_t k = 0; k < rows; ++k) axis[k] = lo + step * static_cast<double>(k);
  return axis;
}

TimeFrequencyMatrix transform_time_focused(const ComplexSignal& f,
                                           const TimeFocusProfile& profile,
                                           const TimeFocusConfig& cfg) {
  const SampleGrid sg = SampleGrid::of(f);
  const FrameGrid fg = frame_grid(sg, cfg);
  if (!(fg == profile.grid())) throw InvalidInput("profile frame grid does not match signal");
  const std::size_t rows = effective_fft_size(sg, cfg);
  const std::vector<double> axis = time_focus_rows(sg, cfg);
  const double d_omega = axis.size() > 1 ? axis[1] - axis[0] : 1.0;
  const double dt = sg.dt();
  const double half = cfg.window.half_support();
  const long n_total = static_cast<long>(sg.size);

  std::vector<double> times(fg.count);
  for (std::size_t m = 0; m < fg.count; ++m) times[m] = fg.time(m);
  TimeFrequencyMatrix out(rows, fg.count, times, axis, std::vector<double>(rows, d_omega), fg.step);

  const bool fast = cfg.gamma.kind() == ScaleMap::Kind::identity && !cfg.force_quadrature;
  FftPlan plan(fast ? rows : 1);
  std::vector<Complex> buf(fast ? rows : 0);
  std::vector<double> win;

  for (std::size_t m = 0; m < fg.count; ++m) {
    const double tm = fg.time(m);
    const double s = profile.sigma()[m];
    const double reach = half / s;
    const long lo = static_cast<long>(std::ceil((tm - reach - sg.start_time) / dt - 1e-9));
    const long hi = static_cast<long>(std::floor((tm + reach - sg.start_time) / dt + 1e-9));
    if (hi - lo + 1 < 4)
      throw DegenerateWindow("fewer than 4 samples under the window at sigma = " +
                             std::to_string(s));
    const long a = std::max(lo, 0L);
    const long b = std::min(hi, n_total - 1);
    if (b < a) continue;
    const auto len = static_cast<std::size_t>(b - a + 1);
    win.assign(len, 0.0);
    for (std::size_t j = 0; j < len; ++j)
      win[j] = cfg.window(s * (sg.time_at(static_cast<std::size_t>(a) + j) - tm));
    const double x0 = sg.time_at(static_cast<std::size_t>(a));

    if (fast) {
      std::fill(buf.begin(), buf.end(), Complex(0.0));
      for (std::size_t j = 0; j < len; ++j) buf[j] = f[static_cast<std::size_t>(a) + j] * win[j];
      plan.forward(buf);
      const double scale = std::sqrt(s) * dt;
      for (std::size_t k = 0; k < rows; ++k) {
        const std::size_t bin = (k + rows / 2) % rows;  // signed index k - rows/2
        out.at(k, m) = scale * std::polar(1.0, -kTwoPi * axis[k] * x0) * buf[bin];
      }
    } else {
      for (std::size_t k = 0; k < rows; ++k) {
        const double g = cfg.gamma.eval(axis[k]);
        Complex acc = 0.0;
        for (std::size_t j = 0; j < len; ++j) {
          const double xn = x0 + static_cast<double>(j) * dt;
          acc += f[static_cast<std::size_t>(a) + j] * win[j] * std::polar(1.0, -kTwoPi * g * xn);
        }
        out.at(k, m) = std::sqrt(cfg.gamma.deriv(axis[k]) * s) * dt * acc;
      }
    }
  }
  return out;
}

TimeFrequencyMatrix transform_time_focused(const RealSignal& f, const TimeFocusProfile& profile,
                                           const TimeFocusConfig& cfg) {
  return transform_time_focused(to_complex(f), profile, cfg);
}

std::vector<double> inverse_kernel_profile(const TimeFocusProfile& profile,
                                           const TimeFocusConfig& cfg,
                                           const std::vector<double>& t_grid) {
  std::vector<double> out(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) out[i] = phi_at(profile, cfg.window, t_grid[i]);
  return out;
}

TimeKernel kernel_time(const TimeFocusProfile& profile, const TimeFocusConfig& cfg,
                       double resolution) {
  const double l = cfg.window.support_length();
  const auto& g = profile.grid();
  double delta = std::min(g.step / 4.0, l / (8.0 * profile.sigma_max()));
  if (resolution > 0.0) delta = std::min(delta, resolution);
  const double lo = std::min(g.time(0), 0.0) - l;
  const double hi = std::max(g.time(g.count - 1), 0.0) + l;
  const long j0 = static_cast<long>(std::floor(lo / delta));
  const long j1 = static_cast<long>(std::ceil(hi / delta));

  TimeKernel k;
  const auto n = static_cast<std::size_t>(j1 - j0 + 1);
  k.t.resize(n);
  for (std::size_t i = 0; i < n; ++i) k.t[i] = static_cast<double>(j0 + static_cast<long>(i)) * delta;
  k.phi = inverse_kernel_profile(profile, cfg, k.t);

  std::vector<Complex> samples(k.phi.begin(), k.phi.end());
  const double start = k.t.front();
  const Spectrum spec = dft_forward(ComplexSignal(std::move(samples), 1.0 / delta, start));
  k.du = spec.freq_step;
  k.u.resize(n);
  k.values.resize(n);
  const std::size_t neg = n / 2;  // bins with negative signed index
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bin = (i + n - neg) % n;
    k.u[i] = spec.frequency(bin);
    k.values[i] = spec.bins[bin] * std::polar(1.0, -kTwoPi * k.u[i] * start);
  }
  return k;
}

IdentityCheck l1_kernel_identity(const TimeFocusProfile& profile, const TimeFocusConfig& cfg) {
  const TimeKernel k = kernel_time(profile, cfg);
  Complex sum = 0.0;
  for (const auto& v : k.values) sum += v;
  IdentityCheck c;
  c.lhs = sum.real() * k.du;
  c.rhs = upper_bound_Cf(profile, cfg);
  c.rel_err = std::abs(c.lhs - c.rhs) / std::abs(c.rhs);
  return c;
}

IdentityCheck l2_kernel_identity(const TimeFocusProfile& profile, const TimeFocusConfig& cfg) {
  const TimeKernel k = kernel_time(profile, cfg);
  double sum = 0.0;
  for (const auto& v : k.values) sum += std::norm(v);
  IdentityCheck c;
  c.lhs = sum * k.du;
  c.rhs = cfg.window.l2_norm_squared() * sigma_weighted_energy(profile, cfg.window, 2);
  c.rel_err = std::abs(c.lhs - c.rhs) / std::abs(c.rhs);
  return c;
}

double upper_bound_Cf(const TimeFocusProfile& profile, const TimeFocusConfig& cfg) {
  return sigma_weighted_energy(profile, cfg.window, 1);
}

LowerBound lower_bound_cf(const TimeFocusProfile& profile, const TimeFocusConfig& cfg) {
  LowerBound lb;
  lb.c_f = cfg.window.l2_norm_squared();
  for (double t : refined_times(profile, cfg.window))
    lb.c_f = std::min(lb.c_f, shifted_energy_at(profile, cfg.window, t));
  const double s = cfg.window.sup_norm();
  lb.floor = cfg.window.half_height_radius() * s * s;
  return lb;
}

double kernel_sup(const TimeFocusProfile& profile, const TimeFocusConfig& cfg) {
  double best = 0.0;
  for (double t : refined_times(profile, cfg.window))
    best = std::max(best, phi_at(profile, cfg.window, t));
  return best;
}

TimeBoundReport check_time_bounds(const ComplexSignal& f, const TimeFocusProfile& profile,
                                  const TimeFocusConfig& cfg, double slack) {
  TimeBoundReport r;
  r.slack = slack;
  const LowerBound lb = lower_bound_cf(profile, cfg);
  r.c_f = lb.c_f;
  r.sigma_independent_floor = lb.floor;
  r.C_f = upper_bound_Cf(profile, cfg);
  r.phi_sup = kernel_sup(profile, cfg);
  r.measured_energy = weighted_energy(transform_time_focused(f, profile, cfg));
  r.signal_energy = signal_energy(f);
  r.lower_ok = r.measured_energy >= r.c_f * r.signal_energy * (1.0 - slack);
  r.upper_ok = r.measured_energy <= r.C_f * r.signal_energy * (1.0 + slack);
  r.floor_ok = r.c_f > r.sigma_independent_floor;
  return r;
}

TimeBoundReport check_time_bounds(const RealSignal& f, const TimeFocusProfile& profile,
                                  const TimeFocusConfig& cfg, double slack) {
  return check_time_bounds(to_complex(f), profile, cfg, slack);
}

}  // namespace focuslab
