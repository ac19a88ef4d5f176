#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "focuslab/time_focus.hpp"

using namespace focuslab;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexSignal noise(std::size_t n, double rate, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> x(n);
  for (auto& v : x) v = {g(rng), g(rng)};
  return ComplexSignal(std::move(x), rate);
}

// sigma = 2 on frames centred in [t_a, t_b), 1 elsewhere.
TimeFocusProfile step_profile(const FrameGrid& g, double t_a, double t_b, double value = 2.0) {
  std::vector<double> s(g.count, 1.0);
  for (std::size_t m = 0; m < g.count; ++m)
    if (g.time(m) >= t_a && g.time(m) < t_b) s[m] = value;
  return TimeFocusProfile(g, std::move(s), std::max(value, 1.0));
}

// Direct evaluation of Phi(t) = int sigma(x) h(sigma(x)(x - t))^2 dx by a midpoint rule.
double phi_oracle(const TimeFocusProfile& p, const Window& h, double t, std::size_t n) {
  const double a = t - h.half_support(), b = t + h.half_support();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a + (b - a) * (i + 0.5) / n;
    const double s = p.at(x);
    const double v = h(s * (x - t));
    acc += s * v * v;
  }
  return acc * (b - a) / n;
}

}  // namespace

TEST_CASE("frame grid pads half a window on each side") {
  TimeFocusConfig cfg(Window::truncated_gaussian(0.010, 3.0));
  const SampleGrid sg{100, 1000.0, 0.0};
  const auto g = frame_grid(sg, cfg);
  CHECK(g.t0 == doctest::Approx(-0.005));
  CHECK(g.step == doctest::Approx(0.001));
  CHECK(g.count == 110);
  cfg.hop = 4;
  const auto g4 = frame_grid(sg, cfg);
  CHECK(g4.step == doctest::Approx(0.004));
  CHECK(g4.count == 28);
  cfg.hop = 0;
  CHECK_THROWS_AS(frame_grid(sg, cfg), InvalidInput);
}

TEST_CASE("fft size") {
  TimeFocusConfig cfg(Window::hann(0.010));
  const SampleGrid sg{1000, 4000.0, 0.0};
  CHECK(effective_fft_size(sg, cfg) == 64);
  cfg.fft_size = 100;
  CHECK(effective_fft_size(sg, cfg) == 100);
  cfg.fft_size = 21;
  CHECK_THROWS_AS(effective_fft_size(sg, cfg), InvalidInput);
  cfg.fft_size = 20;
  CHECK_THROWS_AS(effective_fft_size(sg, cfg), InvalidInput);
}

TEST_CASE("profile validation and lookup") {
  const FrameGrid g{0.0, 0.1, 4};
  CHECK_THROWS_AS(TimeFocusProfile(g, {1, 1, 1}, 2.0), InvalidInput);
  CHECK_THROWS_AS(TimeFocusProfile(g, {1, 0.5, 1, 1}, 2.0), InvalidInput);
  CHECK_THROWS_AS(TimeFocusProfile(g, {1, 3, 1, 1}, 2.0), InvalidInput);
  const TimeFocusProfile p(g, {1, 2, 1.5, 1}, 2.0);
  CHECK(p.at(0.1) == 2.0);
  CHECK(p.at(0.14) == 2.0);
  CHECK(p.at(0.16) == 1.5);
  CHECK(p.at(-1.0) == 1.0);
  CHECK(p.at(5.0) == 1.0);
  const auto br = p.breaks_between(0.0, 0.3);
  REQUIRE(br.size() == 3);
  CHECK(br[0] == doctest::Approx(0.05));
  CHECK(br[2] == doctest::Approx(0.25));
}

TEST_CASE("atoms") {
  TimeFocusConfig cfg(Window::hann(0.010));
  const SampleGrid sg{400, 4000.0, 0.0};
  const double t = 0.05, omega = 440.0;

  const auto a1 = time_focused_atom(t, omega, 1.0, cfg, sg);
  for (std::size_t n = 0; n < sg.size; ++n) {
    const double x = sg.time_at(n);
    const Complex want = cfg.window(x - t) * std::polar(1.0, kTwoPi * omega * x);
    CHECK(std::abs(a1[n] - want) < 1e-14);
  }

  for (double s : {1.0, 1.5, 2.5}) {
    const auto a = time_focused_atom(t, omega, s, cfg, sg);
    double e = 0.0;
    for (std::size_t n = 0; n < sg.size; ++n) {
      if (std::abs(sg.time_at(n) - t) > 0.005 / s + 1e-12) CHECK(a[n] == Complex(0.0));
      e += std::norm(a[n]);
    }
    CHECK(e * sg.dt() == doctest::Approx(cfg.window.l2_norm_squared()).epsilon(1e-3));
  }

  cfg.gamma = ScaleMap::sinh(100.0);
  const auto ag = time_focused_atom(t, 50.0, 2.0, cfg, sg);
  double e = 0.0;
  for (const auto& v : ag.samples()) e += std::norm(v);
  CHECK(e * sg.dt() == doctest::Approx(cfg.gamma.deriv(50.0) * cfg.window.l2_norm_squared()).epsilon(1e-3));
  CHECK_THROWS_AS(time_focused_atom(t, omega, 0.5, cfg, sg), InvalidInput);
}

TEST_CASE("row axis") {
  TimeFocusConfig cfg(Window::hann(0.010));
  const SampleGrid sg{1000, 4000.0, 0.0};
  const auto rows = time_focus_rows(sg, cfg);
  REQUIRE(rows.size() == 64);
  CHECK(rows.front() == doctest::Approx(-2000.0));
  CHECK(rows[1] - rows[0] == doctest::Approx(4000.0 / 64));
  CHECK(rows[32] == doctest::Approx(0.0));
}

TEST_CASE("constant focus Parseval") {
  TimeFocusConfig cfg(Window::hann(0.010));
  const auto f = noise(1024, 4000.0, 1);
  const auto p = TimeFocusProfile::constant(frame_grid(SampleGrid::of(f), cfg), 1.0);
  const auto m = transform_time_focused(f, p, cfg);
  CHECK(weighted_energy(m) ==
        doctest::Approx(cfg.window.l2_norm_squared() * signal_energy(f)).epsilon(1e-3));
}

TEST_CASE("zero signal gives a zero matrix") {
  TimeFocusConfig cfg(Window::hann(0.010));
  const ComplexSignal f(std::vector<Complex>(200), 4000.0);
  const auto g = frame_grid(SampleGrid::of(f), cfg);
  const auto m = transform_time_focused(f, step_profile(g, 0.01, 0.03), cfg);
  for (const auto& v : m.values()) CHECK(v == Complex(0.0));
}

TEST_CASE("transform cells equal direct inner products") {
  TimeFocusConfig cfg(Window::hann(0.005));
  const auto f = noise(300, 4000.0, 2);
  const auto sg = SampleGrid::of(f);
  const auto g = frame_grid(sg, cfg);
  const auto p = step_profile(g, 0.02, 0.05, 2.5);
  const auto m = transform_time_focused(f, p, cfg);
  for (std::size_t fm : {std::size_t{3}, g.count / 2, g.count - 5}) {
    for (std::size_t k : {std::size_t{0}, std::size_t{5}, m.rows() - 1}) {
      const auto atom = time_focused_atom(g.time(fm), m.row_axis()[k], p.sigma()[fm], cfg, sg);
      Complex ip = 0.0;
      for (std::size_t n = 0; n < f.size(); ++n) ip += f[n] * std::conj(atom[n]);
      ip *= sg.dt();
      CHECK(std::abs(m.at(k, fm) - ip) <= 1e-10 * std::abs(ip) + 1e-14);
    }
  }
}

TEST_CASE("fast path equals the quadrature path") {
  TimeFocusConfig cfg(Window::truncated_gaussian(0.006, 3.0));
  cfg.hop = 3;
  const auto f = noise(240, 4000.0, 3);
  const auto g = frame_grid(SampleGrid::of(f), cfg);
  const auto p = step_profile(g, 0.01, 0.04, 3.0);
  const auto fast = transform_time_focused(f, p, cfg);
  cfg.force_quadrature = true;
  const auto slow = transform_time_focused(f, p, cfg);
  double d = 0.0, r = 0.0;
  for (std::size_t i = 0; i < fast.values().size(); ++i) {
    d += std::norm(fast.values()[i] - slow.values()[i]);
    r += std::norm(slow.values()[i]);
  }
  CHECK(std::sqrt(d / r) < 1e-10);
}

TEST_CASE("linear in f for a frozen profile") {
  TimeFocusConfig cfg(Window::hann(0.010));
  const auto f = noise(256, 4000.0, 4);
  std::vector<Complex> scaled(f.samples());
  for (auto& v : scaled) v *= Complex(2.0, -1.0);
  const auto g = frame_grid(SampleGrid::of(f), cfg);
  const auto p = step_profile(g, 0.01, 0.03);
  const auto a = transform_time_focused(f, p, cfg);
  const auto b = transform_time_focused(ComplexSignal(scaled, 4000.0), p, cfg);
  for (std::size_t i = 0; i < a.values().size(); ++i)
    CHECK(std::abs(b.values()[i] - Complex(2.0, -1.0) * a.values()[i]) < 1e-12);
}

TEST_CASE("too strong a squeeze is rejected") {
  TimeFocusConfig cfg(Window::hann(0.002));
  const auto f = noise(100, 4000.0, 5);
  const auto g = frame_grid(SampleGrid::of(f), cfg);
  const auto p = TimeFocusProfile::constant(g, 4.0);
  CHECK_THROWS_AS(transform_time_focused(f, p, cfg), DegenerateWindow);
  const auto mismatched = TimeFocusProfile::constant(FrameGrid{0.0, 1.0, 3}, 1.0);
  CHECK_THROWS_AS(transform_time_focused(f, mismatched, cfg), InvalidInput);
}

TEST_CASE("inverse kernel profile") {
  TimeFocusConfig cfg(Window::hann(0.010));
  const FrameGrid g{0.0, 0.001, 200};
  const double l2 = cfg.window.l2_norm_squared();
  for (double c : {1.0, 3.0}) {
    const auto phi = inverse_kernel_profile(TimeFocusProfile::constant(g, c), cfg, {0.05, 0.12});
    for (double v : phi) CHECK(v == doctest::Approx(l2).epsilon(1e-12));
  }
  const auto p = step_profile(g, 0.05, 0.1);
  const std::vector<double> ts{0.045, 0.05, 0.0523, 0.08, 0.0987, 0.103};
  const auto phi = inverse_kernel_profile(p, cfg, ts);
  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(phi[i] == doctest::Approx(phi_oracle(p, cfg.window, ts[i], 400000)).epsilon(1e-5));
}

TEST_CASE("time kernel") {
  TimeFocusConfig cfg(Window::hann(0.010));
  const FrameGrid g{0.0, 0.001, 100};
  const auto flat = kernel_time(TimeFocusProfile::constant(g, 1.0), cfg);
  // Hermitian symmetry: u is ascending and symmetric except for the lowest bin when n is even.
  const auto p = step_profile(g, 0.03, 0.06, 2.5);
  const auto k = kernel_time(p, cfg);
  const std::size_t n = k.u.size();
  const std::size_t zero = static_cast<std::size_t>(std::find(k.u.begin(), k.u.end(), 0.0) - k.u.begin());
  REQUIRE(zero < n);
  for (std::size_t j = 1; j < std::min(zero, n - zero); ++j) {
    CHECK(k.u[zero + j] == doctest::Approx(-k.u[zero - j]));
    CHECK(std::abs(k.values[zero + j] - std::conj(k.values[zero - j])) < 1e-12 * std::abs(k.values[zero]));
  }
  // Sum K du recovers Phi at t = 0.
  Complex sum = 0.0;
  for (const auto& v : k.values) sum += v;
  const auto t0 = std::find(k.t.begin(), k.t.end(), 0.0);
  REQUIRE(t0 != k.t.end());
  CHECK(sum.real() * k.du == doctest::Approx(k.phi[static_cast<std::size_t>(t0 - k.t.begin())]).epsilon(1e-10));
  // Flat profile: K at 0 is Phi integrated over the sampling span.
  const auto z = static_cast<std::size_t>(std::find(flat.u.begin(), flat.u.end(), 0.0) - flat.u.begin());
  double integral = 0.0;
  for (double v : flat.phi) integral += v;
  integral *= flat.t[1] - flat.t[0];
  CHECK(flat.values[z].real() == doctest::Approx(integral).epsilon(1e-12));
}

TEST_CASE("kernel identities") {
  TimeFocusConfig cfg(Window::hann(0.010));
  const FrameGrid g{-0.02, 0.001, 60};
  const auto p = step_profile(g, -0.003, 0.012, 2.0);
  const auto l1 = l1_kernel_identity(p, cfg);
  CHECK(l1.rel_err < 1e-4);

  // Plancherel for the discrete kernel: sum |K|^2 du = sum Phi^2 dt.
  const auto k = kernel_time(p, cfg);
  double phi2 = 0.0;
  for (double v : k.phi) phi2 += v * v;
  phi2 *= k.t[1] - k.t[0];
  const auto l2 = l2_kernel_identity(p, cfg);
  CHECK(l2.lhs == doctest::Approx(phi2).epsilon(1e-10));

  // Homogeneity: h -> 2h scales the L1 sides by 4 and the L2 sides by 16.
  TimeFocusConfig cfg2(cfg.window.scaled(2.0));
  const auto l1b = l1_kernel_identity(p, cfg2);
  CHECK(l1b.lhs == doctest::Approx(4 * l1.lhs).epsilon(1e-12));
  CHECK(l1b.rhs == doctest::Approx(4 * l1.rhs).epsilon(1e-12));
  const auto l2b = l2_kernel_identity(p, cfg2);
  CHECK(l2b.lhs == doctest::Approx(16 * l2.lhs).epsilon(1e-12));
  CHECK(l2b.rhs == doctest::Approx(16 * l2.rhs).epsilon(1e-12));
}

TEST_CASE("upper bound constant") {
  TimeFocusConfig cfg(Window::truncated_gaussian(0.010, 3.0));
  const FrameGrid g{-0.05, 0.001, 100};
  const double l2 = cfg.window.l2_norm_squared();
  CHECK(upper_bound_Cf(TimeFocusProfile::constant(g, 1.0), cfg) == doctest::Approx(l2).epsilon(1e-6));
  CHECK(upper_bound_Cf(TimeFocusProfile::constant(g, 2.0), cfg) == doctest::Approx(l2).epsilon(1e-6));
  // C_f is Phi at the origin.
  const auto p = step_profile(g, -0.004, 0.001, 3.0);
  CHECK(upper_bound_Cf(p, cfg) == doctest::Approx(inverse_kernel_profile(p, cfg, {0.0})[0]).epsilon(1e-6));
  CHECK(kernel_sup(p, cfg) >= upper_bound_Cf(p, cfg) * (1 - 1e-9));
}

TEST_CASE("lower bound constant") {
  TimeFocusConfig cfg(Window::hann(0.010));
  const FrameGrid g{0.0, 0.001, 100};
  const double l2 = cfg.window.l2_norm_squared();
  const auto flat = lower_bound_cf(TimeFocusProfile::constant(g, 1.0), cfg);
  CHECK(flat.c_f == doctest::Approx(l2).epsilon(1e-12));
  CHECK(flat.floor == doctest::Approx(cfg.window.half_height_radius()).epsilon(1e-12));

  // Against a 10x finer grid of directly integrated shifted energies.
  const auto p = step_profile(g, 0.04, 0.06);
  const auto lb = lower_bound_cf(p, cfg);
  double oracle = l2;
  for (int i = 0; i <= 4000; ++i) {
    const double t = -0.01 + 0.12 * i / 4000.0;
    const double a = t - 0.006, b = t + 0.006;
    const std::size_t n = 20000;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = a + (b - a) * (j + 0.5) / n;
      const double v = cfg.window((x - t) * p.at(x));
      acc += v * v;
    }
    oracle = std::min(oracle, acc * (b - a) / n);
  }
  CHECK(lb.c_f == doctest::Approx(oracle).epsilon(1e-4));
  CHECK(lb.c_f <= l2);
  CHECK(lb.c_f >= l2 / 2.0 * (1 - 1e-9));
}

TEST_CASE("bound report") {
  TimeFocusConfig cfg(Window::hann(0.010));
  const auto f = noise(800, 4000.0, 6);
  const auto g = frame_grid(SampleGrid::of(f), cfg);
  const auto flat = check_time_bounds(f, TimeFocusProfile::constant(g, 1.0), cfg);
  CHECK(flat.lower_ok);
  CHECK(flat.upper_ok);
  CHECK(flat.c_f == doctest::Approx(flat.C_f).epsilon(1e-6));
  CHECK(flat.measured_energy == doctest::Approx(flat.C_f * flat.signal_energy).epsilon(1e-3));

  const ComplexSignal zero(std::vector<Complex>(800), 4000.0);
  const auto z = check_time_bounds(zero, step_profile(g, 0.05, 0.1), cfg);
  CHECK(z.measured_energy == 0.0);
  CHECK(z.lower_ok);
  CHECK(z.upper_ok);
}
