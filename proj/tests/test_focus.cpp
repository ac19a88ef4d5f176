#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "focuslab/focus.hpp"

using namespace focuslab;

TEST_CASE("spec parsing") {
  const auto m = FocusSpec::parse("moment:2", 4.0);
  CHECK(m.kind == FocusSpec::Kind::moment);
  CHECK(m.order == 2);
  CHECK(m.sigma_max == 4.0);
  CHECK(FocusSpec::parse("entropy").kind == FocusSpec::Kind::shannon);
  const auto r = FocusSpec::parse("renyi:3");
  CHECK(r.kind == FocusSpec::Kind::renyi);
  CHECK(r.alpha == 3.0);
  for (const char* s : {"moment:1", "entropy", "renyi:0.5"})
    CHECK(FocusSpec::parse(FocusSpec::parse(s).describe()).describe() == FocusSpec::parse(s).describe());
  CHECK_THROWS_AS(FocusSpec::parse("moment:1.5"), InvalidInput);
  CHECK_THROWS_AS(FocusSpec::parse("moment:-1"), InvalidInput);
  CHECK_THROWS_AS(FocusSpec::parse("renyi:1"), InvalidInput);
  CHECK_THROWS_AS(FocusSpec::parse("renyi:0"), InvalidInput);
  CHECK_THROWS_AS(FocusSpec::parse("entropy", 0.5), InvalidInput);
  CHECK_THROWS_AS(FocusSpec::parse("kurtosis"), InvalidInput);
}

TEST_CASE("affine renormalization") {
  const std::vector<double> raw{0, 1, 2};
  const auto out = affine_renormalize(raw, 5.0);
  CHECK(out == std::vector<double>{1, 3, 5});
  const std::vector<double> flat{7, 7, 7};
  CHECK(affine_renormalize(flat, 5.0) == std::vector<double>{1, 1, 1});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-3, 10);
  std::vector<double> r(50);
  for (auto& v : r) v = d(rng);
  const auto o = affine_renormalize(r, 2.5);
  CHECK(*std::min_element(o.begin(), o.end()) == 1.0);
  CHECK(*std::max_element(o.begin(), o.end()) == 2.5);
  CHECK_THROWS_AS(affine_renormalize(raw, 0.9), InvalidInput);
}

TEST_CASE("moving average") {
  const std::vector<double> x{0, 3, 6, 9};
  CHECK(moving_average(x, 1) == x);
  const auto y = moving_average(x, 3);
  CHECK(y[0] == doctest::Approx(1.5));
  CHECK(y[1] == doctest::Approx(3.0));
  CHECK(y[3] == doctest::Approx(7.5));
}

TEST_CASE("shannon slice entropy") {
  const std::vector<double> onehot{0, 0, 4, 0};
  CHECK(shannon_entropy_slice(onehot, 1.0) == 0.0);
  const std::vector<double> uniform(16, 0.3);
  CHECK(shannon_entropy_slice(uniform, 1.0) == doctest::Approx(std::log(16.0)));
  // Scale free, and the bin width only shifts by log(delta).
  std::vector<double> scaled(uniform);
  for (auto& v : scaled) v *= 9.0;
  CHECK(shannon_entropy_slice(scaled, 1.0) == doctest::Approx(std::log(16.0)));
  CHECK(shannon_entropy_slice(uniform, 0.25) == doctest::Approx(std::log(16.0) + std::log(0.25)));
  const std::vector<double> zero(5, 0.0);
  CHECK_THROWS_AS(shannon_entropy_slice(zero, 1.0), UndefinedEntropy);
  const std::vector<double> neg{1, -1};
  CHECK_THROWS_AS(shannon_entropy_slice(neg, 1.0), InvalidInput);
}

TEST_CASE("renyi slice entropy") {
  const std::vector<double> uniform(10, 2.0);
  for (double a : {0.5, 2.0, 3.0}) {
    CHECK(renyi_entropy_slice(uniform, a, 1.0) == doctest::Approx(std::log(10.0)));
    const std::vector<double> onehot{0, 1, 0};
    CHECK(std::abs(renyi_entropy_slice(onehot, a, 1.0)) < 1e-15);
  }
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(0, 1);
  std::vector<double> s(40);
  for (auto& v : s) v = d(rng);
  const double h = shannon_entropy_slice(s, 0.1);
  CHECK(std::abs(renyi_entropy_slice(s, 1.0 - 1e-3, 0.1) - h) < 1e-3);
  CHECK(std::abs(renyi_entropy_slice(s, 1.0 + 1e-3, 0.1) - h) < 1e-3);
  const std::vector<double> zero(3, 0.0);
  CHECK_THROWS_AS(renyi_entropy_slice(zero, 2.0, 1.0), UndefinedEntropy);
  CHECK_THROWS_AS(renyi_entropy_slice(s, 1.0, 1.0), InvalidInput);
}

TEST_CASE("raw moment weights") {
  // Two rows at -2 and 3 Hz, weight 0.5, one frame.
  TimeFrequencyMatrix m(std::vector<Complex>{Complex(0, 2), Complex(1, 0)}, {0.0}, {-2.0, 3.0},
                        {0.5, 0.5}, 1.0);
  auto spec = FocusSpec::parse("moment:0");
  CHECK(time_focus_raw(m, spec)[0] == doctest::Approx(1.5));
  spec = FocusSpec::parse("moment:2");
  CHECK(time_focus_raw(m, spec)[0] == doctest::Approx((4 * 2 + 9 * 1) * 0.5));
  TimeFrequencyMatrix zero(2, 1, {0.0}, {-2.0, 3.0}, {0.5, 0.5}, 1.0);
  CHECK(time_focus_raw(zero, FocusSpec::parse("entropy"))[0] == 0.0);
}

namespace {

const TimeFocusConfig& gauss_cfg() {
  static const TimeFocusConfig cfg = [] {
    TimeFocusConfig c(Window::truncated_gaussian(0.010, 3.0));
    c.hop = 4;
    return c;
  }();
  return cfg;
}

RealSignal noisy(std::size_t n, unsigned seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> x(n);
  for (auto& v : x) v = scale * g(rng);
  return RealSignal(x, 4000.0);
}

}  // namespace

TEST_CASE("zero signal gives unit focus") {
  const RealSignal zero(std::vector<double>(400, 0.0), 4000.0);
  for (const char* k : {"moment:1", "entropy", "renyi:2"}) {
    const auto p = time_focus(zero, FocusSpec::parse(k), gauss_cfg());
    for (double s : p.sigma()) CHECK(s == 1.0);
  }
}

TEST_CASE("a lone impulse gets the largest moment-0 focus at its frame") {
  std::vector<double> x(800, 0.0);
  x[400] = 1.0;
  TimeFocusConfig cfg(Window::truncated_gaussian(0.010, 3.0));
  const RealSignal f(x, 4000.0);
  const auto p = moment_time_focus(to_complex(f), FocusSpec::parse("moment:0", 5.0), cfg);
  const auto& s = p.sigma();
  const auto best = static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
  CHECK(s[best] == 5.0);
  CHECK(p.grid().time(best) == doctest::Approx(f.time_at(400)));
}

TEST_CASE("profiles stay in range and ignore amplitude") {
  const auto f = noisy(1200, 3);
  const auto f7 = noisy(1200, 3, 7.0);
  for (const char* k : {"moment:1", "entropy", "renyi:2"}) {
    const auto spec = FocusSpec::parse(k, 3.0);
    const auto a = time_focus(f, spec, gauss_cfg());
    const auto b = time_focus(f7, spec, gauss_cfg());
    double lo = 10, hi = 0;
    for (std::size_t m = 0; m < a.sigma().size(); ++m) {
      lo = std::min(lo, a.sigma()[m]);
      hi = std::max(hi, a.sigma()[m]);
      CHECK(std::abs(a.sigma()[m] - b.sigma()[m]) < 1e-9);
    }
    CHECK(lo == 1.0);
    CHECK(hi == doctest::Approx(3.0));
    // Frames centred before the first sample keep sigma = 1.
    CHECK(a.sigma().front() == 1.0);
    CHECK(a.sigma().back() == 1.0);
  }
  // Entropy profiles divide the amplitude out exactly.
  const auto e1 = time_focus(f, FocusSpec::parse("entropy"), gauss_cfg());
  std::vector<double> x4(f.samples());
  for (auto& v : x4) v *= 4.0;
  const auto e4 = time_focus(RealSignal(x4, 4000.0), FocusSpec::parse("entropy"), gauss_cfg());
  CHECK(e1.sigma() == e4.sigma());
}

TEST_CASE("named constructors agree with the dispatcher") {
  const auto f = to_complex(noisy(600, 4));
  const auto spec = FocusSpec::parse("renyi:2", 4.0);
  CHECK(renyi_time_focus(f, spec, gauss_cfg()).sigma() == time_focus(f, spec, gauss_cfg()).sigma());
  CHECK(shannon_entropy_time_focus(f, spec, gauss_cfg()).sigma() ==
        time_focus(f, FocusSpec::parse("entropy", 4.0), gauss_cfg()).sigma());
  CHECK(moment_time_focus(f, spec, gauss_cfg()).sigma() ==
        time_focus(f, FocusSpec::parse("moment:1", 4.0), gauss_cfg()).sigma());
}

TEST_CASE("smoothing is off by default and changes the profile when on") {
  const auto f = noisy(600, 5);
  auto spec = FocusSpec::parse("entropy");
  const auto plain = time_focus(f, spec, gauss_cfg());
  spec.smoothing = 5;
  const auto smooth = time_focus(f, spec, gauss_cfg());
  CHECK(plain.sigma() != smooth.sigma());
}

TEST_CASE("frequency focus") {
  const auto w = make_fourier_bump_wavelet(1.0, 0.2, 0.8);
  const double rate = 1000.0;
  const std::size_t n = 1000;
  const auto grid = ScaleGrid::band(5.0, 250.0, 40, w.xi0());
  const ComplexSignal zero(std::vector<Complex>(n), rate);
  const auto flat = entropy_freq_focus(zero, FocusSpec::parse("entropy"), grid, w);
  for (double s : flat.sigma()) CHECK(s == 1.0);

  // On-grid sine at 50 Hz plus an impulse. The sine row keeps a nearly constant
  // modulus and the largest entropy; the impulse concentrates the other rows.
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(2 * std::numbers::pi * 50.0 * i / rate);
  x[500] += 5.0;
  const auto fa = hardy_project(RealSignal(x, rate));
  const auto p = entropy_freq_focus(fa, FocusSpec::parse("entropy", 5.0), grid, w);
  std::size_t row = 0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    if (std::abs(std::log(grid.scale(j) / 50.0)) < std::abs(std::log(grid.scale(row) / 50.0))) row = j;
  const auto& s = p.sigma();
  CHECK(s[row] == doctest::Approx(5.0));
  CHECK(s[row] == *std::max_element(s.begin(), s.end()));
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(s[j] == 1.0);
    CHECK(s[grid.size() - 1 - j] == 1.0);
  }

  std::vector<Complex> scaled(fa.samples());
  for (auto& v : scaled) v *= 3.0;
  const auto p3 = entropy_freq_focus(ComplexSignal(scaled, rate), FocusSpec::parse("entropy", 5.0), grid, w);
  for (std::size_t j = 0; j < s.size(); ++j) CHECK(std::abs(p3.sigma()[j] - s[j]) < 1e-9);

  const auto all = entropy_freq_focus(fa, FocusSpec::parse("entropy", 5.0), grid, w, 0);
  CHECK(all.size() == grid.size());
  CHECK_THROWS_AS(entropy_freq_focus(fa, FocusSpec::parse("moment:1"), grid, w), InvalidInput);
}
