#include "doctest.h"

#include <cmath>

#include "focuslab/errors.hpp"
#include "focuslab/window.hpp"

using namespace focuslab;

// Reference values from independent 30-digit quadrature.
constexpr double kGaussL2Sq = 0.00295402449419840411;   // gauss, 10 ms, shape 3
constexpr double kHannHalfRadius = 0.00182028331886938;  // hann, 10 ms

TEST_CASE("truncated gaussian") {
  const auto w = Window::truncated_gaussian(0.010, 3.0);
  CHECK(w(0.0) == 1.0);
  CHECK(w(0.005 + 1e-9) == 0.0);
  CHECK(w(-0.0051) == 0.0);
  CHECK(w(0.002) == w(-0.002));
  CHECK(w.gaussian_width() == doctest::Approx(0.010 / 6));
  CHECK(w.l2_norm_squared() == doctest::Approx(kGaussL2Sq).epsilon(1e-10));
  CHECK(w.support_length() == 0.010);
}

TEST_CASE("hann") {
  const auto w = Window::hann(0.010);
  CHECK(w(0.0) == 1.0);
  CHECK(w(0.0025) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w(0.005) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(w.l2_norm_squared() == doctest::Approx(0.375 * 0.010).epsilon(1e-12));
  CHECK(w.half_height_radius() == doctest::Approx(kHannHalfRadius).epsilon(1e-8));
  const double a = w.half_height_radius();
  CHECK(w(a * 0.999) > 1.0 / std::sqrt(2.0));
  CHECK(w(a * 1.001) < 1.0 / std::sqrt(2.0));
}

TEST_CASE("energy primitive matches a fine Riemann sum") {
  for (const auto& w : {Window::hann(0.02), Window::truncated_gaussian(0.01, 2.0)}) {
    const double a = -0.3 * w.support_length(), b = 0.45 * w.support_length();
    const std::size_t n = 200000;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = a + (b - a) * (i + 0.5) / n;
      acc += w(x) * w(x);
    }
    acc *= (b - a) / n;
    CHECK(w.energy_between(a, b) == doctest::Approx(acc).epsilon(1e-8));
    CHECK(w.energy_between(-1.0, 1.0) == doctest::Approx(w.l2_norm_squared()).epsilon(1e-14));
    CHECK(w.energy_between(b, a) == 0.0);
  }
}

TEST_CASE("every sample outside the support is zero") {
  const auto w = Window::truncated_gaussian(0.01, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = 0.005 + 1e-7 + i * 1e-5;
    CHECK(w(x) == 0.0);
    CHECK(w(-x) == 0.0);
  }
}

TEST_CASE("scaling") {
  const auto w = Window::hann(0.01).scaled(2.0);
  CHECK(w(0.0) == 2.0);
  CHECK(w.sup_norm() == 2.0);
  CHECK(w.l2_norm_squared() == doctest::Approx(4 * 0.375 * 0.01));
}

TEST_CASE("parse") {
  const auto g = Window::parse("gauss:10:3");
  CHECK(g.kind() == Window::Kind::truncated_gaussian);
  CHECK(g.support_length() == doctest::Approx(0.010));
  const auto h = Window::parse("hann:20");
  CHECK(h.kind() == Window::Kind::hann);
  CHECK(h.support_length() == doctest::Approx(0.020));
  CHECK(Window::parse(h.describe()).support_length() == doctest::Approx(0.020));
  CHECK_THROWS_AS(Window::parse("box:10"), InvalidInput);
  CHECK_THROWS_AS(Window::parse("hann:-1"), InvalidInput);
  CHECK_THROWS_AS(Window::hann(0.0), InvalidInput);
  CHECK_THROWS_AS(Window::truncated_gaussian(0.01, 0.0), InvalidInput);
}
