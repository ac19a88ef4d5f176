#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "focuslab/signal.hpp"

using namespace focuslab;

namespace {

std::vector<Complex> random_complex(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

}  // namespace

TEST_CASE("signal construction rejects bad input") {
  CHECK_THROWS_AS(RealSignal({}, 1.0), InvalidInput);
  CHECK_THROWS_AS(RealSignal({1.0}, 0.0), InvalidInput);
  CHECK_THROWS_AS(RealSignal({NAN}, 1.0), InvalidInput);
  const RealSignal s({1.0, 2.0}, 4.0, 0.5);
  CHECK(s.dt() == 0.25);
  CHECK(s.time_at(1) == 0.75);
  CHECK(s.duration() == 0.5);
}

TEST_CASE("dft of a constant puts the duration in the DC bin") {
  const std::size_t n = 64;
  const double rate = 8.0;
  const auto s = dft_forward(RealSignal(std::vector<double>(n, 1.0), rate));
  CHECK(s.bins[0].real() == doctest::Approx(n / rate).epsilon(1e-14));
  for (std::size_t k = 1; k < n; ++k) CHECK(std::abs(s.bins[k]) < 1e-12);
  CHECK(s.freq_step == doctest::Approx(rate / n));
}

TEST_CASE("dft of a unit impulse is flat") {
  std::vector<double> x(32, 0.0);
  x[0] = 1.0;
  const auto s = dft_forward(RealSignal(x, 100.0));
  for (const auto& b : s.bins) CHECK(std::abs(b - Complex(0.01, 0.0)) < 1e-15);
}

TEST_CASE("on-grid exponential lands in a single bin worth the duration") {
  const std::size_t n = 256;
  const double rate = 256.0, f0 = 12.0;
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = std::exp(Complex(0.0, 2.0 * std::numbers::pi * f0 * static_cast<double>(i) / rate));
  const auto s = dft_forward(ComplexSignal(x, rate));
  for (std::size_t k = 0; k < n; ++k) {
    if (s.frequency(k) == f0)
      CHECK(std::abs(s.bins[k] - Complex(1.0, 0.0)) < 1e-12);
    else
      CHECK(std::abs(s.bins[k]) < 1e-12);
  }
}

TEST_CASE("signed bin convention") {
  const auto s = dft_forward(RealSignal(std::vector<double>(8, 0.0), 8.0));
  CHECK(s.signed_index(3) == 3);
  CHECK(s.signed_index(4) == -4);
  CHECK(s.signed_index(7) == -1);
  const auto odd = dft_forward(RealSignal(std::vector<double>(7, 0.0), 7.0));
  CHECK(odd.signed_index(3) == 3);
  CHECK(odd.signed_index(4) == -3);
}

TEST_CASE("inverse undoes forward and keeps the time origin") {
  const ComplexSignal x(random_complex(1000, 1), 44.1, -3.25);
  const auto y = dft_inverse(dft_forward(x));
  CHECK(y.start_time() == -3.25);
  CHECK(y.sample_rate() == 44.1);
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    err += std::norm(y[i] - x[i]);
    ref += std::norm(x[i]);
  }
  CHECK(std::sqrt(err / ref) < 1e-12);

  Spectrum zero{std::vector<Complex>(16), 1.0, 0.0};
  const auto silent = dft_inverse(zero);
  for (const auto& v : silent.samples()) CHECK(v == Complex(0.0));
}

TEST_CASE("single bin inverts to a sampled exponential") {
  const std::size_t n = 128;
  Spectrum s{std::vector<Complex>(n), 0.5, 0.0};
  s.bins[5] = 2.0;
  const auto x = dft_inverse(s);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex want = 2.0 * 0.5 * std::exp(Complex(0.0, 2.0 * std::numbers::pi * 2.5 * x.time_at(i)));
    CHECK(std::abs(x[i] - want) < 1e-12);
  }
}

TEST_CASE("discrete Plancherel") {
  const ComplexSignal x(random_complex(777, 2), 3.0);
  const auto s = dft_forward(x);
  double spec = 0.0;
  for (const auto& b : s.bins) spec += std::norm(b);
  spec *= s.freq_step;
  CHECK(spec == doctest::Approx(signal_energy(x)).epsilon(1e-10));
}

TEST_CASE("energy of simple signals") {
  CHECK(signal_energy(RealSignal(std::vector<double>(10, 0.0), 1.0)) == 0.0);
  CHECK(signal_energy(RealSignal(std::vector<double>(100, 1.0), 100.0)) == doctest::Approx(1.0));
}

TEST_CASE("hardy projection") {
  const std::size_t n = 200;
  const double rate = 200.0, f0 = 7.0;
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = std::cos(2.0 * std::numbers::pi * f0 * i / rate);
  const RealSignal cosine(c, rate);
  const auto h = hardy_project(cosine);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex want = 0.5 * std::exp(Complex(0.0, 2.0 * std::numbers::pi * f0 * i / rate));
    CHECK(std::abs(h[i] - want) < 1e-12);
  }
  CHECK(signal_energy(h) == doctest::Approx(0.5 * signal_energy(cosine)));

  const auto dc = hardy_project(RealSignal(std::vector<double>(16, 3.0), 1.0));
  for (const auto& v : dc.samples()) CHECK(std::abs(v) < 1e-14);

  // Random real signal: energy accounting over the spectrum bins.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<double> r(128);
  for (auto& v : r) v = g(rng);
  const RealSignal rs(r, 16.0);
  const auto spec = dft_forward(rs);
  const double dc_e = std::norm(spec.bins[0]) * spec.freq_step;
  const double nyq_e = std::norm(spec.bins[64]) * spec.freq_step;
  const auto p = hardy_project(rs);
  CHECK(signal_energy(p) == doctest::Approx((signal_energy(rs) - dc_e - nyq_e) / 2).epsilon(1e-12));

  // Idempotent on its range.
  std::vector<double> re(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) re[i] = 2.0 * p[i].real();
  const auto pp = hardy_project(RealSignal(re, rs.sample_rate()));
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(pp[i] - p[i]) < 1e-12);
}

TEST_CASE("weighted energy") {
  const TimeFrequencyMatrix zero(3, 4, {0, 1, 2, 3}, {0, 1, 2}, {1, 1, 1}, 1.0);
  CHECK(weighted_energy(zero) == 0.0);

  TimeFrequencyMatrix one(1, 1, {0.0}, {0.0}, {2.0}, 0.5);
  one.at(0, 0) = 1.0;
  CHECK(weighted_energy(one) == doctest::Approx(1.0));

  const auto vals = random_complex(12, 4);
  const TimeFrequencyMatrix m(vals, {0, 1, 2, 3}, {1, 2, 3}, {0.5, 1.5, 2.0}, 0.1);
  double brute = 0.0;
  for (std::size_t f = 0; f < 4; ++f)
    for (std::size_t r = 0; r < 3; ++r) brute += std::norm(vals[r * 4 + f]) * m.row_weights()[r] * 0.1;
  CHECK(weighted_energy(m) == doctest::Approx(brute).epsilon(1e-14));

  const auto upper = m.rows_from(2.0);
  CHECK(upper.rows() == 2);
  const auto lower_only = TimeFrequencyMatrix(std::vector<Complex>(vals.begin(), vals.begin() + 4),
                                              {0, 1, 2, 3}, {1}, {0.5}, 0.1);
  CHECK(weighted_energy(upper) + weighted_energy(lower_only) ==
        doctest::Approx(weighted_energy(m)).epsilon(1e-14));

  CHECK_THROWS(TimeFrequencyMatrix(std::vector<Complex>(5), {0, 1}, {0, 1}, {1, 1}, 1.0));
  CHECK_THROWS(TimeFrequencyMatrix(2, 2, {0, 1}, {0, 1}, {1, -1}, 1.0));
}
