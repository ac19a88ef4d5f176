#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <span>

namespace focuslab::quad {

// Adaptive Gauss-Kronrod on [a, b]; returns 0 for empty intervals.
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-13) {
  if (!(b > a)) return 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  return GK::integrate(f, a, b, 10, rel_tol);
}

namespace detail {

using GK31 = boost::math::quadrature::gauss_kronrod<double, 31>;

template <typename F>
double bisect(F& f, double a, double b, double abs_tol, unsigned depth) {
  double err = 0.0;
  const double est = GK31::integrate(f, a, b, 0, 0.0, &err);
  if (err <= abs_tol || depth == 0) return est;
  const double m = 0.5 * (a + b);
  return bisect(f, a, m, 0.5 * abs_tol, depth - 1) + bisect(f, m, b, 0.5 * abs_tol, depth - 1);
}

}  // namespace detail

// Adaptive integral over [a, b] split at the given interior breakpoints
// (which need not be sorted or inside the interval). The tolerance is
// relative to the whole integral, so near-empty pieces are not over-refined.
template <typename F>
double integrate_pieces(F&& f, double a, double b, std::span<const double> breaks,
                        double rel_tol = 1e-13) {
  if (!(b > a)) return 0.0;
  auto next = [&](double lo) {
    double hi = b;
    for (double x : breaks) {
      if (x > lo && x < hi) hi = x;
    }
    return hi;
  };
  double scale = 0.0;
  std::size_t pieces = 0;
  for (double lo = a; lo < b; lo = next(lo), ++pieces) {
    double l1 = 0.0;
    detail::GK31::integrate(f, lo, next(lo), 0, 0.0, nullptr, &l1);
    scale += l1;
  }
  if (scale == 0.0) return 0.0;
  const double abs_tol = rel_tol * scale / static_cast<double>(pieces);
  double total = 0.0;
  for (double lo = a; lo < b; lo = next(lo)) total += detail::bisect(f, lo, next(lo), abs_tol, 10);
  return total;
}

// Composite trapezoid with n >= 1 subintervals.
template <typename F>
double trapezoid(F&& f, double a, double b, std::size_t n) {
  if (!(b > a)) return 0.0;
  const double h = (b - a) / static_cast<double>(n);
  double acc = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < n; ++i) acc += f(a + h * static_cast<double>(i));
  return acc * h;
}

}  // namespace focuslab::quad
