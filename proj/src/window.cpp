#include "focuslab/window.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "focuslab/errors.hpp"

namespace focuslab {

namespace {

double parse_number(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidInput("bad number in " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

Window::Window(Kind kind, double duration, double shape, double amplitude)
    : kind_(kind), duration_(duration), shape_(shape), amplitude_(amplitude) {
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw InvalidInput("window duration must be positive");
  if (kind == Kind::truncated_gaussian) {
    if (!(shape > 0.0)) throw InvalidInput("gaussian window shape must be positive");
    sigma_ = duration / (2.0 * shape);
  }
  if (amplitude == 0.0 || !std::isfinite(amplitude)) throw InvalidInput("window must be nonzero");
  l2_norm_ = std::sqrt(energy_between(-half_support(), half_support()));
}

Window Window::truncated_gaussian(double duration, double shape) {
  return Window(Kind::truncated_gaussian, duration, shape, 1.0);
}

Window Window::hann(double duration) { return Window(Kind::hann, duration, 0.0, 1.0); }

Window Window::parse(std::string_view text) {
  auto parts = split(text, ':');
  if (parts[0] == "gauss" && (parts.size() == 2 || parts.size() == 3)) {
    const double ms = parse_number(parts[1], "window spec");
    const double shape = parts.size() == 3 ? parse_number(parts[2], "window spec") : 3.0;
    return truncated_gaussian(ms * 1e-3, shape);
  }
  if (parts[0] == "hann" && parts.size() == 2) return hann(parse_number(parts[1], "window spec") * 1e-3);
  throw InvalidInput("unknown window spec: " + std::string(text));
}

Window Window::scaled(double factor) const {
  return Window(kind_, duration_, shape_, amplitude_ * factor);
}

double Window::operator()(double x) const {
  if (std::abs(x) > half_support()) return 0.0;
  switch (kind_) {
    case Kind::truncated_gaussian: return amplitude_ * std::exp(-x * x / (2.0 * sigma_ * sigma_));
    case Kind::hann: {
      const double c = std::cos(std::numbers::pi * x / duration_);
      return amplitude_ * c * c;
    }
  }
  return 0.0;
}

double Window::energy_primitive(double y) const {
  // Antiderivative of h^2 vanishing at y = 0 (odd in y).
  const double a2 = amplitude_ * amplitude_;
  switch (kind_) {
    case Kind::truncated_gaussian:
      return a2 * 0.5 * sigma_ * std::sqrt(std::numbers::pi) * std::erf(y / sigma_);
    case Kind::hann: {
      const double d = duration_;
      const double w = 2.0 * std::numbers::pi / d;
      return a2 * (0.375 * y + std::sin(w * y) / (2.0 * w) + std::sin(2.0 * w * y) / (16.0 * w));
    }
  }
  return 0.0;
}

double Window::energy_between(double a, double b) const {
  const double hs = half_support();
  a = std::max(a, -hs);
  b = std::min(b, hs);
  if (!(b > a)) return 0.0;
  return energy_primitive(b) - energy_primitive(a);
}

double Window::half_height_radius() const {
  const double target = std::abs(amplitude_) / std::sqrt(2.0);
  const double hs = half_support();
  if (std::abs((*this)(hs)) >= target) return hs;
  double lo = 0.0, hi = hs;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hs; ++it) {
    const double mid = 0.5 * (lo + hi);
    (std::abs((*this)(mid)) >= target ? lo : hi) = mid;
  }
  return lo;
}

std::string Window::describe() const {
  char buf[96];
  if (kind_ == Kind::hann)
    std::snprintf(buf, sizeof buf, "hann:%g", duration_ * 1e3);
  else
    std::snprintf(buf, sizeof buf, "gauss:%g:%g", duration_ * 1e3, shape_);
  return buf;
}

}  // namespace focuslab
