#pragma once

#include <string>
#include <string_view>

namespace focuslab {

// Real, even, compactly supported analysis window h on [-l/2, l/2].
// Evaluation is closed-form so the window can be sampled at any scale.
class Window {
 public:
  enum class Kind { truncated_gaussian, hann };

  // h(x) = exp(-x^2 / (2 s^2)) on |x| <= duration/2, s = duration / (2 shape).
  static Window truncated_gaussian(double duration, double shape);
  // h(x) = cos^2(pi x / duration) on |x| <= duration/2.
  static Window hann(double duration);
  // "gauss:<ms>:<shape>" | "hann:<ms>"
  static Window parse(std::string_view text);

  // Same window multiplied by a constant factor.
  Window scaled(double factor) const;

  Kind kind() const { return kind_; }
  double operator()(double x) const;

  double support_length() const { return duration_; }
  double half_support() const { return 0.5 * duration_; }
  double sup_norm() const { return amplitude_; }
  double l2_norm() const { return l2_norm_; }
  double l2_norm_squared() const { return l2_norm_ * l2_norm_; }
  double gaussian_width() const { return sigma_; }

  // int_a^b h(y)^2 dy, closed form (clipped to the support).
  double energy_between(double a, double b) const;

  // Largest a with h(y) >= sup_norm / sqrt(2) on (-a, a).
  double half_height_radius() const;

  std::string describe() const;

 private:
  Window(Kind kind, double duration, double shape, double amplitude);
  double energy_primitive(double y) const;

  Kind kind_;
  double duration_;
  double shape_;
  double amplitude_;
  double sigma_ = 0.0;
  double l2_norm_ = 0.0;
};

}  // namespace focuslab
