#pragma once

#include <string>
#include <string_view>

namespace focuslab {

// Strictly increasing C1 relabeling u -> gamma(u) of the frequency or scale
// axis, with closed-form derivative and inverse.
class ScaleMap {
 public:
  enum class Kind { identity, sinh, exponential };
  enum class Codomain { all_reals, positive_reals };

  static ScaleMap identity();
  static ScaleMap exponential();
  static ScaleMap sinh(double scale);
  // "identity" | "exp" | "sinh:<scale>"
  static ScaleMap parse(std::string_view text);

  Kind kind() const { return kind_; }
  Codomain codomain() const {
    return kind_ == Kind::exponential ? Codomain::positive_reals : Codomain::all_reals;
  }
  double scale() const { return scale_; }

  double eval(double u) const;
  double deriv(double u) const;
  double invert(double y) const;

  std::string describe() const;

 private:
  ScaleMap(Kind kind, double scale) : kind_(kind), scale_(scale) {}
  Kind kind_;
  double scale_;
};

}  // namespace focuslab
