#include "focuslab/scale_map.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "focuslab/errors.hpp"

namespace focuslab {

ScaleMap ScaleMap::identity() { return ScaleMap(Kind::identity, 1.0); }
ScaleMap ScaleMap::exponential() { return ScaleMap(Kind::exponential, 1.0); }

ScaleMap ScaleMap::sinh(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw InvalidInput("sinh scale map needs a positive scale");
  return ScaleMap(Kind::sinh, scale);
}

ScaleMap ScaleMap::parse(std::string_view text) {
  if (text == "identity" || text == "id") return identity();
  if (text == "exp" || text == "exponential") return exponential();
  if (text.starts_with("sinh:")) {
    auto rest = text.substr(5);
    double scale = 0.0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), scale);
    if (ec != std::errc() || ptr != rest.data() + rest.size())
      throw InvalidInput("bad sinh scale in gamma spec: " + std::string(text));
    return sinh(scale);
  }
  throw InvalidInput("unknown gamma spec: " + std::string(text));
}

double ScaleMap::eval(double u) const {
  switch (kind_) {
    case Kind::identity: return u;
    case Kind::sinh: return scale_ * std::sinh(u / scale_);
    case Kind::exponential: return std::exp(u);
  }
  return u;
}

double ScaleMap::deriv(double u) const {
  switch (kind_) {
    case Kind::identity: return 1.0;
    case Kind::sinh: return std::cosh(u / scale_);
    case Kind::exponential: return std::exp(u);
  }
  return 1.0;
}

double ScaleMap::invert(double y) const {
  switch (kind_) {
    case Kind::identity: return y;
    case Kind::sinh: return scale_ * std::asinh(y / scale_);
    case Kind::exponential:
      if (!(y > 0.0)) throw DomainError("exponential scale map: inverse needs y > 0");
      return std::log(y);
  }
  return y;
}

std::string ScaleMap::describe() const {
  switch (kind_) {
    case Kind::identity: return "identity";
    case Kind::exponential: return "exp";
    case Kind::sinh: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "sinh:%g", scale_);
      return buf;
    }
  }
  return "identity";
}

}  // namespace focuslab
