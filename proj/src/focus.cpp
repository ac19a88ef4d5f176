#include "focuslab/focus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "focuslab/errors.hpp"

namespace focuslab {
namespace {

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InvalidInput("bad " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

double slice_entropy(std::span<const double> slice, const FocusSpec& spec, double delta) {
  try {
    if (spec.kind == FocusSpec::Kind::renyi) return renyi_entropy_slice(slice, spec.alpha, delta);
    return shannon_entropy_slice(slice, delta);
  } catch (const UndefinedEntropy&) {
    return 0.0;
  }
}

// Renormalize raw values over [first, last) and pin everything else to 1.
std::vector<double> renormalize_interior(const std::vector<double>& raw, std::size_t first,
                                         std::size_t last, const FocusSpec& spec) {
  std::vector<double> out(raw.size(), 1.0);
  if (first >= last) return out;
  std::vector<double> inner(raw.begin() + static_cast<long>(first),
                            raw.begin() + static_cast<long>(last));
  inner = affine_renormalize(moving_average(inner, spec.smoothing), spec.sigma_max);
  std::copy(inner.begin(), inner.end(), out.begin() + static_cast<long>(first));
  return out;
}

TimeFocusProfile profile_from_raw(const ComplexSignal& f, const FocusSpec& spec,
                                  const TimeFocusConfig& cfg) {
  spec.validate();
  const FrameGrid fg = frame_grid(SampleGrid::of(f), cfg);
  const auto unit = TimeFocusProfile::constant(fg, 1.0);
  const auto raw = time_focus_raw(transform_time_focused(f, unit, cfg), spec);
  const double t_end = f.time_at(f.size() - 1);
  std::size_t first = fg.count, last = 0;
  for (std::size_t m = 0; m < fg.count; ++m) {
    const double t = fg.time(m);
    if (t >= f.start_time() - 1e-12 && t <= t_end + 1e-12) {
      first = std::min(first, m);
      last = m + 1;
    }
  }
  return TimeFocusProfile(fg, renormalize_interior(raw, first, last, spec), spec.sigma_max);
}

}  // namespace

FocusSpec FocusSpec::parse(std::string_view text, double sigma_max) {
  FocusSpec s;
  s.sigma_max = sigma_max;
  if (text == "entropy" || text == "shannon") {
    s.kind = Kind::shannon;
  } else if (text.starts_with("moment:")) {
    s.kind = Kind::moment;
    const double n = parse_number(text.substr(7), "moment order");
    if (n != std::floor(n)) throw InvalidInput("moment order must be an integer");
    s.order = static_cast<int>(n);
  } else if (text == "moment") {
    s.kind = Kind::moment;
  } else if (text.starts_with("renyi:")) {
    s.kind = Kind::renyi;
    s.alpha = parse_number(text.substr(6), "Renyi order");
  } else {
    throw InvalidInput("unknown focus '" + std::string(text) + "'");
  }
  s.validate();
  return s;
}

void FocusSpec::validate() const {
  if (!(sigma_max >= 1.0) || !std::isfinite(sigma_max))
    throw InvalidInput("sigma_max must be finite and >= 1");
  if (kind == Kind::moment && order < 0) throw InvalidInput("moment order must be >= 0");
  if (kind == Kind::renyi && (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)))
    throw InvalidInput("Renyi order must be positive and != 1");
}

std::string FocusSpec::describe() const {
  switch (kind) {
    case Kind::moment: return "moment:" + std::to_string(order);
    case Kind::renyi: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "renyi:%g", alpha);
      return buf;
    }
    case Kind::shannon: break;
  }
  return "entropy";
}

std::vector<double> affine_renormalize(std::span<const double> raw, double sigma_max) {
  if (!(sigma_max >= 1.0)) throw InvalidInput("sigma_max must be >= 1");
  std::vector<double> out(raw.size(), 1.0);
  if (raw.empty()) return out;
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  if (!(*hi > *lo)) return out;
  const double span = *hi - *lo;
  for (std::size_t i = 0; i < raw.size(); ++i)
    out[i] = 1.0 + (sigma_max - 1.0) * ((raw[i] - *lo) / span);
  return out;
}

std::vector<double> moving_average(std::span<const double> raw, std::size_t width) {
  std::vector<double> out(raw.begin(), raw.end());
  if (width <= 1) return out;
  const std::size_t half = width / 2;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::size_t a = i >= half ? i - half : 0;
    const std::size_t b = std::min(raw.size(), i + half + 1);
    double acc = 0.0;
    for (std::size_t k = a; k < b; ++k) acc += raw[k];
    out[i] = acc / static_cast<double>(b - a);
  }
  return out;
}

double shannon_entropy_slice(std::span<const double> slice, double delta) {
  double total = 0.0;
  for (double s : slice) {
    if (s < 0.0 || !std::isfinite(s)) throw InvalidInput("slice values must be finite and >= 0");
    total += s;
  }
  if (!(total > 0.0)) throw UndefinedEntropy("entropy of an all-zero slice");
  double h = 0.0;
  for (double s : slice) {
    if (s == 0.0) continue;
    const double p = s / total;  // = s delta / sum(s delta)
    h -= p * std::log(p / delta);
  }
  return h;
}

double renyi_entropy_slice(std::span<const double> slice, double alpha, double delta) {
  if (!(alpha > 0.0) || alpha == 1.0) throw InvalidInput("Renyi order must be positive and != 1");
  double l1 = 0.0;
  for (double s : slice) {
    if (s < 0.0 || !std::isfinite(s)) throw InvalidInput("slice values must be finite and >= 0");
    l1 += s;
  }
  if (!(l1 > 0.0)) throw UndefinedEntropy("entropy of an all-zero slice");
  // Work with p_k = s_k / sum s so the result is scale free.
  double acc = 0.0;
  for (double s : slice)
    if (s > 0.0) acc += std::pow(s / l1, alpha);
  return std::log(acc) / (1.0 - alpha) + std::log(delta);
}

std::vector<double> time_focus_raw(const TimeFrequencyMatrix& v, const FocusSpec& spec) {
  spec.validate();
  const std::size_t rows = v.rows();
  const std::size_t frames = v.frames();
  const auto& omega = v.row_axis();
  const auto& weight = v.row_weights();
  std::vector<double> raw(frames, 0.0);
  std::vector<double> slice(rows);
  for (std::size_t m = 0; m < frames; ++m) {
    for (std::size_t k = 0; k < rows; ++k) slice[k] = std::abs(v.at(k, m));
    if (spec.kind == FocusSpec::Kind::moment) {
      double acc = 0.0;
      for (std::size_t k = 0; k < rows; ++k)
        acc += std::pow(std::abs(omega[k]), spec.order) * slice[k] * weight[k];
      raw[m] = acc;
    } else {
      raw[m] = slice_entropy(slice, spec, rows ? weight[0] : 1.0);
    }
  }
  return raw;
}

TimeFocusProfile moment_time_focus(const ComplexSignal& f, const FocusSpec& spec,
                                   const TimeFocusConfig& cfg) {
  FocusSpec s = spec;
  s.kind = FocusSpec::Kind::moment;
  return profile_from_raw(f, s, cfg);
}

TimeFocusProfile shannon_entropy_time_focus(const ComplexSignal& f, const FocusSpec& spec,
                                            const TimeFocusConfig& cfg) {
  FocusSpec s = spec;
  s.kind = FocusSpec::Kind::shannon;
  return profile_from_raw(f, s, cfg);
}

TimeFocusProfile renyi_time_focus(const ComplexSignal& f, const FocusSpec& spec,
                                  const TimeFocusConfig& cfg) {
  FocusSpec s = spec;
  s.kind = FocusSpec::Kind::renyi;
  return profile_from_raw(f, s, cfg);
}

TimeFocusProfile time_focus(const ComplexSignal& f, const FocusSpec& spec,
                            const TimeFocusConfig& cfg) {
  return profile_from_raw(f, spec, cfg);
}

TimeFocusProfile time_focus(const RealSignal& f, const FocusSpec& spec,
                            const TimeFocusConfig& cfg) {
  return profile_from_raw(to_complex(f), spec, cfg);
}

FreqFocusProfile entropy_freq_focus(const ComplexSignal& f_analytic, const FocusSpec& spec,
                                    const ScaleGrid& grid, const AnalyticWavelet& w,
                                    std::size_t outer_rows) {
  spec.validate();
  if (spec.kind == FocusSpec::Kind::moment)
    throw InvalidInput("frequency focus supports entropy and renyi only");
  const std::size_t rows = grid.size();
  if (outer_rows == static_cast<std::size_t>(-1)) outer_rows = rows / 8;
  const auto v = wavelet_transform(f_analytic, grid, w);
  std::vector<double> raw(rows, 0.0);
  std::vector<double> slice(v.frames());
  for (std::size_t j = 0; j < rows; ++j) {
    const auto row = v.row(j);
    for (std::size_t m = 0; m < row.size(); ++m) slice[m] = std::abs(row[m]);
    raw[j] = slice_entropy(slice, spec, v.frame_step());
  }
  const std::size_t first = std::min(outer_rows, rows);
  const std::size_t last = rows > outer_rows ? rows - outer_rows : 0;
  return FreqFocusProfile(renormalize_interior(raw, first, last, spec), spec.sigma_max);
}

}  // namespace focuslab
