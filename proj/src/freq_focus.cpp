#include "focuslab/freq_focus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "focuslab/errors.hpp"
#include "focuslab/quadrature.hpp"

namespace focuslab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMinSupportBins = 8;

std::vector<double> frame_times(const SampleGrid& g, std::size_t hop) {
  std::vector<double> t;
  for (std::size_t n = 0; n < g.size; n += hop) t.push_back(g.time_at(n));
  return t;
}

// Applies a per-row frequency response to the spectrum of f and returns the
// inverse DFT decimated by hop. response(k, xi) multiplies bin k.
template <typename Response>
std::vector<Complex> filtered_row(const Spectrum& spec, const SampleGrid& g, std::size_t hop,
                                  Response&& response) {
  Spectrum row{std::vector<Complex>(spec.size()), spec.freq_step, spec.time_origin};
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const Complex b = spec.bins[k];
    if (b != Complex(0.0)) row.bins[k] = b * response(spec.frequency(k));
  }
  const ComplexSignal x = dft_inverse(row);
  std::vector<Complex> out;
  out.reserve((g.size + hop - 1) / hop);
  for (std::size_t n = 0; n < g.size; n += hop) out.push_back(x[n]);
  return out;
}

void require_hop(std::size_t hop) {
  if (hop == 0) throw InvalidInput("hop must be positive");
}

// sigma at y = gamma(u); 1 outside the grid.
double sigma_at_y(const FreqFocusProfile& p, const ScaleGrid& g, double y) {
  if (!(y > 0.0)) return 1.0;
  const double r = (g.gamma().invert(y) - g.u_values().front()) / g.du();
  const double j = std::floor(r + 0.5);
  if (j < 0.0 || j >= static_cast<double>(g.size())) return 1.0;
  return p.sigma()[static_cast<std::size_t>(j)];
}

// Integral of |psi_hat(s xi / y - (s - 1) xi0)|^2 / y over y in (a, b).
double kernel_piece(const AnalyticWavelet& w, double xi, double s, double a, double b) {
  const double shift = (s - 1.0) * w.xi0();
  const double lo = std::max(a, s * xi / (w.support().hi + shift));
  const double hi = std::min(b, s * xi / (w.support().lo + shift));
  return quad::integrate([&](double y) { return w.power(s * xi / y - shift) / y; }, lo, hi, 1e-12);
}

void check_profile(const FreqFocusProfile& p, const ScaleGrid& g) {
  if (p.size() != g.size()) throw InvalidInput("focus profile does not match the scale grid");
}

}  // namespace

ScaleGrid::ScaleGrid(std::vector<double> u_values, ScaleMap gamma)
    : u_(std::move(u_values)), gamma_(gamma) {
  if (u_.empty()) throw InvalidGrid("scale grid needs at least one row");
  if (gamma_.codomain() != ScaleMap::Codomain::positive_reals)
    throw InvalidGrid("scale map must take positive values");
  for (double u : u_)
    if (!std::isfinite(u)) throw InvalidGrid("non-finite scale value");
  if (u_.size() > 1) {
    du_ = u_[1] - u_[0];
    if (!(du_ > 0.0)) throw InvalidGrid("scale values must increase");
    for (std::size_t j = 1; j < u_.size(); ++j) {
      const double d = u_[j] - u_[j - 1];
      if (std::abs(d - du_) > 1e-9 * du_) throw InvalidGrid("scale values must be uniform");
    }
  }
}

ScaleGrid ScaleGrid::band(double fmin, double fmax, std::size_t rows, double xi0, ScaleMap gamma) {
  if (!(fmin > 0.0) || !(fmax > fmin)) throw InvalidGrid("need 0 < fmin < fmax");
  if (rows < 2) throw InvalidGrid("need at least two rows");
  if (!(xi0 > 0.0)) throw InvalidGrid("xi0 must be positive");
  const double lo = gamma.invert(fmin / xi0);
  const double hi = gamma.invert(fmax / xi0);
  std::vector<double> u(rows);
  const double step = (hi - lo) / static_cast<double>(rows - 1);
  for (std::size_t j = 0; j < rows; ++j) u[j] = lo + step * static_cast<double>(j);
  return ScaleGrid(std::move(u), gamma);
}

std::vector<double> ScaleGrid::wavelet_weights() const {
  std::vector<double> w(size());
  for (std::size_t j = 0; j < size(); ++j) w[j] = gamma_.deriv(u_[j]) * du_;
  return w;
}

std::vector<double> ScaleGrid::cqt_weights() const {
  std::vector<double> w(size());
  for (std::size_t j = 0; j < size(); ++j) w[j] = gamma_.deriv(u_[j]) / gamma_.eval(u_[j]) * du_;
  return w;
}

void ScaleGrid::check_band(Interval support, double sample_rate) const {
  const double top = scale(size() - 1) * support.hi;
  if (top > 0.5 * sample_rate)
    throw InvalidGrid("scale band reaches " + std::to_string(top) + " Hz, above Nyquist " +
                      std::to_string(0.5 * sample_rate) + " Hz");
}

FreqFocusProfile::FreqFocusProfile(std::vector<double> sigma, double sigma_max)
    : sigma_(std::move(sigma)), sigma_max_(sigma_max) {
  if (!(sigma_max_ >= 1.0) || !std::isfinite(sigma_max_))
    throw InvalidInput("sigma_max must be finite and >= 1");
  if (sigma_.empty()) throw InvalidInput("empty focus profile");
  for (double s : sigma_)
    if (!std::isfinite(s) || s < 1.0 || s > sigma_max_ * (1.0 + 1e-12))
      throw InvalidInput("sigma values must lie in [1, sigma_max]");
}

FreqFocusProfile FreqFocusProfile::constant(std::size_t rows, double value) {
  return FreqFocusProfile(std::vector<double>(rows, value), value);
}

TimeFrequencyMatrix cqt_transform(const ComplexSignal& f, const ScaleGrid& grid,
                                  const CqtReference& h, std::size_t hop) {
  require_hop(hop);
  const Interval psi_support{h.support.lo + 1.0, h.support.hi + 1.0};
  grid.check_band(psi_support, f.sample_rate());
  const SampleGrid sg = SampleGrid::of(f);
  const Spectrum spec = dft_forward(f);
  const auto times = frame_times(sg, hop);
  TimeFrequencyMatrix out(grid.size(), times.size(), times, grid.u_values(),
                          grid.wavelet_weights(), static_cast<double>(hop) * sg.dt());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double g = grid.scale(j);
    const double norm = 1.0 / std::sqrt(g);
    const auto row = filtered_row(spec, sg, hop, [&](double xi) {
      const double y = xi / g - 1.0;
      if (!h.support.contains(y)) return Complex(0.0);
      return norm * std::conj(h.profile(y));
    });
    for (std::size_t m = 0; m < row.size(); ++m)
      out.at(j, m) = row[m] * std::polar(1.0, -kTwoPi * g * times[m]);
  }
  return out;
}

TimeFrequencyMatrix wavelet_transform(const ComplexSignal& f_analytic, const ScaleGrid& grid,
                                      const AnalyticWavelet& w, std::size_t hop) {
  return transform_freq_focused(f_analytic, FreqFocusProfile::constant(grid.size()), grid, w, hop);
}

double freq_shift(double sigma, const AnalyticWavelet& w) { return (sigma - 1.0) * w.xi0(); }

double squeeze(double xi, double u, double sigma, const ScaleGrid& grid,
               const AnalyticWavelet& w) {
  return sigma / grid.gamma().eval(u) * xi - freq_shift(sigma, w);
}

FocusedAtomSpectrum focused_atom_spectrum(double t, double u, double sigma, const ScaleGrid& grid,
                                          const AnalyticWavelet& w, const SampleGrid& samples) {
  if (!(sigma >= 1.0)) throw InvalidInput("sigma must be >= 1");
  if (samples.size == 0) throw InvalidInput("empty sample grid");
  const double g = grid.gamma().eval(u);
  const double norm = 1.0 / std::sqrt(g);
  Spectrum s;
  s.freq_step = samples.sample_rate / static_cast<double>(samples.size);
  s.time_origin = samples.start_time;
  s.bins.resize(samples.size);
  for (std::size_t k = 0; k < samples.size; ++k) {
    const double xi = s.frequency(k);
    const Complex v = w(squeeze(xi, u, sigma, grid, w));
    if (v != Complex(0.0))
      s.bins[k] = norm * v * std::polar(1.0, -kTwoPi * xi * (t - samples.start_time));
  }
  const double shift = freq_shift(sigma, w);
  const double top = g * (w.support().hi + shift) / sigma;
  const double width = g * w.support().width() / sigma;
  FocusedAtomSpectrum out{std::move(s), false};
  out.truncated = top > 0.5 * samples.sample_rate ||
                  width < static_cast<double>(kMinSupportBins) * out.spectrum.freq_step;
  return out;
}

TimeFrequencyMatrix transform_freq_focused(const ComplexSignal& f_analytic,
                                           const FreqFocusProfile& profile, const ScaleGrid& grid,
                                           const AnalyticWavelet& w, std::size_t hop) {
  require_hop(hop);
  check_profile(profile, grid);
  grid.check_band(w.support(), f_analytic.sample_rate());
  const SampleGrid sg = SampleGrid::of(f_analytic);
  const Spectrum spec = dft_forward(f_analytic);
  const auto times = frame_times(sg, hop);
  TimeFrequencyMatrix out(grid.size(), times.size(), times, grid.u_values(),
                          grid.wavelet_weights(), static_cast<double>(hop) * sg.dt());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double u = grid.u_values()[j];
    const double s = profile.sigma()[j];
    const double norm = 1.0 / std::sqrt(grid.scale(j));
    const auto row = filtered_row(spec, sg, hop, [&](double xi) {
      return norm * std::conj(w(squeeze(xi, u, s, grid, w)));
    });
    std::copy(row.begin(), row.end(), out.row(j).begin());
  }
  return out;
}

std::vector<double> kernel_freq(const FreqFocusProfile& profile, const ScaleGrid& grid,
                                const AnalyticWavelet& w, const std::vector<double>& xi_grid) {
  check_profile(profile, grid);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> out(xi_grid.size(), 0.0);
  for (std::size_t i = 0; i < xi_grid.size(); ++i) {
    const double xi = xi_grid[i];
    if (!(xi > 0.0)) continue;
    double acc = kernel_piece(w, xi, 1.0, 0.0, grid.cell_lo(0));
    for (std::size_t j = 0; j < grid.size(); ++j)
      acc += kernel_piece(w, xi, profile.sigma()[j], grid.cell_lo(j), grid.cell_hi(j));
    acc += kernel_piece(w, xi, 1.0, grid.cell_hi(grid.size() - 1), inf);
    out[i] = acc;
  }
  return out;
}

std::vector<double> kernel_freq_substituted(const FreqFocusProfile& profile,
                                            const ScaleGrid& grid, const AnalyticWavelet& w,
                                            const std::vector<double>& xi_grid) {
  check_profile(profile, grid);
  const Interval sup = w.support();
  const double xi0 = w.xi0();
  std::vector<double> out(xi_grid.size(), 0.0);
  std::vector<double> breaks;
  for (std::size_t i = 0; i < xi_grid.size(); ++i) {
    const double xi = xi_grid[i];
    if (!(xi > 0.0)) continue;
    // sigma o gamma^-1(xi / z) jumps where xi / z crosses a cell boundary.
    breaks.clear();
    for (std::size_t j = 0; j < grid.size(); ++j) {
      for (double y : {grid.cell_lo(j), grid.cell_hi(j)}) {
        const double z = xi / y;
        if (z > sup.lo && z < sup.hi) breaks.push_back(z);
      }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    auto integrand = [&](double z) {
      const double s = sigma_at_y(profile, grid, xi / z);
      return w.power(s * z - xi0 * (s - 1.0)) / z;
    };
    out[i] = quad::integrate_pieces(integrand, sup.lo, sup.hi, breaks, 1e-12);
  }
  return out;
}

double upper_bound_C(const FreqFocusProfile& profile, const ScaleGrid& grid,
                     const AnalyticWavelet& w) {
  check_profile(profile, grid);
  double excess = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    excess += (profile.sigma()[j] - 1.0) * std::log(grid.cell_hi(j) / grid.cell_lo(j));
  return w.c_psi() + w.a_psi() * excess;
}

double lower_bound_d(double peak_value, double a, double b) {
  if (!(a > 0.0) || !(b > a)) throw InvalidInput("need 0 < a < b");
  return 0.5 * peak_value * peak_value * std::log(b / a);
}

double lower_bound_d(const AnalyticWavelet& w) {
  return lower_bound_d(w.peak_value(), w.halfpower().lo, w.halfpower().hi);
}

FreqBoundReport check_freq_bounds(const ComplexSignal& f_analytic, const FreqFocusProfile& profile,
                                  const ScaleGrid& grid, const AnalyticWavelet& w, double slack) {
  FreqBoundReport r;
  r.slack = slack;
  r.d_psi = lower_bound_d(w);
  r.C_sigma = upper_bound_C(profile, grid, w);
  r.measured_energy = weighted_energy(transform_freq_focused(f_analytic, profile, grid, w));
  r.signal_energy = signal_energy(f_analytic);
  const double d_xi = f_analytic.sample_rate() / static_cast<double>(f_analytic.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double width = grid.scale(j) * w.support().width() / profile.sigma()[j];
    if (width < static_cast<double>(kMinSupportBins) * d_xi) r.truncated = true;
  }
  r.lower_ok = r.measured_energy >= r.d_psi * r.signal_energy * (1.0 - slack);
  r.upper_ok = r.measured_energy <= r.C_sigma * r.signal_energy * (1.0 + slack);
  return r;
}

}  // namespace focuslab
