#include "focuslab/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <unordered_set>

#include "focuslab/errors.hpp"

namespace focuslab {
namespace {

std::size_t sample_count(double duration, double rate) {
  return static_cast<std::size_t>(std::llround(duration * rate));
}

struct Spikes {
  std::vector<std::size_t> positions;
  std::vector<double> amplitudes;
};

Spikes draw_spikes(const MultisineSpec& spec, std::size_t n, std::mt19937_64& rng) {
  Spikes s;
  std::uniform_int_distribution<std::size_t> pos(0, n - 1);
  std::uniform_real_distribution<double> amp(spec.spike_amp_lo, spec.spike_amp_hi);
  std::unordered_set<std::size_t> used;
  while (s.positions.size() < spec.spikes) {
    const std::size_t p = pos(rng);
    if (!used.insert(p).second) continue;
    s.positions.push_back(p);
    s.amplitudes.push_back(amp(rng));
  }
  return s;
}

}  // namespace

void MultisineSpec::validate() const {
  if (!(sample_rate > 0.0) || !(duration > 0.0)) throw InvalidInput("duration and rate must be positive");
  if (frequencies.size() != amplitudes.size())
    throw InvalidInput("one amplitude per sine frequency is required");
  for (double f : frequencies)
    if (!(f >= 0.0) || f >= 0.5 * sample_rate) throw InvalidInput("sine frequency above Nyquist");
  if (sample_count(duration, sample_rate) == 0) throw InvalidInput("signal would be empty");
  if (spikes > sample_count(duration, sample_rate)) throw InvalidInput("more spikes than samples");
  if (spike_amp_hi < spike_amp_lo) throw InvalidInput("spike amplitude range is reversed");
  if (!(noise_std >= 0.0)) throw InvalidInput("noise level must be >= 0");
}

void SpikeTrainSpec::validate() const {
  if (!(sample_rate > 0.0) || !(duration > 0.0)) throw InvalidInput("duration and rate must be positive");
  if (sample_count(duration, sample_rate) == 0) throw InvalidInput("signal would be empty");
  if (!(decay > 0.0) || !(tail > 0.0)) throw InvalidInput("decay and tail must be positive");
  if (amp_hi < amp_lo) throw InvalidInput("amplitude range is reversed");
}

RealSignal synth_multisine_spikes_noise(const MultisineSpec& spec) {
  spec.validate();
  const std::size_t n = sample_count(spec.duration, spec.sample_rate);
  const double dt = 1.0 / spec.sample_rate;
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < spec.frequencies.size(); ++i) {
    const double w = 2.0 * std::numbers::pi * spec.frequencies[i];
    for (std::size_t k = 0; k < n; ++k)
      x[k] += spec.amplitudes[i] * std::sin(w * static_cast<double>(k) * dt);
  }
  std::mt19937_64 rng(spec.seed);
  const Spikes s = draw_spikes(spec, n, rng);
  for (std::size_t i = 0; i < s.positions.size(); ++i) x[s.positions[i]] += s.amplitudes[i];
  if (spec.noise_std > 0.0) {
    std::normal_distribution<double> noise(0.0, spec.noise_std);
    for (auto& v : x) v += noise(rng);
  }
  return RealSignal(std::move(x), spec.sample_rate);
}

std::vector<std::size_t> multisine_spike_positions(const MultisineSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  return draw_spikes(spec, sample_count(spec.duration, spec.sample_rate), rng).positions;
}

std::vector<double> spike_train_times(const SpikeTrainSpec& spec) {
  spec.validate();
  std::vector<double> t;
  for (std::size_t k = 0; k < spec.count; ++k) {
    const double target = (static_cast<double>(k) + 0.5) * spec.duration / static_cast<double>(spec.count);
    t.push_back(std::round(target * spec.sample_rate) / spec.sample_rate);
  }
  return t;
}

RealSignal synth_spike_train(const SpikeTrainSpec& spec) {
  spec.validate();
  const std::size_t n = sample_count(spec.duration, spec.sample_rate);
  std::vector<double> x(n, 0.0);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> amp(spec.amp_lo, spec.amp_hi);
  const auto tail = static_cast<std::size_t>(std::floor(spec.tail * spec.decay * spec.sample_rate));
  for (double t : spike_train_times(spec)) {
    const auto start = static_cast<std::size_t>(std::llround(t * spec.sample_rate));
    const double a = amp(rng);
    for (std::size_t j = 0; j <= tail && start + j < n; ++j)
      x[start + j] += a * std::exp(-static_cast<double>(j) / (spec.decay * spec.sample_rate));
  }
  return RealSignal(std::move(x), spec.sample_rate);
}

}  // namespace focuslab
