#pragma once

#include <cstdint>
#include <vector>

#include "focuslab/signal.hpp"

namespace focuslab {

struct MultisineSpec {
  std::vector<double> frequencies{50.0, 120.0, 135.0, 400.0};
  std::vector<double> amplitudes{1.0, 1.0, 1.0, 1.0};
  std::size_t spikes = 50;
  double spike_amp_lo = 1.0;
  double spike_amp_hi = 5.0;
  double noise_std = 0.1;
  double duration = 4.0;
  double sample_rate = 4000.0;
  std::uint64_t seed = 42;

  void validate() const;
};

struct SpikeTrainSpec {
  std::size_t count = 8;
  double duration = 2.0;
  double sample_rate = 4000.0;
  double decay = 0.002;      // time constant of each impulse, seconds
  double tail = 20.0;        // impulses are cut after tail * decay
  double amp_lo = 0.5;
  double amp_hi = 1.0;
  std::uint64_t seed = 42;

  void validate() const;
};

// Sines + spikes at distinct random samples + white Gaussian noise.
RealSignal synth_multisine_spikes_noise(const MultisineSpec& spec);
// Sample indices that received a spike, in generation order.
std::vector<std::size_t> multisine_spike_positions(const MultisineSpec& spec);

// One-sided damped impulses x(t) = A exp(-(t - t_k)/decay), t_k = (k + 1/2) T / K
// snapped to the sample grid.
RealSignal synth_spike_train(const SpikeTrainSpec& spec);
std::vector<double> spike_train_times(const SpikeTrainSpec& spec);

}  // namespace focuslab
