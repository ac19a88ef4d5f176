#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "focuslab/signal.hpp"

namespace focuslab {

// Settings shared by the analyze and focus subcommands. Empty gamma/focus
// strings select the mode's default.
struct AnalysisConfig {
  std::string mode = "time";  // time | freq | cqt | wavelet | stft
  std::string window = "gauss:10:3";
  std::string wavelet = "bump:1:0.2:0.8";
  std::string gamma;
  std::string focus;
  double sigma_max = 5.0;
  std::size_t hop = 1;
  std::size_t fft_size = 0;
  double fmin = 0.0;  // 0: derived from the sample rate
  double fmax = 0.0;
  std::size_t rows = 64;
  std::uint64_t seed = 42;
  double db_range = 80.0;

  static AnalysisConfig from_map(const std::map<std::string, std::string>& kv);
  void validate() const;
};

struct FocusTable {
  std::string axis_name;
  std::vector<double> axis;
  std::vector<double> frequency;  // frequency modes only
  std::vector<double> sigma;
};

// Time modes keep only the nonnegative-frequency rows of a real input.
TimeFrequencyMatrix analyze_signal(const RealSignal& f, const AnalysisConfig& cfg, bool focused);
FocusTable compute_focus(const RealSignal& f, const AnalysisConfig& cfg);

// Exit codes: 0 success, 1 failed checks or runtime error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace focuslab
