#pragma once

#include <map>
#include <string>
#include <string_view>

#include "focuslab/signal.hpp"

namespace focuslab {

// 16-bit PCM mono little-endian WAV; samples map to value / 32768.
RealSignal read_wav(const std::string& path);
// Rounds to the nearest PCM16 code and clamps to [-32768, 32767].
void write_wav(const RealSignal& signal, const std::string& path);

// One sample per line; an optional "# sample_rate=<Hz>" header (default 1).
RealSignal read_csv_signal(const std::string& path);
void write_csv_signal(const RealSignal& signal, const std::string& path);

// Header lines "# rows=", "# cols=", "# frame_step=", "# row_axis=",
// "# row_weights=", "# time_axis=", then one line per row with re,im pairs.
void write_matrix_csv(const TimeFrequencyMatrix& m, const std::string& path);
std::string format_matrix_csv(const TimeFrequencyMatrix& m);
TimeFrequencyMatrix read_matrix_csv(const std::string& path);

// Binary P5 log-magnitude image, highest row on top.
void write_pgm(const TimeFrequencyMatrix& m, const std::string& path, double db_range = 80.0);
std::string render_pgm(const TimeFrequencyMatrix& m, double db_range = 80.0);

// "key = value" lines; '#' starts a comment. Later keys override earlier ones.
std::map<std::string, std::string> parse_config(std::string_view text);
std::map<std::string, std::string> read_config(const std::string& path);

}  // namespace focuslab
