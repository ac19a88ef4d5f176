#include "focuslab/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "focuslab/errors.hpp"

namespace focuslab {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void dump(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write failed: " + path);
}

std::uint32_t le32(const std::string& b, std::size_t at) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 3])) << 24;
}

std::uint16_t le16(const std::string& b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                    static_cast<unsigned char>(b[at + 1]) << 8);
}

void put16(std::string& b, std::uint16_t v) {
  b.push_back(static_cast<char>(v & 0xff));
  b.push_back(static_cast<char>(v >> 8));
}

void put32(std::string& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

double to_double(const std::string& field, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    throw FormatError("non-numeric field '" + field + "' in " + context);
  }
  if (used != field.size()) throw FormatError("non-numeric field '" + field + "' in " + context);
  return v;
}

std::vector<double> split_numbers(const std::string& line, const std::string& context) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(to_double(trim(field), context));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  char buf[40];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

}  // namespace

RealSignal read_wav(const std::string& path) {
  const std::string b = slurp(path);
  if (b.size() < 12 || b.compare(0, 4, "RIFF") != 0 || b.compare(8, 4, "WAVE") != 0)
    throw FormatError(path + ": not a RIFF/WAVE file");
  std::size_t at = 12;
  bool have_fmt = false;
  std::uint32_t rate = 0;
  while (at + 8 <= b.size()) {
    const std::string id = b.substr(at, 4);
    const std::uint32_t size = le32(b, at + 4);
    const std::size_t body = at + 8;
    if (body + size > b.size()) throw FormatError(path + ": truncated chunk '" + id + "'");
    if (id == "fmt ") {
      if (size < 16) throw FormatError(path + ": short fmt chunk");
      const std::uint16_t format = le16(b, body);
      const std::uint16_t channels = le16(b, body + 2);
      rate = le32(b, body + 4);
      const std::uint16_t bits = le16(b, body + 14);
      if (format != 1) throw FormatError(path + ": only PCM encoding is supported");
      if (channels != 1) throw FormatError(path + ": only mono files are supported");
      if (bits != 16) throw FormatError(path + ": only 16-bit samples are supported");
      if (rate == 0) throw FormatError(path + ": zero sample rate");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw FormatError(path + ": data chunk before fmt chunk");
      if (size < 2) throw FormatError(path + ": empty data chunk");
      std::vector<double> x(size / 2);
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = static_cast<std::int16_t>(le16(b, body + 2 * i)) / 32768.0;
      return RealSignal(std::move(x), static_cast<double>(rate));
    }
    at = body + size + (size & 1);
  }
  throw FormatError(path + ": no data chunk");
}

void write_wav(const RealSignal& signal, const std::string& path) {
  const double rate = std::round(signal.sample_rate());
  if (rate < 1.0 || rate > 4294967295.0) throw InvalidInput("sample rate not representable in WAV");
  const auto data_bytes = static_cast<std::uint32_t>(2 * signal.size());
  std::string b = "RIFF";
  put32(b, 36 + data_bytes);
  b += "WAVEfmt ";
  put32(b, 16);
  put16(b, 1);
  put16(b, 1);
  put32(b, static_cast<std::uint32_t>(rate));
  put32(b, static_cast<std::uint32_t>(rate) * 2);
  put16(b, 2);
  put16(b, 16);
  b += "data";
  put32(b, data_bytes);
  for (double v : signal.samples()) {
    const double code = std::clamp(std::round(v * 32768.0), -32768.0, 32767.0);
    put16(b, static_cast<std::uint16_t>(static_cast<std::int16_t>(code)));
  }
  dump(path, b);
}

RealSignal read_csv_signal(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  double rate = 1.0;
  std::vector<double> x;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto eq = t.find("sample_rate=");
      if (eq != std::string::npos)
        rate = to_double(trim(t.substr(eq + 12)), path + ":" + std::to_string(lineno));
      continue;
    }
    x.push_back(to_double(t, path + ":" + std::to_string(lineno)));
  }
  if (x.empty()) throw FormatError(path + ": no samples");
  return RealSignal(std::move(x), rate);
}

void write_csv_signal(const RealSignal& signal, const std::string& path) {
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "# sample_rate=%.17g\n", signal.sample_rate());
  out += buf;
  for (double v : signal.samples()) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out += buf;
  }
  dump(path, out);
}

std::string format_matrix_csv(const TimeFrequencyMatrix& m) {
  std::string out;
  char buf[64];
  out += "# rows=" + std::to_string(m.rows()) + "\n";
  out += "# cols=" + std::to_string(m.frames()) + "\n";
  std::snprintf(buf, sizeof buf, "# frame_step=%.17g\n", m.frame_step());
  out += buf;
  out += "# row_axis=" + join(m.row_axis()) + "\n";
  out += "# row_weights=" + join(m.row_weights()) + "\n";
  out += "# time_axis=" + join(m.time_axis()) + "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%s%.17g,%.17g", c ? "," : "", row[c].real(), row[c].imag());
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_matrix_csv(const TimeFrequencyMatrix& m, const std::string& path) {
  dump(path, format_matrix_csv(m));
}

TimeFrequencyMatrix read_matrix_csv(const std::string& path) {
  std::istringstream in(slurp(path));
  std::map<std::string, std::string> header;
  std::vector<std::vector<double>> data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto eq = t.find('=');
      if (eq != std::string::npos) header[trim(t.substr(1, eq - 1))] = trim(t.substr(eq + 1));
      continue;
    }
    data.push_back(split_numbers(t, path + ":" + std::to_string(lineno)));
  }
  for (const char* key : {"rows", "cols", "frame_step", "row_axis", "row_weights"})
    if (!header.contains(key)) throw FormatError(path + ": missing header '" + key + "'");
  const auto rows = static_cast<std::size_t>(to_double(header["rows"], path));
  const auto cols = static_cast<std::size_t>(to_double(header["cols"], path));
  const double step = to_double(header["frame_step"], path);
  auto axis = split_numbers(header["row_axis"], path);
  auto weights = split_numbers(header["row_weights"], path);
  std::vector<double> times;
  if (header.contains("time_axis")) {
    times = split_numbers(header["time_axis"], path);
  } else {
    for (std::size_t c = 0; c < cols; ++c) times.push_back(step * static_cast<double>(c));
  }
  if (data.size() != rows) throw FormatError(path + ": row count does not match header");
  std::vector<Complex> values;
  values.reserve(rows * cols);
  for (const auto& r : data) {
    if (r.size() != 2 * cols) throw FormatError(path + ": ragged data row");
    for (std::size_t c = 0; c < cols; ++c) values.emplace_back(r[2 * c], r[2 * c + 1]);
  }
  try {
    return TimeFrequencyMatrix(std::move(values), std::move(times), std::move(axis),
                               std::move(weights), step);
  } catch (const InvalidInput& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string render_pgm(const TimeFrequencyMatrix& m, double db_range) {
  if (m.rows() == 0 || m.frames() == 0) throw InvalidInput("cannot render an empty matrix");
  if (!(db_range > 0.0)) throw InvalidInput("db_range must be positive");
  const auto& v = m.values();
  std::vector<double> db(v.size());
  double top = -INFINITY;
  bool all_zero = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    all_zero = all_zero && a == 0.0;
    db[i] = 20.0 * std::log10(a + 1e-300);
    top = std::max(top, db[i]);
  }
  std::string out = "P5\n" + std::to_string(m.frames()) + " " + std::to_string(m.rows()) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + v.size(), '\0');
  if (all_zero) return out;
  const double floor = top - db_range;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const std::size_t src = m.rows() - 1 - r;
    for (std::size_t c = 0; c < m.frames(); ++c) {
      const double x = std::clamp((db[src * m.frames() + c] - floor) / db_range, 0.0, 1.0);
      out[header + r * m.frames() + c] = static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * x)));
    }
  }
  return out;
}

void write_pgm(const TimeFrequencyMatrix& m, const std::string& path, double db_range) {
  dump(path, render_pgm(m, db_range));
}

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string t = trim(std::string_view(line).substr(0, hash));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw FormatError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw FormatError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  return parse_config(slurp(path));
}

}  // namespace focuslab
