#include "focuslab/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "focuslab/errors.hpp"
#include "focuslab/focus.hpp"
#include "focuslab/freq_focus.hpp"
#include "focuslab/io.hpp"
#include "focuslab/synth.hpp"
#include "focuslab/time_focus.hpp"
#include "focuslab/verification.hpp"
#include "focuslab/wavelet.hpp"

namespace focuslab {
namespace {

const std::vector<std::string> kConfigKeys{"mode",     "window", "wavelet", "gamma",   "focus",
                                           "sigma_max", "hop",   "fft_size", "fmin",   "fmax",
                                           "rows",     "seed",   "db_range"};

struct UsageError : Error {
  using Error::Error;
};

double number(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(x))
    throw UsageError("invalid value for " + key + ": '" + v + "'");
  return x;
}

std::size_t count(const std::string& key, const std::string& v) {
  const double x = number(key, v);
  if (x < 0.0 || x != std::floor(x)) throw UsageError(key + " must be a nonnegative integer");
  return static_cast<std::size_t>(x);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

RealSignal load_signal(const std::string& path) {
  return ends_with(path, ".wav") || ends_with(path, ".WAV") ? read_wav(path) : read_csv_signal(path);
}

bool is_time_mode(const std::string& mode) { return mode == "time" || mode == "stft"; }

TimeFocusConfig time_config(const AnalysisConfig& cfg) {
  TimeFocusConfig tc(Window::parse(cfg.window));
  tc.gamma = ScaleMap::parse(cfg.gamma.empty() ? "identity" : cfg.gamma);
  tc.hop = cfg.hop;
  tc.fft_size = cfg.fft_size;
  return tc;
}

FocusSpec focus_spec(const AnalysisConfig& cfg) {
  const std::string text = !cfg.focus.empty() ? cfg.focus : is_time_mode(cfg.mode) ? "moment:1" : "entropy";
  return FocusSpec::parse(text, cfg.sigma_max);
}

ScaleGrid scale_grid(const AnalysisConfig& cfg, const AnalyticWavelet& w, double rate) {
  const double fmax = cfg.fmax > 0.0 ? cfg.fmax : 0.95 * 0.5 * rate * w.xi0() / w.support().hi;
  const double fmin = cfg.fmin > 0.0 ? cfg.fmin : fmax / 40.0;
  return ScaleGrid::band(fmin, fmax, cfg.rows, w.xi0(),
                         ScaleMap::parse(cfg.gamma.empty() ? "exp" : cfg.gamma));
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write " + path);
  f << text;
}

std::string table_text(const FocusTable& t, const AnalysisConfig& cfg) {
  std::ostringstream s;
  s << "# mode=" << cfg.mode << " focus=" << focus_spec(cfg).describe()
    << " sigma_max=" << cfg.sigma_max << "\n";
  s << t.axis_name << (t.frequency.empty() ? "" : ",frequency") << ",sigma\n";
  char buf[96];
  for (std::size_t i = 0; i < t.axis.size(); ++i) {
    if (t.frequency.empty())
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t.axis[i], t.sigma[i]);
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t.axis[i], t.frequency[i], t.sigma[i]);
    s << buf;
  }
  return s.str();
}

// Registers --<key> overrides for every configuration key on a subcommand.
void add_config_options(CLI::App* sub, std::map<std::string, std::string>& overrides,
                        std::string& config_path) {
  sub->add_option("--config", config_path, "key=value configuration file");
  for (const auto& key : kConfigKeys) {
    std::string names = "--" + key;
    if (key.find('_') != std::string::npos) {
      std::string dashed = key;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      names += ",--" + dashed;
    }
    sub->add_option_function<std::string>(
        names, [&overrides, key](const std::string& v) { overrides[key] = v; }, "override " + key);
  }
}

AnalysisConfig merged_config(const std::string& config_path,
                             const std::map<std::string, std::string>& overrides) {
  std::map<std::string, std::string> kv;
  if (!config_path.empty()) kv = read_config(config_path);
  for (const auto& [k, v] : overrides) kv[k] = v;
  return AnalysisConfig::from_map(kv);
}

}  // namespace

AnalysisConfig AnalysisConfig::from_map(const std::map<std::string, std::string>& kv) {
  const std::set<std::string> known(kConfigKeys.begin(), kConfigKeys.end());
  AnalysisConfig c;
  for (const auto& [k, v] : kv) {
    if (!known.contains(k)) throw UsageError("unknown configuration key '" + k + "'");
    if (k == "mode") c.mode = v;
    else if (k == "window") c.window = v;
    else if (k == "wavelet") c.wavelet = v;
    else if (k == "gamma") c.gamma = v;
    else if (k == "focus") c.focus = v;
    else if (k == "sigma_max") c.sigma_max = number(k, v);
    else if (k == "hop") c.hop = count(k, v);
    else if (k == "fft_size") c.fft_size = count(k, v);
    else if (k == "fmin") c.fmin = number(k, v);
    else if (k == "fmax") c.fmax = number(k, v);
    else if (k == "rows") c.rows = count(k, v);
    else if (k == "seed") c.seed = count(k, v);
    else if (k == "db_range") c.db_range = number(k, v);
  }
  c.validate();
  return c;
}

void AnalysisConfig::validate() const {
  static const std::set<std::string> modes{"time", "freq", "cqt", "wavelet", "stft"};
  if (!modes.contains(mode)) throw UsageError("unknown mode '" + mode + "'");
  if (!(sigma_max >= 1.0)) throw UsageError("sigma_max must be >= 1");
  if (hop == 0) throw UsageError("hop must be positive");
  if (rows < 2) throw UsageError("rows must be at least 2");
  if (!(db_range > 0.0)) throw UsageError("db_range must be positive");
  if (fmin < 0.0 || fmax < 0.0 || (fmin > 0.0 && fmax > 0.0 && fmax <= fmin))
    throw UsageError("need 0 < fmin < fmax");
  try {
    Window::parse(window);
    parse_wavelet(wavelet);
    if (!gamma.empty()) ScaleMap::parse(gamma);
    focus_spec(*this);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

TimeFrequencyMatrix analyze_signal(const RealSignal& f, const AnalysisConfig& cfg, bool focused) {
  cfg.validate();
  if (is_time_mode(cfg.mode)) {
    const TimeFocusConfig tc = time_config(cfg);
    const auto grid = frame_grid(SampleGrid::of(f), tc);
    const auto profile = focused && cfg.mode == "time" ? time_focus(f, focus_spec(cfg), tc)
                                                       : TimeFocusProfile::constant(grid, 1.0);
    return transform_time_focused(f, profile, tc).rows_from(0.0);
  }
  const AnalyticWavelet w = parse_wavelet(cfg.wavelet);
  const ScaleGrid grid = scale_grid(cfg, w, f.sample_rate());
  const ComplexSignal fa = hardy_project(f);
  if (cfg.mode == "cqt") return cqt_transform(fa, grid, cqt_reference_from_wavelet(w), cfg.hop);
  if (cfg.mode == "wavelet" || !focused) return wavelet_transform(fa, grid, w, cfg.hop);
  const auto profile = entropy_freq_focus(fa, focus_spec(cfg), grid, w);
  return transform_freq_focused(fa, profile, grid, w, cfg.hop);
}

FocusTable compute_focus(const RealSignal& f, const AnalysisConfig& cfg) {
  cfg.validate();
  FocusTable t;
  if (is_time_mode(cfg.mode)) {
    const auto p = time_focus(f, focus_spec(cfg), time_config(cfg));
    t.axis_name = "time";
    for (std::size_t m = 0; m < p.grid().count; ++m) t.axis.push_back(p.grid().time(m));
    t.sigma = p.sigma();
    return t;
  }
  const AnalyticWavelet w = parse_wavelet(cfg.wavelet);
  const ScaleGrid grid = scale_grid(cfg, w, f.sample_rate());
  const auto p = entropy_freq_focus(hardy_project(f), focus_spec(cfg), grid, w);
  t.axis_name = "u";
  t.axis = grid.u_values();
  for (std::size_t j = 0; j < grid.size(); ++j) t.frequency.push_back(grid.scale(j) * w.xi0());
  t.sigma = p.sigma();
  return t;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive time-frequency analysis with focus functions", "focuslab"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic test signal");
  std::string synth_kind = "multisine", synth_out = "-";
  std::optional<double> duration, rate, noise;
  std::optional<std::size_t> spikes;
  std::uint64_t synth_seed = 42;
  synth->add_option("--kind", synth_kind, "multisine | spikes")
      ->check(CLI::IsMember({"multisine", "spikes"}));
  synth->add_option("--duration", duration, "seconds");
  synth->add_option("--rate", rate, "sample rate in Hz");
  synth->add_option("--noise", noise, "noise standard deviation (multisine)");
  synth->add_option("--spikes", spikes, "number of spikes");
  synth->add_option("--seed", synth_seed, "random seed");
  synth->add_option("--out", synth_out, "output .wav or .csv path ('-' for stdout CSV)");

  // focus / analyze share the configuration keys
  std::map<std::string, std::string> focus_over, analyze_over;
  std::string focus_cfg, analyze_cfg, focus_in, analyze_in, focus_out = "-", analyze_out, pgm_out;
  bool focused = false;
  auto* focus = app.add_subcommand("focus", "compute a focus profile as CSV");
  focus->add_option("input", focus_in, "input .wav or .csv signal")->required();
  focus->add_option("--out", focus_out, "output CSV path ('-' for stdout)");
  add_config_options(focus, focus_over, focus_cfg);

  auto* analyze = app.add_subcommand("analyze", "compute a transform, write CSV and/or PGM");
  analyze->add_option("input", analyze_in, "input .wav or .csv signal")->required();
  analyze->add_option("--out", analyze_out, "matrix CSV path ('-' for stdout)");
  analyze->add_option("--pgm", pgm_out, "log-magnitude PGM image path");
  analyze->add_flag("--focused", focused, "use the focus function instead of sigma = 1");
  add_config_options(analyze, analyze_over, analyze_cfg);

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  SuiteConfig suite;
  verify->add_option("--seed", suite.seed, "random seed");
  verify->add_option("--corpus", suite.corpus_size, "random signals per corpus check");
  verify->add_option("--upper-bound-scale", suite.upper_bound_scale,
                     "multiply the time upper bound (negative control)");
  verify->add_option("--out", analyze_out, "also write the report to this path");

  std::vector<std::string> argv_store{"focuslab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth->parsed()) {
      RealSignal x = [&] {
        if (synth_kind == "spikes") {
          SpikeTrainSpec s;
          s.seed = synth_seed;
          if (duration) s.duration = *duration;
          if (rate) s.sample_rate = *rate;
          if (spikes) s.count = *spikes;
          return synth_spike_train(s);
        }
        MultisineSpec s;
        s.seed = synth_seed;
        if (duration) s.duration = *duration;
        if (rate) s.sample_rate = *rate;
        if (noise) s.noise_std = *noise;
        if (spikes) s.spikes = *spikes;
        return synth_multisine_spikes_noise(s);
      }();
      if (ends_with(synth_out, ".wav")) {
        double peak = 0.0;
        for (double v : x.samples()) peak = std::max(peak, std::abs(v));
        if (peak > 1.0) err << "warning: peak " << peak << " exceeds full scale; WAV output clips\n";
        write_wav(x, synth_out);
      } else if (synth_out == "-") {
        std::ostringstream s;
        s.precision(17);
        s << "# sample_rate=" << x.sample_rate() << "\n";
        for (double v : x.samples()) s << v << "\n";
        out << s.str();
      } else {
        write_csv_signal(x, synth_out);
      }
      return 0;
    }
    if (focus->parsed()) {
      const AnalysisConfig cfg = merged_config(focus_cfg, focus_over);
      emit(focus_out, table_text(compute_focus(load_signal(focus_in), cfg), cfg), out);
      return 0;
    }
    if (analyze->parsed()) {
      const AnalysisConfig cfg = merged_config(analyze_cfg, analyze_over);
      const auto m = analyze_signal(load_signal(analyze_in), cfg, focused);
      if (!pgm_out.empty()) write_pgm(m, pgm_out, cfg.db_range);
      if (analyze_out == "-" || (analyze_out.empty() && pgm_out.empty())) {
        out << format_matrix_csv(m);
      } else if (!analyze_out.empty()) {
        write_matrix_csv(m, analyze_out);
      }
      return 0;
    }
    if (verify->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      const auto reports = run_suite(suite);
      std::ostringstream s;
      for (const auto& r : reports) s << format_report(r) << "\n";
      s << format_summary(reports) << "\n";
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out << s.str();
      err << "verify finished in " << secs << " s\n";
      if (!analyze_out.empty()) emit(analyze_out, s.str(), out);
      return all_pass(reports) ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace focuslab
