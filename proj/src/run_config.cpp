#include "soniq/run_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "soniq/error.hpp"
#include "soniq/number_format.hpp"

namespace soniq {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_as(std::string_view key, std::string_view text) {
  T v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ArgumentError("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ArgumentError("invalid boolean '" + std::string(text) + "' for " + std::string(key));
}

struct Field {
  ConfigKey key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::optional<std::string>(const RunConfig&)> get;
};

template <typename T>
Field number(std::string name, std::string help, T RunConfig::*member) {
  return {{name, std::move(help), false},
          [member, name](RunConfig& c, std::string_view v) { c.*member = parse_as<T>(name, v); },
          [member](const RunConfig& c) -> std::optional<std::string> {
            if constexpr (std::is_floating_point_v<T>) return format_double(c.*member);
            else return std::to_string(c.*member);
          }};
}

Field optional_number(std::string name, std::string help, std::optional<double> RunConfig::*member) {
  return {{name, std::move(help), false},
          [member, name](RunConfig& c, std::string_view v) {
            if (v.empty()) c.*member = std::nullopt;
            else c.*member = parse_as<double>(name, v);
          },
          [member](const RunConfig& c) -> std::optional<std::string> {
            if (!(c.*member)) return std::nullopt;
            return format_double(*(c.*member));
          }};
}

Field text(std::string name, std::string help, std::string RunConfig::*member) {
  return {{name, std::move(help), false},
          [member](RunConfig& c, std::string_view v) { c.*member = std::string(v); },
          [member](const RunConfig& c) -> std::optional<std::string> { return c.*member; }};
}

Field flag(std::string name, std::string help, bool RunConfig::*member) {
  return {{name, std::move(help), true},
          [member, name](RunConfig& c, std::string_view v) { c.*member = parse_bool(name, v); },
          [member](const RunConfig& c) -> std::optional<std::string> {
            return std::string(c.*member ? "true" : "false");
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(text("input", "input CSV path", &RunConfig::input));
    f.push_back(text("out_dir", "output directory", &RunConfig::out_dir));
    f.push_back(optional_number("sample_rate", "input sample rate in Hz (overrides CSV metadata)",
                                &RunConfig::sample_rate));
    f.push_back(number("downsample", "keep one sample in N before sonifying", &RunConfig::downsample));
    f.push_back(number("note_duration", "seconds per note", &RunConfig::note_duration));
    f.push_back(number("f_min", "lowest pitch in Hz", &RunConfig::f_min));
    f.push_back(number("f_max", "highest pitch in Hz", &RunConfig::f_max));
    f.push_back(number("audio_rate", "audio sample rate in Hz", &RunConfig::audio_rate));
    f.push_back(number("lowpass_cutoff", "low-pass cutoff in Hz", &RunConfig::lowpass_cutoff));
    f.push_back(number("amplitude", "per-voice gain", &RunConfig::amplitude));
    f.push_back(number("fade", "per-note fade in/out in seconds", &RunConfig::fade));
    f.push_back({{"pitch_scale", "linear|log value-to-pitch mapping", false},
                 [](RunConfig& c, std::string_view v) { c.pitch_scale = parse_pitch_scale(v); },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   return std::string(to_string(c.pitch_scale));
                 }});
    f.push_back(number("fft_size", "spectrogram FFT size", &RunConfig::fft_size));
    f.push_back(number("spec_hop", "spectrogram hop in samples", &RunConfig::spec_hop));
    f.push_back(text("channel", "channel for the rolling moment and transverse field",
                     &RunConfig::channel));
    f.push_back(number("window", "moment window length (power of two)", &RunConfig::window));
    f.push_back(number("hop", "moment window hop", &RunConfig::hop));
    f.push_back(number("moment_order", "moment order p", &RunConfig::moment_order));
    f.push_back({{"shift_mode", "none|min-shift window encoding", false},
                 [](RunConfig& c, std::string_view v) { c.shift_mode = qpam::parse_shift_mode(v); },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   return std::string(qpam::to_string(c.shift_mode));
                 }});
    f.push_back(flag("sonify", "also render the moment series as audio", &RunConfig::sonify));
    f.push_back(flag("verify", "check every window against the classical oracle",
                     &RunConfig::verify));
    f.push_back(number("n_segments", "segments for the reduced series", &RunConfig::n_segments));
    f.push_back(number("transition_step", "step (1-indexed) where h_x is exactly 1",
                       &RunConfig::transition_step));
    f.push_back(number("reference_segments", "baseline segments for coupling normalization",
                       &RunConfig::reference_segments));
    f.push_back(number("n_spins", "spins in the chain (first N CSV columns)", &RunConfig::n_spins));
    f.push_back(number("k", "trotter steps", &RunConfig::k));
    f.push_back(number("dt", "trotter step length t/k", &RunConfig::dt));
    f.push_back(optional_number("hx", "constant transverse field override", &RunConfig::hx));
    f.push_back(flag("exact", "add dense exact-evolution columns (<= 6 spins)", &RunConfig::exact));
    f.push_back(number("fm_index_max", "FM index at full marginal", &RunConfig::fm_index_max));
    f.push_back(number("fm_mod_ratio", "modulator/carrier frequency ratio", &RunConfig::fm_mod_ratio));
    f.push_back(flag("no_fm", "skip FM modulation in the full run", &RunConfig::no_fm));
    f.push_back(number("seed", "synthetic data seed", &RunConfig::seed));
    f.push_back(number("synth_channels", "synthetic channel count", &RunConfig::synth_channels));
    f.push_back(number("synth_duration", "synthetic duration in seconds", &RunConfig::synth_duration));
    f.push_back(number("synth_rate", "synthetic sample rate in Hz", &RunConfig::synth_rate));
    f.push_back(number("onset", "synthetic seizure onset in seconds", &RunConfig::onset));
    f.push_back(number("offset", "synthetic seizure offset in seconds", &RunConfig::offset));
    return f;
  }();
  return table;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

void RunConfig::set(std::string_view key, std::string_view value) {
  for (const auto& f : fields()) {
    if (f.key.name == key) {
      f.set(*this, trim(value));
      return;
    }
  }
  throw ArgumentError("unknown configuration key '" + std::string(key) + "'");
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : fields()) {
    if (auto v = f.get(*this)) out.emplace_back(f.key.name, std::move(*v));
  }
  return out;
}

std::string RunConfig::to_text() const {
  std::string out;
  for (const auto& [k, v] : entries()) out += k + "=" + v + "\n";
  return out;
}

void RunConfig::apply_text(std::string_view text) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
    try {
      set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ArgumentError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
}

void RunConfig::apply_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_text(ss.str());
}

void RunConfig::validate() const {
  soniq::validate(sonify_config());
  qpam::validate(window_spec());
  if (downsample == 0) throw ArgumentError("downsample must be >= 1");
  if (n_segments == 0) throw ArgumentError("n_segments must be >= 1");
  if (transition_step < 1 || transition_step > n_segments) {
    throw ArgumentError("transition_step must be in [1, n_segments]");
  }
  if (reference_segments < 1 || reference_segments > n_segments) {
    throw ArgumentError("reference_segments must be in [1, n_segments]");
  }
  if (k != n_segments) {
    throw ArgumentError("k (trotter steps) must equal n_segments: one step per reduced segment");
  }
  if (n_spins < 1 || n_spins > static_cast<std::size_t>(kMaxQubits)) {
    throw ArgumentError("n_spins out of range");
  }
  if (!(dt > 0.0)) throw ArgumentError("dt must be positive");
  if (!(fm_index_max >= 0.0)) throw ArgumentError("fm_index_max must be non-negative");
  if (!(fm_mod_ratio >= 0.0)) throw ArgumentError("fm_mod_ratio must be non-negative");
  if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0) {
    throw ArgumentError("fft_size must be a power of two");
  }
  if (spec_hop == 0) throw ArgumentError("spec_hop must be >= 1");
}

SonifyConfig RunConfig::sonify_config() const {
  SonifyConfig c;
  c.note_duration = note_duration;
  c.f_min = f_min;
  c.f_max = f_max;
  c.audio_rate = audio_rate;
  c.lowpass_cutoff = lowpass_cutoff;
  c.amplitude_per_voice = amplitude;
  c.fade = fade;
  c.pitch_scale = pitch_scale;
  return c;
}

qpam::WindowSpec RunConfig::window_spec() const {
  return {window, hop, moment_order};
}

SynthConfig RunConfig::synth_config() const {
  SynthConfig c;
  c.n_channels = synth_channels;
  c.duration_s = synth_duration;
  c.sample_rate = synth_rate;
  c.onset_s = onset;
  c.offset_s = offset;
  c.seed = seed;
  return c;
}

}  // namespace soniq
