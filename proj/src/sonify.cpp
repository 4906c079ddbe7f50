#include "soniq/sonify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "soniq/error.hpp"
#include "soniq/reduction.hpp"

namespace soniq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sample offset where note j starts.
std::size_t note_start(std::size_t j, const SonifyConfig& cfg) {
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(j) * cfg.note_duration * cfg.audio_rate));
}

double fade_gain(std::size_t i, std::size_t len, std::size_t fade_len) {
  if (fade_len == 0) return 1.0;
  const double in = static_cast<double>(i) / static_cast<double>(fade_len);
  const double out = static_cast<double>(len - 1 - i) / static_cast<double>(fade_len);
  return std::min({1.0, in, out});
}

void check_pitches(std::span<const double> pitches, const SonifyConfig& cfg) {
  if (pitches.empty()) throw ArgumentError("cannot render an empty pitch list");
  for (double f : pitches) {
    if (!(f >= cfg.f_min && f <= cfg.f_max)) {
      throw ArgumentError("pitch " + std::to_string(f) + " Hz outside [f_min, f_max]");
    }
  }
}

double wrap(double phase) { return phase >= kTwoPi ? phase - kTwoPi * std::floor(phase / kTwoPi) : phase; }

}  // namespace

PitchScale parse_pitch_scale(std::string_view text) {
  if (text == "linear") return PitchScale::kLinear;
  if (text == "log") return PitchScale::kLog;
  throw ArgumentError("unknown pitch scale '" + std::string(text) + "' (expected linear|log)");
}

std::string_view to_string(PitchScale scale) {
  return scale == PitchScale::kLinear ? "linear" : "log";
}

void validate(const SonifyConfig& cfg) {
  if (!(cfg.audio_rate > 0.0)) throw ArgumentError("audio rate must be positive");
  if (!(cfg.f_min > 0.0 && cfg.f_min < cfg.f_max && cfg.f_max < cfg.audio_rate / 2)) {
    throw ArgumentError("need 0 < f_min < f_max < audio_rate/2");
  }
  if (!(cfg.note_duration > 0.0)) throw ArgumentError("note duration must be positive");
  if (!(cfg.amplitude_per_voice >= 0.0 && cfg.amplitude_per_voice <= 1.0)) {
    throw ArgumentError("amplitude per voice must be in [0, 1]");
  }
  if (!(cfg.fade >= 0.0 && 2 * cfg.fade <= cfg.note_duration)) {
    throw ArgumentError("fade must be in [0, note_duration/2]");
  }
}

double AudioBuffer::peak() const noexcept {
  double p = 0.0;
  for (double s : samples) p = std::max(p, std::abs(s));
  return p;
}

double pitch_map(double value, double y_min, double y_max, const SonifyConfig& cfg) {
  if (!(y_min < y_max)) throw ArgumentError("degenerate value range: y_min must be < y_max");
  const double u = (std::clamp(value, y_min, y_max) - y_min) / (y_max - y_min);
  if (cfg.pitch_scale == PitchScale::kLog) return cfg.f_min * std::pow(cfg.f_max / cfg.f_min, u);
  return cfg.f_min + u * (cfg.f_max - cfg.f_min);
}

std::vector<double> series_pitches(std::span<const double> series, const SonifyConfig& cfg) {
  if (series.empty()) throw ArgumentError("cannot pitch-map an empty series");
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  std::vector<double> out;
  out.reserve(series.size());
  for (double v : series) out.push_back(pitch_map(v, *lo, *hi, cfg));
  return out;
}

AudioBuffer render_voice(std::span<const double> pitches, const SonifyConfig& cfg) {
  validate(cfg);
  check_pitches(pitches, cfg);
  AudioBuffer out;
  out.rate = cfg.audio_rate;
  out.samples.assign(note_start(pitches.size(), cfg), 0.0);
  const auto fade_len = static_cast<std::size_t>(std::llround(cfg.fade * cfg.audio_rate));
  double phase = 0.0;
  for (std::size_t j = 0; j < pitches.size(); ++j) {
    const std::size_t begin = note_start(j, cfg);
    const std::size_t len = note_start(j + 1, cfg) - begin;
    const double step = kTwoPi * pitches[j] / cfg.audio_rate;
    for (std::size_t i = 0; i < len; ++i) {
      out.samples[begin + i] = cfg.amplitude_per_voice * fade_gain(i, len, fade_len) * std::sin(phase);
      phase = wrap(phase + step);
    }
  }
  return out;
}

AudioBuffer fm_modulate(std::span<const double> carrier_pitches,
                        std::span<const double> index_envelope, double mod_ratio,
                        const SonifyConfig& cfg) {
  validate(cfg);
  check_pitches(carrier_pitches, cfg);
  if (index_envelope.size() != carrier_pitches.size()) {
    throw ShapeError("index envelope has " + std::to_string(index_envelope.size()) +
                     " values for " + std::to_string(carrier_pitches.size()) + " notes");
  }
  if (!(mod_ratio >= 0.0)) throw ArgumentError("modulator ratio must be non-negative");
  for (double idx : index_envelope) {
    if (!(idx >= 0.0)) throw ArgumentError("modulation index must be non-negative");
  }
  AudioBuffer out;
  out.rate = cfg.audio_rate;
  out.samples.assign(note_start(carrier_pitches.size(), cfg), 0.0);
  const auto fade_len = static_cast<std::size_t>(std::llround(cfg.fade * cfg.audio_rate));
  double carrier = 0.0;
  double modulator = 0.0;
  for (std::size_t j = 0; j < carrier_pitches.size(); ++j) {
    const std::size_t begin = note_start(j, cfg);
    const std::size_t len = note_start(j + 1, cfg) - begin;
    const double cstep = kTwoPi * carrier_pitches[j] / cfg.audio_rate;
    const double mstep = cstep * mod_ratio;
    const double index = index_envelope[j];
    for (std::size_t i = 0; i < len; ++i) {
      out.samples[begin + i] = cfg.amplitude_per_voice * fade_gain(i, len, fade_len) *
                               std::sin(carrier + index * std::sin(modulator));
      carrier = wrap(carrier + cstep);
      modulator = wrap(modulator + mstep);
    }
  }
  return out;
}

void limit_peak(AudioBuffer& buffer) {
  const double p = buffer.peak();
  if (p > 1.0) {
    const double g = 0.9 / p;
    for (auto& s : buffer.samples) s *= g;
  }
}

AudioBuffer mix(std::span<const AudioBuffer> voices) {
  if (voices.empty()) throw ArgumentError("nothing to mix");
  AudioBuffer out;
  out.rate = voices.front().rate;
  std::size_t len = 0;
  for (const auto& v : voices) {
    if (v.rate != out.rate) throw ArgumentError("cannot mix buffers with different rates");
    len = std::max(len, v.samples.size());
  }
  out.samples.assign(len, 0.0);
  for (const auto& v : voices) {
    for (std::size_t i = 0; i < v.samples.size(); ++i) out.samples[i] += v.samples[i];
  }
  const double scale = 1.0 / static_cast<double>(voices.size());
  for (auto& s : out.samples) s *= scale;
  limit_peak(out);
  return out;
}

AudioBuffer lowpass(const AudioBuffer& buffer, double cutoff) {
  if (!(cutoff > 0.0 && cutoff < buffer.rate / 2)) {
    throw ArgumentError("low-pass cutoff must lie in (0, rate/2)");
  }
  const double w0 = kTwoPi * cutoff / buffer.rate;
  const double alpha = std::sin(w0) / std::numbers::sqrt2;  // Q = 1/sqrt 2;
  const double cw = std::cos(w0);
  const double a0 = 1.0 + alpha;
  const double b0 = (1.0 - cw) / 2.0 / a0;
  const double b1 = (1.0 - cw) / a0;
  const double b2 = b0;
  const double a1 = -2.0 * cw / a0;
  const double a2 = (1.0 - alpha) / a0;

  AudioBuffer out;
  out.rate = buffer.rate;
  out.samples.resize(buffer.samples.size());
  double x1 = 0, x2 = 0, y1 = 0, y2 = 0;
  for (std::size_t i = 0; i < buffer.samples.size(); ++i) {
    const double x0 = buffer.samples[i];
    const double y0 = b0 * x0 + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
    x2 = x1;
    x1 = x0;
    y2 = y1;
    y1 = y0;
    out.samples[i] = y0;
  }
  return out;
}

std::vector<double> fm_index_envelope(const ising::EvolutionTrace& trace, std::size_t n_notes,
                                      double index_max) {
  const std::size_t k = trace.steps();
  if (k == 0) throw ArgumentError("trace has no evolution steps");
  if (!(index_max >= 0.0)) throw ArgumentError("index_max must be non-negative");
  std::vector<double> level(k);
  for (std::size_t s = 0; s < k; ++s) level[s] = trace.mean_marginal(s + 1);

  std::vector<double> out(n_notes);
  for (std::size_t j = 0; j < n_notes; ++j) {
    // Position in step units; step s is centred at s.
    const double pos = (static_cast<double>(j) + 0.5) / static_cast<double>(n_notes) *
                           static_cast<double>(k) - 0.5;
    double v;
    if (pos <= 0.0) {
      v = level.front();
    } else if (pos >= static_cast<double>(k - 1)) {
      v = level.back();
    } else {
      const auto lo = static_cast<std::size_t>(pos);
      const double frac = pos - static_cast<double>(lo);
      v = level[lo] + frac * (level[lo + 1] - level[lo]);
    }
    out[j] = index_max * std::clamp(v, 0.0, 1.0);
  }
  return out;
}

AudioBuffer sonify_channels(const ChannelSet& set, std::size_t downsample_factor,
                            const SonifyConfig& cfg, const std::optional<FmSettings>& fm) {
  validate(cfg);
  if (set.n_channels() == 0) throw ArgumentError("no channels to sonify");
  std::vector<AudioBuffer> voices(set.n_channels());
  for (std::size_t c = 0; c < set.n_channels(); ++c) {
    const auto kept = downsample(set.data[c], downsample_factor);
    std::vector<double> pitches;
    try {
      pitches = series_pitches(kept, cfg);
    } catch (const ArgumentError& e) {
      throw ArgumentError("channel '" + set.names[c] + "': " + e.what());
    }
    if (fm) {
      voices[c] = fm_modulate(pitches, fm->index_envelope, fm->mod_ratio, cfg);
    } else {
      voices[c] = render_voice(pitches, cfg);
    }
  }
  auto out = lowpass(mix(voices), cfg.lowpass_cutoff);
  limit_peak(out);
  return out;
}

}  // namespace soniq
