#include "soniq/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "soniq/error.hpp"

namespace soniq {

namespace {

// Uniform in [0, 1) from the top 53 bits; avoids the library-specific
// distribution algorithms so output is reproducible across toolchains.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double exponential(std::mt19937_64& rng, double mean) {
  return -mean * std::log1p(-uniform01(rng));
}

}  // namespace

void validate(const SynthConfig& cfg) {
  if (cfg.n_channels == 0) throw ArgumentError("synthetic data needs at least one channel");
  if (!(cfg.sample_rate > 0.0)) throw ArgumentError("sample rate must be positive");
  if (!(cfg.onset_s >= 0.0 && cfg.onset_s < cfg.offset_s && cfg.offset_s < cfg.duration_s)) {
    throw ArgumentError("synthetic timeline requires 0 <= onset < offset < duration");
  }
  if (cfg.onset_spread < 0.0 || cfg.onset_spread >= 1.0) {
    throw ArgumentError("onset spread must be in [0, 1)");
  }
}

double channel_onset(const SynthConfig& cfg, std::size_t c) {
  const double span = cfg.offset_s - cfg.onset_s;
  return cfg.onset_s +
         cfg.onset_spread * span * static_cast<double>(c) / static_cast<double>(cfg.n_channels);
}

std::string channel_label(std::size_t c) {
  static constexpr std::array<const char*, 4> kGroups = {"TT", "AST", "MST", "PST"};
  if (c < 16) return std::string(kGroups[c / 4]) + std::to_string(c % 4 + 1);
  return "CH" + std::to_string(c + 1);
}

ChannelSet synth_seizure(const SynthConfig& cfg) {
  validate(cfg);
  const auto n = static_cast<std::size_t>(std::llround(cfg.duration_s * cfg.sample_rate));
  const double fs = cfg.sample_rate;
  const double decay = std::exp(-1.0 / (cfg.background_decay_s * fs));
  const double rise = std::exp(-1.0 / (cfg.background_rise_s * fs));
  const double p_impulse = cfg.background_rate_hz / fs;
  // Dividing the rounded integer yields the double nearest the short decimal.
  const double steps_per_uv = std::round(1.0 / cfg.quantum_uv);
  const double lead_start = std::max(0.0, cfg.onset_s - cfg.preictal_lead_s);

  ChannelSet set;
  set.sample_rate = fs;
  set.names.reserve(cfg.n_channels);
  set.data.reserve(cfg.n_channels);

  std::mt19937_64 rng(cfg.seed);
  for (std::size_t c = 0; c < cfg.n_channels; ++c) {
    set.names.push_back(channel_label(c));
    // Per-channel stream so channel c does not depend on how many follow.
    std::mt19937_64 crng(rng());
    const double rate_jitter = 1.0 + 0.1 * (uniform01(crng) - 0.5);
    double phase = uniform01(crng);
    const double onset_c = channel_onset(cfg, c);

    std::vector<double> x(n);
    double slow = 0.0;
    double fast = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / fs;
      const double impulse = uniform01(crng) < p_impulse ? exponential(crng, 1.0) : 0.0;
      slow = decay * slow + impulse;
      fast = rise * fast + impulse;
      double bg = slow - fast;
      if (t >= cfg.offset_s) bg *= cfg.tail_gain;

      double env = 0.0;
      if (t >= lead_start && t < cfg.onset_s) {
        env = cfg.preictal_level * (t - lead_start) / std::max(cfg.onset_s - lead_start, 1e-12);
      } else if (t >= cfg.onset_s && t < onset_c) {
        env = cfg.preictal_level;
      } else if (t >= onset_c && t < cfg.offset_s) {
        env = std::min(1.0, cfg.preictal_level + (t - onset_c));
      }

      const double progress =
          std::clamp((t - cfg.onset_s) / (cfg.offset_s - cfg.onset_s), 0.0, 1.0);
      const double freq =
          rate_jitter * (cfg.burst_start_hz + (cfg.burst_end_hz - cfg.burst_start_hz) * progress);
      phase += freq / fs;
      phase -= std::floor(phase);
      const double r = cfg.burst_rise_fraction;
      const double saw = phase < r ? phase / r : (1.0 - phase) / (1.0 - r);

      const double uv = cfg.microvolts_per_unit * (bg + cfg.burst_amplitude * env * saw);
      x[i] = std::round(uv * steps_per_uv) / steps_per_uv;
    }
    set.data.push_back(std::move(x));
  }
  return set;
}

}  // namespace soniq
