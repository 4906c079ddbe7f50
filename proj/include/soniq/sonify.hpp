#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "soniq/channels.hpp"
#include "soniq/ising.hpp"

namespace soniq {

enum class PitchScale { kLinear, kLog };

PitchScale parse_pitch_scale(std::string_view text);
std::string_view to_string(PitchScale scale);

struct SonifyConfig {
  double note_duration{0.1};  // seconds
  double f_min{261.63};       // Hz, C4
  double f_max{1244.51};      // Hz
  double audio_rate{44100.0};
  double lowpass_cutoff{4000.0};
  double amplitude_per_voice{0.8};
  double fade{0.005};  // linear fade in/out per note, seconds
  PitchScale pitch_scale{PitchScale::kLinear};
};

void validate(const SonifyConfig& cfg);

struct AudioBuffer {
  std::vector<double> samples;
  double rate{44100.0};

  double duration() const noexcept { return static_cast<double>(samples.size()) / rate; }
  double peak() const noexcept;
};

// Maps value (clamped to [y_min, y_max]) onto [f_min, f_max].
double pitch_map(double value, double y_min, double y_max, const SonifyConfig& cfg);

// pitch_map over a series using the series' own min and max.
std::vector<double> series_pitches(std::span<const double> series, const SonifyConfig& cfg);

// Phase-continuous sine notes, one per pitch, with per-note linear fades.
AudioBuffer render_voice(std::span<const double> pitches, const SonifyConfig& cfg);

// Per-note FM: sin(2 pi fc t + I sin(2 pi r fc t)), phases carried across notes.
// `index_envelope[j]` is the modulation index held over note j.
AudioBuffer fm_modulate(std::span<const double> carrier_pitches,
                        std::span<const double> index_envelope, double mod_ratio,
                        const SonifyConfig& cfg);

// Sums voices (zero-padding shorter ones), scales by 1/n, and renormalizes
// the peak to 0.9 if it exceeds 1.
AudioBuffer mix(std::span<const AudioBuffer> voices);

// Second-order Butterworth low-pass (RBJ biquad, Q = 1/sqrt 2).
AudioBuffer lowpass(const AudioBuffer& buffer, double cutoff);

// Rescales to a 0.9 peak when the peak exceeds 1.
void limit_peak(AudioBuffer& buffer);

struct FmSettings {
  std::vector<double> index_envelope;  // one value per note
  double mod_ratio{1.0};
};

// Maps the per-step mean marginal (rows 1..k) onto `n_notes` notes by linear
// interpolation between segment centres, scaled to [0, index_max].
std::vector<double> fm_index_envelope(const ising::EvolutionTrace& trace, std::size_t n_notes,
                                      double index_max);

// Downsamples each channel, pitch-maps it against its own range, renders one
// voice per channel (FM when `fm` is set), mixes, low-passes and limits.
AudioBuffer sonify_channels(const ChannelSet& set, std::size_t downsample_factor,
                            const SonifyConfig& cfg, const std::optional<FmSettings>& fm = {});

}  // namespace soniq
