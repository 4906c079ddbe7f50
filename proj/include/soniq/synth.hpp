#pragma once

#include <cstddef>
#include <cstdint>

#include "soniq/channels.hpp"

namespace soniq {

// Shape of the synthetic seizure recording. Defaults follow the case-study
// timeline: onset at 105.90 s, offset at 204.74 s of a 210 s recording.
struct SynthConfig {
  std::size_t n_channels{16};
  double duration_s{210.0};
  double sample_rate{1000.0};
  double onset_s{105.90};
  double offset_s{204.74};
  std::uint64_t seed{20250};

  // Background: shot noise (fast rise, slow decay) at this impulse rate.
  double background_rate_hz{10.0};
  double background_decay_s{0.040};
  double background_rise_s{0.003};
  double tail_gain{2.5};  // background scale after offset

  // Rhythmic discharge: slow-rise sawtooth whose rate slows from
  // burst_start_hz to burst_end_hz across the seizure.
  double burst_amplitude{8.0};
  double burst_start_hz{6.0};
  double burst_end_hz{3.0};
  double burst_rise_fraction{0.85};
  double preictal_lead_s{40.0};  // discharge ramps in before onset
  double preictal_level{0.25};   // discharge level reached at onset
  double onset_spread{0.5};      // channel onsets spread over this fraction of the seizure

  double microvolts_per_unit{20.0};
  double quantum_uv{1e-3};  // output resolution
};

// Throws ArgumentError unless 0 <= onset < offset < duration and the sizes
// are positive.
void validate(const SynthConfig& cfg);

// Channel onset time for channel `c`: the first channel starts at onset, the
// rest follow in column order.
double channel_onset(const SynthConfig& cfg, std::size_t c);

// Default electrode labels (TT1..TT4, AST1..AST4, MST1..MST4, PST1..PST4, then CH17...).
std::string channel_label(std::size_t c);

// Deterministic for a given config (including seed).
ChannelSet synth_seizure(const SynthConfig& cfg);

}  // namespace soniq
