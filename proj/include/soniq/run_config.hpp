#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soniq/qpam.hpp"
#include "soniq/sonify.hpp"
#include "soniq/synth.hpp"

namespace soniq {

// Every knob of a pipeline run. Defaults are the case-study parameters.
struct RunConfig {
  std::string input;
  std::string out_dir{"soniq_out"};
  std::optional<double> sample_rate;  // overrides CSV metadata when set

  // Sonification of the raw channels.
  std::size_t downsample{500};
  double note_duration{0.1};
  double f_min{261.63};
  double f_max{1244.51};
  double audio_rate{44100.0};
  double lowpass_cutoff{4000.0};
  double amplitude{0.8};
  double fade{0.005};
  PitchScale pitch_scale{PitchScale::kLinear};
  std::size_t fft_size{2048};
  std::size_t spec_hop{1024};

  // Rolling moment of the field channel.
  std::string channel{"MST4"};
  std::size_t window{16};
  std::size_t hop{10};
  int moment_order{4};
  qpam::ShiftMode shift_mode{qpam::ShiftMode::kMinShift};
  bool sonify{false};
  bool verify{false};

  // Reduction and Ising evolution.
  std::size_t n_segments{9};
  std::size_t transition_step{4};  // 1-indexed
  std::size_t reference_segments{3};
  std::size_t n_spins{16};
  std::size_t k{9};
  double dt{0.5};
  std::optional<double> hx;  // constant field override
  bool exact{false};

  // FM driven by the Ising marginals.
  double fm_index_max{3.0};
  double fm_mod_ratio{1.0};
  bool no_fm{false};

  // Synthetic data.
  std::uint64_t seed{20250};
  std::size_t synth_channels{16};
  double synth_duration{210.0};
  double synth_rate{1000.0};
  double onset{105.90};
  double offset{204.74};

  // Sets one key from its textual value. Throws ArgumentError for an unknown
  // key or a value that does not parse.
  void set(std::string_view key, std::string_view value);

  // (key, value) pairs in declaration order; unset optionals are omitted.
  std::vector<std::pair<std::string, std::string>> entries() const;

  // Replayable `key=value` text.
  std::string to_text() const;

  // Applies `key=value` lines; blank lines and `#` comments are ignored.
  void apply_text(std::string_view text);
  void apply_file(const std::filesystem::path& path);

  // Throws ArgumentError on inconsistent settings.
  void validate() const;

  SonifyConfig sonify_config() const;
  qpam::WindowSpec window_spec() const;
  SynthConfig synth_config() const;
};

struct ConfigKey {
  std::string name;
  std::string help;
  bool is_flag;  // boolean switch
};

const std::vector<ConfigKey>& config_keys();

}  // namespace soniq
