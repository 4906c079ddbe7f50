#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "soniq/channels.hpp"
#include "soniq/ising.hpp"
#include "soniq/qpam.hpp"
#include "soniq/reduction.hpp"
#include "soniq/run_config.hpp"
#include "soniq/sonify.hpp"

namespace soniq {

// Raised when a self-check fails (quantum vs classical moments). Not a
// soniq::Error: it signals an internal fault, not bad input.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SonifyResult {
  AudioBuffer audio;
  std::size_t kept_samples{0};  // per channel, after downsampling
  std::vector<std::filesystem::path> files;
};

struct QpamResult {
  qpam::MomentSeries series;
  std::optional<double> max_deviation;  // set when verify is on
  std::vector<std::filesystem::path> files;
};

// Everything derived from the data that feeds the Ising evolution.
struct ScheduleBuild {
  ising::IsingSchedule schedule;
  std::optional<ReducedSeries> field_moment;  // before renormalization; unset with hx override
  std::vector<std::size_t> flagged_channels;
};

struct IsingResult {
  ScheduleBuild build;
  ising::EvolutionTrace trace;
  std::optional<ising::EvolutionTrace> exact;
  std::vector<std::filesystem::path> files;
};

struct FullResult {
  SonifyResult plain;
  QpamResult moments;
  IsingResult ising;
  AudioBuffer modulated;
  std::vector<std::filesystem::path> files;  // every artifact including the manifest
};

ScheduleBuild build_schedule(const ChannelSet& set, const RunConfig& cfg);

// Each cmd_* loads cfg.input, writes its artifacts under cfg.out_dir and
// returns them. Stage functions taking a ChannelSet skip the load.
SonifyResult cmd_sonify(const RunConfig& cfg);
QpamResult cmd_qpam(const RunConfig& cfg);
IsingResult cmd_ising(const RunConfig& cfg);
FullResult cmd_full(const RunConfig& cfg);
std::filesystem::path cmd_synth(const RunConfig& cfg, const std::filesystem::path& output);

SonifyResult run_sonify(const ChannelSet& set, const RunConfig& cfg);
QpamResult run_qpam(const ChannelSet& set, const RunConfig& cfg);
IsingResult run_ising(const ChannelSet& set, const RunConfig& cfg);

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

// `<sha256>  <filename>` per line, sorted by name.
std::string manifest_text(const std::vector<std::filesystem::path>& files);

}  // namespace soniq
