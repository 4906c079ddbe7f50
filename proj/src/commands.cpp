#include "soniq/commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <memory>

#include "soniq/error.hpp"
#include "soniq/number_format.hpp"
#include "soniq/spectrogram.hpp"
#include "soniq/synth.hpp"
#include "soniq/wav.hpp"

namespace soniq {

namespace fs = std::filesystem;

namespace {

constexpr double kVerifyTolerance = 1e-9;

ChannelSet load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ArgumentError("no input CSV given");
  return load_csv(cfg.input, cfg.sample_rate);
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

void write_audio_set(const AudioBuffer& audio, const RunConfig& cfg, const fs::path& dir,
                     const std::string& stem, std::vector<fs::path>& files) {
  const auto wav = dir / (stem + ".wav");
  write_wav(audio, wav);
  files.push_back(wav);
  if (audio.samples.size() >= cfg.fft_size) {
    const auto spec = spectrogram(audio, cfg.fft_size, cfg.spec_hop);
    const auto csv = dir / (stem + "_spectrogram.csv");
    const auto pgm = dir / (stem + "_spectrogram.pgm");
    write_spectrogram_csv(spec, csv);
    write_spectrogram_pgm(spec, pgm);
    files.push_back(csv);
    files.push_back(pgm);
  }
}

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(std::string("stage '") + name + "': " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("stage '") + name + "': " + e.what());
  }
}

std::vector<double> gap_filled(const qpam::MomentSeries& series) {
  std::vector<double> out;
  out.reserve(series.size());
  std::optional<double> last;
  for (const auto& v : series.values) {
    if (v) last = v;
    out.push_back(last.value_or(0.0));
  }
  // Leading gaps take the first real value.
  const auto first = std::find_if(series.values.begin(), series.values.end(),
                                  [](const auto& v) { return v.has_value(); });
  if (first != series.values.end()) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(first - series.values.begin()); ++i) {
      out[i] = **first;
    }
  }
  return out;
}

}  // namespace

ScheduleBuild build_schedule(const ChannelSet& set, const RunConfig& cfg) {
  cfg.validate();
  if (set.n_channels() < cfg.n_spins) {
    throw ArgumentError("need " + std::to_string(cfg.n_spins) + " coupling channels, input has " +
                        std::to_string(set.n_channels()));
  }
  std::vector<ReducedSeries> reduced;
  reduced.reserve(cfg.n_spins);
  for (std::size_t c = 0; c < cfg.n_spins; ++c) {
    reduced.push_back(segment_average(set.data[c], cfg.n_segments));
  }
  const auto couplings = renormalize_couplings(reduced, cfg.reference_segments);

  ScheduleBuild build;
  build.flagged_channels = couplings.flagged_channels;
  ReducedSeries field;
  if (cfg.hx) {
    field.values.assign(cfg.n_segments, *cfg.hx);
  } else {
    const auto series =
        qpam::rolling_moment(set.channel(cfg.channel), cfg.window_spec(), cfg.shift_mode);
    if (series.size() < cfg.n_segments) {
      throw ShapeError("channel '" + cfg.channel + "' yields " + std::to_string(series.size()) +
                       " moment windows, fewer than " + std::to_string(cfg.n_segments) +
                       " segments");
    }
    build.field_moment = segment_average(std::span<const std::optional<double>>(series.values),
                                         cfg.n_segments);
    field = renormalize_field(*build.field_moment, cfg.transition_step - 1);
  }
  build.schedule = make_schedule(couplings, field, cfg.dt);
  return build;
}

SonifyResult run_sonify(const ChannelSet& set, const RunConfig& cfg) {
  cfg.validate();
  const auto dir = prepare_out_dir(cfg);
  SonifyResult r;
  r.kept_samples = set.n_samples() == 0 ? 0 : (set.n_samples() - 1) / cfg.downsample + 1;
  r.audio = sonify_channels(set, cfg.downsample, cfg.sonify_config());
  write_audio_set(r.audio, cfg, dir, "sonification", r.files);
  return r;
}

QpamResult run_qpam(const ChannelSet& set, const RunConfig& cfg) {
  cfg.validate();
  const auto signal = set.channel(cfg.channel);
  const auto spec = cfg.window_spec();
  const auto dir = prepare_out_dir(cfg);
  QpamResult r;
  r.series = qpam::rolling_moment(signal, spec, cfg.shift_mode);
  const auto csv = dir / "moments.csv";
  qpam::write_moments_csv(r.series, csv);
  r.files.push_back(csv);
  if (cfg.verify) {
    r.max_deviation = qpam::max_oracle_deviation(signal, spec, cfg.shift_mode, r.series);
    if (!(*r.max_deviation <= kVerifyTolerance)) {
      throw VerificationError("quantum and classical moments differ by " +
                              format_double(*r.max_deviation) + " (relative)");
    }
  }
  if (cfg.sonify) {
    if (r.series.gap_count() == r.series.size()) {
      throw DegenerateWindowError("every window of '" + cfg.channel + "' is degenerate");
    }
    const auto values = gap_filled(r.series);
    std::vector<double> pitches;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const auto scfg = cfg.sonify_config();
    if (*lo < *hi) {
      pitches = series_pitches(values, scfg);
    } else {
      pitches.assign(values.size(), scfg.f_min);
    }
    auto audio = lowpass(render_voice(pitches, scfg), scfg.lowpass_cutoff);
    limit_peak(audio);
    write_audio_set(audio, cfg, dir, "moments", r.files);
  }
  return r;
}

IsingResult run_ising(const ChannelSet& set, const RunConfig& cfg) {
  IsingResult r;
  r.build = build_schedule(set, cfg);
  const auto initial = Statevector::zero_state(r.build.schedule.n_spins);
  r.trace = ising::evolve(r.build.schedule, initial);
  if (cfg.exact) r.exact = ising::exact_evolve_small(r.build.schedule, initial);
  const auto dir = prepare_out_dir(cfg);
  const auto schedule_csv = dir / "schedule.csv";
  const auto trace_csv = dir / "trace.csv";
  ising::write_schedule_csv(r.build.schedule, schedule_csv);
  ising::write_trace_csv(r.trace, trace_csv, r.exact ? &*r.exact : nullptr);
  r.files = {schedule_csv, trace_csv};
  return r;
}

SonifyResult cmd_sonify(const RunConfig& cfg) { return run_sonify(load_input(cfg), cfg); }
QpamResult cmd_qpam(const RunConfig& cfg) { return run_qpam(load_input(cfg), cfg); }
IsingResult cmd_ising(const RunConfig& cfg) { return run_ising(load_input(cfg), cfg); }

FullResult cmd_full(const RunConfig& cfg) {
  cfg.validate();
  const auto set = stage("load", [&] { return load_input(cfg); });
  FullResult r;
  r.plain = stage("sonify", [&] { return run_sonify(set, cfg); });
  RunConfig qcfg = cfg;
  qcfg.sonify = false;
  r.moments = stage("qpam", [&] { return run_qpam(set, qcfg); });
  r.ising = stage("ising", [&] { return run_ising(set, cfg); });

  const auto dir = prepare_out_dir(cfg);
  std::vector<fs::path> fm_files;
  r.modulated = stage("fm", [&] {
    if (cfg.no_fm) return r.plain.audio;
    FmSettings fm;
    fm.index_envelope = fm_index_envelope(r.ising.trace, r.plain.kept_samples, cfg.fm_index_max);
    fm.mod_ratio = cfg.fm_mod_ratio;
    return sonify_channels(set, cfg.downsample, cfg.sonify_config(), fm);
  });
  stage("fm", [&] {
    write_audio_set(r.modulated, cfg, dir, "sonification_fm", fm_files);
    return 0;
  });

  for (const auto* group : {&r.plain.files, &r.moments.files, &r.ising.files, &fm_files}) {
    r.files.insert(r.files.end(), group->begin(), group->end());
  }
  const auto manifest = dir / "manifest.txt";
  stage("manifest", [&] {
    std::ofstream out(manifest, std::ios::binary);
    if (!out) throw IoError("cannot write '" + manifest.string() + "'");
    out << manifest_text(r.files);
    return 0;
  });
  r.files.push_back(manifest);
  return r;
}

fs::path cmd_synth(const RunConfig& cfg, const fs::path& output) {
  const auto set = synth_seizure(cfg.synth_config());
  fs::path target = output;
  if (target.empty()) target = prepare_out_dir(cfg) / "synthetic_seizure.csv";
  else if (target.has_parent_path()) fs::create_directories(target.parent_path());
  write_csv(set, target);
  return target;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 initialization failed");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xF];
  }
  return hex;
}

std::string manifest_text(const std::vector<fs::path>& files) {
  std::vector<fs::path> sorted = files;
  std::sort(sorted.begin(), sorted.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  std::string out;
  for (const auto& f : sorted) out += sha256_file(f) + "  " + f.filename().string() + "\n";
  return out;
}

}  // namespace soniq
