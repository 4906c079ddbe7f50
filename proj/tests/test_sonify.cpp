#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "soniq/error.hpp"
#include "soniq/sonify.hpp"
#include "soniq/spectrogram.hpp"
#include "soniq/wav.hpp"

using namespace soniq;
constexpr double kPi = std::numbers::pi;

namespace {

AudioBuffer tone(double f, double seconds, double rate = 44100.0, double amp = 0.5) {
  AudioBuffer b;
  b.rate = rate;
  const auto n = static_cast<std::size_t>(std::llround(seconds * rate));
  for (std::size_t i = 0; i < n; ++i) b.samples.push_back(amp * std::sin(2 * kPi * f * static_cast<double>(i) / rate));
  return b;
}

double tail_rms(const AudioBuffer& b) {
  const std::span<const double> x(b.samples);
  return soniq::test::rms(x.subspan(x.size() / 4));
}

}  // namespace

TEST_CASE("pitch_map endpoints and midpoint") {
  const SonifyConfig cfg;
  CHECK(pitch_map(-3.0, -3.0, 5.0, cfg) == 261.63);
  CHECK(pitch_map(5.0, -3.0, 5.0, cfg) == 1244.51);
  CHECK(pitch_map(1.0, -3.0, 5.0, cfg) == doctest::Approx(753.07).epsilon(1e-12));
  CHECK(pitch_map(-100.0, -3.0, 5.0, cfg) == 261.63);
  CHECK(pitch_map(100.0, -3.0, 5.0, cfg) == 1244.51);
  CHECK_THROWS_AS(pitch_map(1.0, 2.0, 2.0, cfg), ArgumentError);

  SonifyConfig log = cfg;
  log.pitch_scale = PitchScale::kLog;
  CHECK(pitch_map(1.0, -3.0, 5.0, log) == doctest::Approx(std::sqrt(261.63 * 1244.51)));
}

TEST_CASE("property: pitch_map is monotone") {
  for (auto scale : {PitchScale::kLinear, PitchScale::kLog}) {
    SonifyConfig cfg;
    cfg.pitch_scale = scale;
    double prev = 0;
    for (int i = -50; i <= 150; ++i) {
      const double f = pitch_map(i * 0.01, 0.0, 1.0, cfg);
      CHECK(f >= prev);
      CHECK(f >= cfg.f_min);
      CHECK(f <= cfg.f_max);
      prev = f;
    }
  }
}

TEST_CASE("render_voice") {
  SonifyConfig cfg;
  const std::vector<double> ten(10, 440.0);
  CHECK(render_voice(ten, cfg).samples.size() == 44100);

  // 441 Hz over 0.1 s is 44.1 cycles; the full-length DFT peaks at 440 Hz (bin 44).
  cfg.f_min = 200.0;
  const auto one = render_voice(std::vector<double>{441.0}, cfg);
  REQUIRE(one.samples.size() == 4410);
  std::size_t best = 0;
  double best_mag = 0;
  for (std::size_t k = 30; k < 60; ++k) {
    const double m = soniq::test::dft_bin(one.samples, k);
    if (m > best_mag) {
      best_mag = m;
      best = k;
    }
  }
  CHECK(best == 44);

  SonifyConfig silent = cfg;
  silent.amplitude_per_voice = 0.0;
  for (double s : render_voice(ten, silent).samples) CHECK(s == 0.0);

  CHECK_THROWS_AS(render_voice(std::vector<double>{}, cfg), ArgumentError);
  CHECK_THROWS_AS(render_voice(std::vector<double>{5000.0}, cfg), ArgumentError);
}

TEST_CASE("render_voice is phase continuous across notes") {
  SonifyConfig cfg;
  cfg.fade = 0.0;
  const auto a = render_voice(std::vector<double>{500.0, 500.0}, cfg);
  const auto b = render_voice(std::vector<double>{500.0}, [&] {
    SonifyConfig c = cfg;
    c.note_duration = 0.2;
    return c;
  }());
  REQUIRE(a.samples.size() == b.samples.size());
  double worst = 0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) worst = std::max(worst, std::abs(a.samples[i] - b.samples[i]));
  CHECK(worst < 1e-9);
}

TEST_CASE("fm_modulate") {
  SonifyConfig cfg;
  const std::vector<double> pitches{300.0, 700.0, 1200.0};
  const auto plain = render_voice(pitches, cfg);
  const auto fm0 = fm_modulate(pitches, std::vector<double>(3, 0.0), 1.0, cfg);
  REQUIRE(fm0.samples.size() == plain.samples.size());
  double worst = 0;
  for (std::size_t i = 0; i < plain.samples.size(); ++i) worst = std::max(worst, std::abs(plain.samples[i] - fm0.samples[i]));
  CHECK(worst < 1e-12);

  CHECK_THROWS_AS(fm_modulate(pitches, std::vector<double>{1.0, -1.0, 0.0}, 1.0, cfg), ArgumentError);
  CHECK_THROWS_AS(fm_modulate(pitches, std::vector<double>{1.0}, 1.0, cfg), ShapeError);
}

TEST_CASE("FM sidebands follow Bessel weights") {
  const double j0 = soniq::test::bessel_j_series(0, 1.0);
  const double j1 = soniq::test::bessel_j_series(1, 1.0);
  CHECK(j0 == doctest::Approx(0.7652).epsilon(1e-4));
  CHECK(j1 == doctest::Approx(0.4401).epsilon(1e-4));

  // Modulator at 200 Hz keeps sidebands on exact 10 Hz DFT bins away from DC.
  for (double fade : {0.0, 0.005}) {
    SonifyConfig cfg;
    cfg.amplitude_per_voice = 1.0;
    cfg.fade = fade;
    const auto y = fm_modulate(std::vector<double>{1000.0}, std::vector<double>{1.0}, 0.2, cfg);
    const std::size_t n = y.samples.size();
    const auto fade_len = static_cast<double>(std::llround(fade * cfg.audio_rate));
    double window_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      window_sum += fade_len == 0 ? 1.0
                                  : std::min({1.0, static_cast<double>(i) / fade_len,
                                              static_cast<double>(n - 1 - i) / fade_len});
    }
    const double carrier = soniq::test::tone_amplitude(y.samples, 1000.0, cfg.audio_rate, window_sum);
    const double upper = soniq::test::tone_amplitude(y.samples, 1200.0, cfg.audio_rate, window_sum);
    const double lower = soniq::test::tone_amplitude(y.samples, 800.0, cfg.audio_rate, window_sum);
    CHECK(std::abs(carrier / j0 - 1) < 0.05);
    CHECK(std::abs(upper / j1 - 1) < 0.05);
    CHECK(std::abs(lower / j1 - 1) < 0.05);
  }
}

TEST_CASE("mix") {
  SonifyConfig cfg;
  const auto v = render_voice(std::vector<double>{400.0, 500.0}, cfg);
  const AudioBuffer single[] = {v};
  CHECK(mix(single).samples == v.samples);

  const AudioBuffer twins[] = {v, v};
  const auto m2 = mix(twins);
  for (std::size_t i = 0; i < v.samples.size(); ++i) CHECK(m2.samples[i] == doctest::Approx(v.samples[i]));

  AudioBuffer neg = v;
  for (auto& s : neg.samples) s = -s;
  const AudioBuffer pair[] = {v, neg};
  for (double s : mix(pair).samples) CHECK(s == 0.0);

  AudioBuffer loud = v;
  for (auto& s : loud.samples) s *= 3.0;
  const AudioBuffer one_loud[] = {loud};
  CHECK(mix(one_loud).peak() == doctest::Approx(0.9));

  AudioBuffer other = v;
  other.rate = 22050;
  const AudioBuffer mixed_rates[] = {v, other};
  CHECK_THROWS_AS(mix(mixed_rates), ArgumentError);

  AudioBuffer short_one = v;
  short_one.samples.resize(10);
  const AudioBuffer padded[] = {v, short_one};
  CHECK(mix(padded).samples.size() == v.samples.size());
}

TEST_CASE("lowpass response") {
  AudioBuffer dc;
  dc.samples.assign(44100, 0.7);
  const auto y = lowpass(dc, 4000.0);
  CHECK(std::abs(y.samples.back() - 0.7) < 1e-3);

  const double cutoff = 1000.0;
  const auto high = tone(10 * cutoff, 0.5);
  const double stop_db = 20 * std::log10(tail_rms(lowpass(high, cutoff)) / tail_rms(high));
  CHECK(stop_db <= -20.0);

  const auto low = tone(cutoff / 10, 0.5);
  const double pass_db = 20 * std::log10(tail_rms(lowpass(low, cutoff)) / tail_rms(low));
  CHECK(pass_db >= -1.0);

  CHECK_THROWS_AS(lowpass(dc, 0.0), ArgumentError);
  CHECK_THROWS_AS(lowpass(dc, 30000.0), ArgumentError);
}

TEST_CASE("fm_index_envelope interpolates the mean marginal") {
  ising::EvolutionTrace t;
  t.marginals = {{0, 0}, {0, 0}, {1, 1}};
  const auto env = fm_index_envelope(t, 4, 3.0);
  REQUIRE(env.size() == 4);
  // Step centres at note positions 0.5 and 1.5 of 2 -> notes 0 and 3 clamp.
  CHECK(env[0] == 0.0);
  CHECK(env[1] == doctest::Approx(0.75));
  CHECK(env[2] == doctest::Approx(2.25));
  CHECK(env[3] == 3.0);
}

TEST_CASE("wav encoding") {
  AudioBuffer b;
  b.samples.assign(44100, 0.0);
  const auto bytes = encode_wav(b);
  CHECK(bytes.size() == 44 + 88200);
  const auto info = parse_wav_header(bytes);
  CHECK(info.format == 1);
  CHECK(info.channels == 1);
  CHECK(info.bits_per_sample == 16);
  CHECK(info.sample_rate == 44100);
  CHECK(info.data_bytes == 88200);
  for (std::size_t i = 44; i < bytes.size(); ++i) CHECK(bytes[i] == 0);

  AudioBuffer half;
  half.samples = {0.5 / 32767, -0.5 / 32767, 1.0, -1.0, 2.0};
  const auto hb = encode_wav(half);
  CHECK(hb[44] == 1);  // 0.5 rounds away from zero
  CHECK(hb[46] == 0xFF);
  CHECK(hb[47] == 0xFF);  // -1
  CHECK(hb[48] == 0xFF);
  CHECK(hb[49] == 0x7F);  // 32767
  CHECK(hb[52] == 0xFF);
  CHECK(hb[53] == 0x7F);  // clamped

  const auto path = std::filesystem::temp_directory_path() / "soniq_rt.wav";
  const auto t = tone(700, 0.05, 44100, 0.9);
  write_wav(t, path);
  const auto back = read_wav(path);
  REQUIRE(back.samples.size() == t.samples.size());
  for (std::size_t i = 0; i < t.samples.size(); ++i) CHECK(std::abs(back.samples[i] - t.samples[i]) <= 1.0 / 32767);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(parse_wav_header(std::vector<std::uint8_t>(10, 0)), ParseError);
}

TEST_CASE("spectrogram") {
  const auto t = tone(1000.0, 0.5);
  const auto s = spectrogram(t, 1024, 256);
  CHECK(s.bins == 513);
  CHECK(s.frames == (t.samples.size() - 1024) / 256 + 1);
  const std::size_t expected = static_cast<std::size_t>(std::lround(1000.0 * 1024 / 44100));
  for (std::size_t f = 0; f < s.frames; ++f) {
    std::size_t arg = 0;
    for (std::size_t b = 1; b < s.bins; ++b) {
      if (s.at(f, b) > s.at(f, arg)) arg = b;
    }
    CHECK(arg == expected);
  }

  AudioBuffer silence;
  silence.samples.assign(4096, 0.0);
  const auto z = spectrogram(silence, 512, 512);
  CHECK(z.frames == 8);
  for (double m : z.magnitude) CHECK(m == 0.0);

  CHECK_THROWS_AS(spectrogram(silence, 1000, 10), ArgumentError);
  CHECK_THROWS_AS(spectrogram(silence, 8192, 10), ShapeError);

  const auto dir = std::filesystem::temp_directory_path();
  write_spectrogram_pgm(z, dir / "soniq_z.pgm");
  std::ifstream in(dir / "soniq_z.pgm", std::ios::binary);
  std::string magic;
  std::size_t w = 0, h = 0, maxv = 0;
  in >> magic >> w >> h >> maxv;
  CHECK(magic == "P5");
  CHECK(w == 8);
  CHECK(h == 257);
  CHECK(maxv == 255);
}
