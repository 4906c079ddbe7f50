#include "soniq/spectrogram.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <string>
#include <type_traits>

#include "soniq/error.hpp"
#include "soniq/number_format.hpp"

namespace soniq {

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
struct PlanDestroy {
  void operator()(fftw_plan p) const { fftw_destroy_plan(p); }
};

constexpr double kDynamicRangeDb = 80.0;

}  // namespace

Spectrogram spectrogram(const AudioBuffer& buffer, std::size_t fft_size, std::size_t hop) {
  if (fft_size < 2 || !std::has_single_bit(fft_size)) {
    throw ArgumentError("fft size must be a power of two >= 2");
  }
  if (hop == 0) throw ArgumentError("spectrogram hop must be >= 1");
  if (buffer.samples.size() < fft_size) {
    throw ShapeError("buffer of " + std::to_string(buffer.samples.size()) +
                     " samples is shorter than one " + std::to_string(fft_size) + "-sample frame");
  }

  Spectrogram spec;
  spec.fft_size = fft_size;
  spec.hop = hop;
  spec.rate = buffer.rate;
  spec.frames = (buffer.samples.size() - fft_size) / hop + 1;
  spec.bins = fft_size / 2 + 1;
  spec.magnitude.resize(spec.frames * spec.bins);

  std::vector<double> window(fft_size);
  for (std::size_t i = 0; i < fft_size; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(fft_size));
  }

  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * fft_size)));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * spec.bins)));
  // FFTW_ESTIMATE keeps planning deterministic; the planner is not thread-safe.
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDestroy> plan(fftw_plan_dft_r2c_1d(
      static_cast<int>(fft_size), in.get(), out.get(), FFTW_ESTIMATE));

  for (std::size_t f = 0; f < spec.frames; ++f) {
    const double* src = buffer.samples.data() + f * hop;
    for (std::size_t i = 0; i < fft_size; ++i) in.get()[i] = src[i] * window[i];
    fftw_execute(plan.get());
    for (std::size_t b = 0; b < spec.bins; ++b) {
      spec.magnitude[f * spec.bins + b] = std::hypot(out.get()[b][0], out.get()[b][1]);
    }
  }
  return spec;
}

void write_spectrogram_csv(const Spectrogram& spec, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  std::string buf = "frame";
  for (std::size_t b = 0; b < spec.bins; ++b) buf += ",bin" + std::to_string(b);
  buf += '\n';
  for (std::size_t f = 0; f < spec.frames; ++f) {
    buf += std::to_string(f);
    for (std::size_t b = 0; b < spec.bins; ++b) {
      buf += ',';
      buf += format_double(spec.at(f, b));
    }
    buf += '\n';
    if (buf.size() > (1U << 20)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_spectrogram_pgm(const Spectrogram& spec, const std::filesystem::path& path) {
  const double peak = spec.magnitude.empty()
                          ? 0.0
                          : *std::max_element(spec.magnitude.begin(), spec.magnitude.end());
  std::vector<unsigned char> pixels(spec.frames * spec.bins, 0);
  if (peak > 0.0) {
    for (std::size_t f = 0; f < spec.frames; ++f) {
      for (std::size_t b = 0; b < spec.bins; ++b) {
        const double m = spec.at(f, b);
        if (m <= 0.0) continue;
        const double db = 20.0 * std::log10(m / peak);
        const double level = std::clamp((db + kDynamicRangeDb) / kDynamicRangeDb, 0.0, 1.0);
        const std::size_t row = spec.bins - 1 - b;
        pixels[row * spec.frames + f] = static_cast<unsigned char>(std::lround(level * 255.0));
      }
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "P5\n" << spec.frames << ' ' << spec.bins << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace soniq
