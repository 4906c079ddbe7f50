#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "soniq/sonify.hpp"

namespace soniq {

// Hann-windowed STFT magnitudes, row-major [frame][bin], bins = fft_size/2+1.
struct Spectrogram {
  std::size_t fft_size{0};
  std::size_t hop{0};
  double rate{0.0};
  std::size_t frames{0};
  std::size_t bins{0};
  std::vector<double> magnitude;

  double at(std::size_t frame, std::size_t bin) const { return magnitude[frame * bins + bin]; }
};

// frames = floor((len - fft_size) / hop) + 1. Throws ArgumentError for a
// non power-of-two fft_size or zero hop, ShapeError when the buffer is
// shorter than one frame.
Spectrogram spectrogram(const AudioBuffer& buffer, std::size_t fft_size, std::size_t hop);

// One frame per row, one bin per column, with a `frame,bin0,...` header.
void write_spectrogram_csv(const Spectrogram& spec, const std::filesystem::path& path);

// Binary P5 image, time along x and frequency along y (low bins at the
// bottom). Log magnitude over an 80 dB range below the global peak maps to
// 0..255; an all-zero spectrogram renders black.
void write_spectrogram_pgm(const Spectrogram& spec, const std::filesystem::path& path);

}  // namespace soniq
