#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "soniq/sonify.hpp"

namespace soniq {

// 16-bit PCM mono RIFF/WAVE bytes. Samples are clamped to [-1, 1], scaled by
// 32767 and rounded half away from zero.
std::vector<std::uint8_t> encode_wav(const AudioBuffer& buffer);
void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path);

struct WavInfo {
  std::uint16_t format{0};  // 1 = PCM
  std::uint16_t channels{0};
  std::uint32_t sample_rate{0};
  std::uint16_t bits_per_sample{0};
  std::uint32_t data_bytes{0};
};

// Parses the fmt and data chunks. Throws ParseError on anything that is not
// 16-bit PCM mono.
WavInfo parse_wav_header(const std::vector<std::uint8_t>& bytes);
AudioBuffer decode_wav(const std::vector<std::uint8_t>& bytes);
AudioBuffer read_wav(const std::filesystem::path& path);

}  // namespace soniq
