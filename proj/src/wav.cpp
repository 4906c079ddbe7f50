#include "soniq/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "soniq/error.hpp"

namespace soniq {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char (&tag)[5]) {
  out.insert(out.end(), tag, tag + 4);
}

std::uint16_t get_u16(const std::vector<std::uint8_t>& b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(const std::vector<std::uint8_t>& b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

}  // namespace

std::vector<std::uint8_t> encode_wav(const AudioBuffer& buffer) {
  const auto rate = static_cast<std::uint32_t>(std::lround(buffer.rate));
  const auto data_bytes = static_cast<std::uint32_t>(buffer.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, rate);
  put_u32(out, rate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double s : buffer.samples) {
    // std::round is half away from zero.
    const auto q = static_cast<std::int16_t>(std::round(std::clamp(s, -1.0, 1.0) * 32767.0));
    put_u16(out, static_cast<std::uint16_t>(q));
  }
  return out;
}

void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path) {
  const auto bytes = encode_wav(buffer);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

WavInfo parse_wav_header(const std::vector<std::uint8_t>& b) {
  if (b.size() < 12 || !tag_is(b, 0, "RIFF") || !tag_is(b, 8, "WAVE")) {
    throw ParseError("not a RIFF/WAVE file");
  }
  WavInfo info;
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= b.size()) {
    const std::uint32_t size = get_u32(b, pos + 4);
    const std::size_t body = pos + 8;
    if (tag_is(b, pos, "fmt ")) {
      if (size < 16 || body + 16 > b.size()) throw ParseError("truncated fmt chunk");
      info.format = get_u16(b, body);
      info.channels = get_u16(b, body + 2);
      info.sample_rate = get_u32(b, body + 4);
      info.bits_per_sample = get_u16(b, body + 14);
      have_fmt = true;
    } else if (tag_is(b, pos, "data")) {
      if (!have_fmt) throw ParseError("data chunk before fmt chunk");
      if (body + size > b.size()) throw ParseError("truncated data chunk");
      info.data_bytes = size;
      if (info.format != 1 || info.channels != 1 || info.bits_per_sample != 16) {
        throw ParseError("only 16-bit PCM mono is supported");
      }
      return info;
    }
    pos = body + size + (size & 1U);
  }
  throw ParseError("missing fmt or data chunk");
}

AudioBuffer decode_wav(const std::vector<std::uint8_t>& bytes) {
  const auto info = parse_wav_header(bytes);
  std::size_t pos = 12;
  while (!tag_is(bytes, pos, "data")) pos += 8 + get_u32(bytes, pos + 4) + (get_u32(bytes, pos + 4) & 1U);
  pos += 8;
  AudioBuffer out;
  out.rate = info.sample_rate;
  out.samples.resize(info.data_bytes / 2);
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] = static_cast<std::int16_t>(get_u16(bytes, pos + 2 * i)) / 32767.0;
  }
  return out;
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_wav(bytes);
}

}  // namespace soniq
