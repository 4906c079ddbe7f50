#include "soniq/channels.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "soniq/error.hpp"
#include "soniq/number_format.hpp"

namespace soniq {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? comma : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<std::size_t> ChannelSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

std::span<const double> ChannelSet::channel(std::string_view name) const {
  const auto idx = find(name);
  if (!idx) throw ArgumentError("unknown channel '" + std::string(name) + "'");
  return data[*idx];
}

void validate(const ChannelSet& set) {
  if (set.names.size() != set.data.size()) throw ArgumentError("channel names/data size mismatch");
  if (!(set.sample_rate > 0.0)) throw ArgumentError("sample rate must be positive");
  std::set<std::string_view> seen;
  for (const auto& n : set.names) {
    if (!seen.insert(n).second) throw ArgumentError("duplicate channel name '" + n + "'");
  }
  for (const auto& ch : set.data) {
    if (ch.size() != set.n_samples()) throw ArgumentError("channels have unequal lengths");
  }
}

ChannelSet parse_csv(std::string_view text, std::optional<double> sample_rate) {
  ChannelSet set;
  std::optional<double> meta_rate;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      constexpr std::string_view key = "sample_rate=";
      if (body.starts_with(key)) {
        const auto v = parse_number(trim(body.substr(key.size())));
        if (!v || !(*v > 0.0)) throw ParseError("invalid sample_rate metadata", line_no);
        meta_rate = v;
      }
      continue;
    }
    const auto fields = split_fields(line);
    if (!have_header) {
      std::set<std::string_view> seen;
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (fields[c].empty()) throw ParseError("empty channel name", line_no, c + 1);
        if (!seen.insert(fields[c]).second) {
          throw ParseError("duplicate channel name '" + std::string(fields[c]) + "'", line_no,
                           c + 1);
        }
        set.names.emplace_back(fields[c]);
      }
      set.data.resize(set.names.size());
      have_header = true;
      continue;
    }
    if (fields.size() != set.names.size()) {
      throw ParseError("expected " + std::to_string(set.names.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_number(fields[c]);
      if (!v) {
        throw ParseError("non-numeric cell '" + std::string(fields[c]) + "'", line_no, c + 1);
      }
      set.data[c].push_back(*v);
    }
  }
  if (!have_header) throw ParseError("missing header row");
  if (set.n_samples() == 0) throw ParseError("no data rows");
  if (sample_rate) {
    set.sample_rate = *sample_rate;
  } else if (meta_rate) {
    set.sample_rate = *meta_rate;
  } else {
    throw ParseError("sample rate unknown: pass it explicitly or add '# sample_rate=<Hz>'");
  }
  if (!(set.sample_rate > 0.0)) throw ArgumentError("sample rate must be positive");
  return set;
}

ChannelSet load_csv(const std::filesystem::path& path, std::optional<double> sample_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str(), sample_rate);
}

void write_csv(const ChannelSet& set, const std::filesystem::path& path) {
  validate(set);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  std::string buf = "# sample_rate=" + format_double(set.sample_rate) + "\n";
  for (std::size_t c = 0; c < set.names.size(); ++c) {
    if (c) buf += ',';
    buf += set.names[c];
  }
  buf += '\n';
  for (std::size_t i = 0; i < set.n_samples(); ++i) {
    for (std::size_t c = 0; c < set.n_channels(); ++c) {
      if (c) buf += ',';
      buf += format_double(set.data[c][i]);
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

}  // namespace soniq
