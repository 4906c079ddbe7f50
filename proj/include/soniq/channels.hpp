#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace soniq {

// Named multi-channel time series sharing one sample rate.
struct ChannelSet {
  std::vector<std::string> names;
  double sample_rate{0.0};
  std::vector<std::vector<double>> data;  // [channel][sample]

  std::size_t n_channels() const noexcept { return data.size(); }
  std::size_t n_samples() const noexcept { return data.empty() ? 0 : data.front().size(); }

  // Index of `name`, or nullopt.
  std::optional<std::size_t> find(std::string_view name) const;
  std::span<const double> channel(std::string_view name) const;  // throws ArgumentError
};

// Throws ArgumentError if the invariants (equal lengths, unique names,
// positive rate) do not hold.
void validate(const ChannelSet& set);

// Parses a CSV with an optional `# sample_rate=<Hz>` line, a header of channel
// names and one numeric row per sample. `sample_rate` overrides the metadata.
// Errors name the 1-based file row and column.
ChannelSet parse_csv(std::string_view text, std::optional<double> sample_rate = std::nullopt);
ChannelSet load_csv(const std::filesystem::path& path,
                    std::optional<double> sample_rate = std::nullopt);

// Writes the same format load_csv reads, with round-trip number formatting.
void write_csv(const ChannelSet& set, const std::filesystem::path& path);

}  // namespace soniq
