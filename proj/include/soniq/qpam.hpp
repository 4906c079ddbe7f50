#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soniq/statevector.hpp"

namespace soniq::qpam {

// How signed samples are made encodable as amplitudes.
enum class ShiftMode {
  kNone,      // normalize raw values
  kMinShift,  // subtract the window minimum first
};

ShiftMode parse_shift_mode(std::string_view text);
std::string_view to_string(ShiftMode mode);

struct WindowSpec {
  std::size_t window_len{16};  // power of two
  std::size_t hop{10};
  int moment_order{4};
};

void validate(const WindowSpec& spec);

// Rolling expectation values indexed by window start. A window that cannot
// be encoded (all zero after the shift) is stored as std::nullopt.
struct MomentSeries {
  std::vector<std::size_t> starts;
  std::vector<std::optional<double>> values;

  std::size_t size() const noexcept { return starts.size(); }
  std::size_t gap_count() const noexcept;
};

// Amplitude-encodes one window. Throws ShapeError for a non power-of-two
// length and DegenerateWindowError when the (shifted) window is all zero.
Statevector qpam_encode(std::span<const double> window, ShiftMode shift);

// weights_i = i^order, i in [0, dim).
DiagonalObservable moment_observable(int order, std::size_t dim);

// Number of windows produced for a signal of `n` samples.
std::size_t window_count(std::size_t n, const WindowSpec& spec);

// Encodes every window through the statevector simulator and measures the
// moment observable.
MomentSeries rolling_moment(std::span<const double> signal, const WindowSpec& spec,
                            ShiftMode shift = ShiftMode::kMinShift);

// sum_i i^p w_i^2 / sum_j w_j^2 evaluated directly on the window.
double classical_moment_oracle(std::span<const double> window, int order, ShiftMode shift);

// Runs the oracle on every window of `signal` and returns the largest
// |quantum - oracle| / max(1, |oracle|). Gaps must coincide in both routes.
double max_oracle_deviation(std::span<const double> signal, const WindowSpec& spec,
                            ShiftMode shift, const MomentSeries& series);

// `start_index,value` with round-trip numbers; gap windows are written as nan.
std::string moments_csv(const MomentSeries& series);
void write_moments_csv(const MomentSeries& series, const std::filesystem::path& path);

}  // namespace soniq::qpam
