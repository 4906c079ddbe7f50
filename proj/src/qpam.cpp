#include "soniq/qpam.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include <fstream>

#include "soniq/error.hpp"
#include "soniq/number_format.hpp"

namespace soniq::qpam {

namespace {

std::vector<double> shifted(std::span<const double> window, ShiftMode shift) {
  std::vector<double> w(window.begin(), window.end());
  if (shift == ShiftMode::kMinShift && !w.empty()) {
    const double lo = *std::min_element(w.begin(), w.end());
    for (auto& v : w) v -= lo;
  }
  return w;
}

double int_pow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

ShiftMode parse_shift_mode(std::string_view text) {
  if (text == "none") return ShiftMode::kNone;
  if (text == "min-shift") return ShiftMode::kMinShift;
  throw ArgumentError("unknown shift mode '" + std::string(text) + "' (expected none|min-shift)");
}

std::string_view to_string(ShiftMode mode) {
  return mode == ShiftMode::kNone ? "none" : "min-shift";
}

void validate(const WindowSpec& spec) {
  if (spec.window_len < 2 || !std::has_single_bit(spec.window_len)) {
    throw ArgumentError("window length must be a power of two >= 2");
  }
  if (spec.hop < 1) throw ArgumentError("hop must be >= 1");
  if (spec.moment_order < 1) throw ArgumentError("moment order must be >= 1");
}

std::size_t MomentSeries::gap_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [](const auto& v) { return !v.has_value(); }));
}

Statevector qpam_encode(std::span<const double> window, ShiftMode shift) {
  if (window.size() < 2 || !std::has_single_bit(window.size())) {
    throw ShapeError("QPAM window length " + std::to_string(window.size()) +
                     " is not a power of two");
  }
  const auto w = shifted(window, shift);
  if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; })) {
    throw DegenerateWindowError(shift == ShiftMode::kMinShift
                                    ? "flat window is all zero after min-shift"
                                    : "all-zero window");
  }
  return Statevector::from_amplitudes(std::span<const double>(w));
}

DiagonalObservable moment_observable(int order, std::size_t dim) {
  if (dim < 2) throw ArgumentError("moment observable dimension must be >= 2");
  if (order < 0) throw ArgumentError("moment order must be non-negative");
  DiagonalObservable obs;
  obs.weights.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) obs.weights[i] = int_pow(static_cast<double>(i), order);
  return obs;
}

std::size_t window_count(std::size_t n, const WindowSpec& spec) {
  if (n < spec.window_len) return 0;
  return (n - spec.window_len) / spec.hop + 1;
}

MomentSeries rolling_moment(std::span<const double> signal, const WindowSpec& spec,
                            ShiftMode shift) {
  validate(spec);
  if (signal.size() < spec.window_len) {
    throw ShapeError("signal of " + std::to_string(signal.size()) +
                     " samples is shorter than the window (" + std::to_string(spec.window_len) +
                     ")");
  }
  const auto obs = moment_observable(spec.moment_order, spec.window_len);
  const std::size_t count = window_count(signal.size(), spec);
  MomentSeries out;
  out.starts.reserve(count);
  out.values.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t start = k * spec.hop;
    out.starts.push_back(start);
    try {
      const auto state = qpam_encode(signal.subspan(start, spec.window_len), shift);
      out.values.emplace_back(expectation_diagonal(state, obs));
    } catch (const DegenerateWindowError&) {
      out.values.emplace_back(std::nullopt);
    }
  }
  return out;
}

double classical_moment_oracle(std::span<const double> window, int order, ShiftMode shift) {
  if (window.size() < 2 || !std::has_single_bit(window.size())) {
    throw ShapeError("window length is not a power of two");
  }
  const auto w = shifted(window, shift);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double e = w[i] * w[i];
    num += std::pow(static_cast<double>(i), order) * e;
    den += e;
  }
  if (den == 0.0) throw DegenerateWindowError("degenerate window");
  return num / den;
}

double max_oracle_deviation(std::span<const double> signal, const WindowSpec& spec,
                            ShiftMode shift, const MomentSeries& series) {
  double worst = 0.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto window = signal.subspan(series.starts[k], spec.window_len);
    std::optional<double> expected;
    try {
      expected = classical_moment_oracle(window, spec.moment_order, shift);
    } catch (const DegenerateWindowError&) {
    }
    if (expected.has_value() != series.values[k].has_value()) {
      return std::numeric_limits<double>::infinity();
    }
    if (!expected) continue;
    const double dev = std::abs(*series.values[k] - *expected) / std::max(1.0, std::abs(*expected));
    worst = std::max(worst, dev);
  }
  return worst;
}

std::string moments_csv(const MomentSeries& series) {
  std::string out = "start_index,value\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    out += std::to_string(series.starts[k]);
    out += ',';
    out += series.values[k] ? format_double(*series.values[k]) : std::string("nan");
    out += '\n';
  }
  return out;
}

void write_moments_csv(const MomentSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << moments_csv(series);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace soniq::qpam
