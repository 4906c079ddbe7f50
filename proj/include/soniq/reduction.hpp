#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "soniq/ising.hpp"

namespace soniq {

// A series averaged down to one value per segment.
struct ReducedSeries {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

// Keeps samples 0, factor, 2*factor, ... Throws ArgumentError for factor 0.
std::vector<double> downsample(std::span<const double> series, std::size_t factor);

// Start offsets of `n_segments` contiguous spans covering `length` samples;
// the first length % n_segments spans are one sample longer. Size n+1.
std::vector<std::size_t> segment_bounds(std::size_t length, std::size_t n_segments);

// Mean of each span. Throws ShapeError if series.size() < n_segments.
ReducedSeries segment_average(std::span<const double> series, std::size_t n_segments);

// As above, skipping missing entries. A span with no present entries throws
// DegenerateWindowError.
ReducedSeries segment_average(std::span<const std::optional<double>> series,
                              std::size_t n_segments);

struct CouplingSchedule {
  std::vector<std::vector<double>> couplings;  // [step][spin]
  std::vector<std::size_t> flagged_channels;   // zero reference max, scale 1 used
};

// Divides each channel by its max |value| over the first `reference_segments`
// segments, so the baseline lies in [-1, 1]; channel n becomes column J_n.
CouplingSchedule renormalize_couplings(std::span<const ReducedSeries> reduced,
                                       std::size_t reference_segments = 3);

// moment / moment[transition_step] (0-based), so the result is exactly 1 there.
ReducedSeries renormalize_field(const ReducedSeries& moment, std::size_t transition_step);

// Pairs step k's couplings with field[k].
ising::IsingSchedule make_schedule(const CouplingSchedule& couplings, const ReducedSeries& field,
                                   double dt);

}  // namespace soniq
