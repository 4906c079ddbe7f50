#include "soniq/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "soniq/error.hpp"

namespace soniq {

std::vector<double> downsample(std::span<const double> series, std::size_t factor) {
  if (factor == 0) throw ArgumentError("downsample factor must be >= 1");
  std::vector<double> out;
  out.reserve(series.empty() ? 0 : (series.size() - 1) / factor + 1);
  for (std::size_t i = 0; i < series.size(); i += factor) out.push_back(series[i]);
  return out;
}

std::vector<std::size_t> segment_bounds(std::size_t length, std::size_t n_segments) {
  if (n_segments == 0) throw ArgumentError("n_segments must be >= 1");
  if (length < n_segments) {
    throw ShapeError("series of length " + std::to_string(length) + " cannot be split into " +
                     std::to_string(n_segments) + " segments");
  }
  const std::size_t base = length / n_segments;
  const std::size_t extra = length % n_segments;
  std::vector<std::size_t> bounds(n_segments + 1, 0);
  for (std::size_t s = 0; s < n_segments; ++s) {
    bounds[s + 1] = bounds[s] + base + (s < extra ? 1 : 0);
  }
  return bounds;
}

ReducedSeries segment_average(std::span<const double> series, std::size_t n_segments) {
  const auto bounds = segment_bounds(series.size(), n_segments);
  ReducedSeries out;
  out.values.reserve(n_segments);
  for (std::size_t s = 0; s < n_segments; ++s) {
    double sum = 0.0;
    for (std::size_t i = bounds[s]; i < bounds[s + 1]; ++i) sum += series[i];
    out.values.push_back(sum / static_cast<double>(bounds[s + 1] - bounds[s]));
  }
  return out;
}

ReducedSeries segment_average(std::span<const std::optional<double>> series,
                              std::size_t n_segments) {
  const auto bounds = segment_bounds(series.size(), n_segments);
  ReducedSeries out;
  out.values.reserve(n_segments);
  for (std::size_t s = 0; s < n_segments; ++s) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = bounds[s]; i < bounds[s + 1]; ++i) {
      if (series[i]) {
        sum += *series[i];
        ++count;
      }
    }
    if (count == 0) {
      throw DegenerateWindowError("segment " + std::to_string(s) + " contains only gap values");
    }
    out.values.push_back(sum / static_cast<double>(count));
  }
  return out;
}

CouplingSchedule renormalize_couplings(std::span<const ReducedSeries> reduced,
                                       std::size_t reference_segments) {
  if (reduced.empty()) throw ArgumentError("no channels to renormalize");
  const std::size_t k = reduced.front().size();
  if (k == 0) throw ShapeError("reduced series are empty");
  for (const auto& r : reduced) {
    if (r.size() != k) throw ShapeError("reduced series differ in length");
  }
  if (reference_segments == 0 || reference_segments > k) {
    throw ArgumentError("reference span must cover 1.." + std::to_string(k) + " segments");
  }
  CouplingSchedule out;
  out.couplings.assign(k, std::vector<double>(reduced.size(), 0.0));
  for (std::size_t c = 0; c < reduced.size(); ++c) {
    double ref = 0.0;
    for (std::size_t s = 0; s < reference_segments; ++s) ref = std::max(ref, std::abs(reduced[c][s]));
    if (ref == 0.0) {
      out.flagged_channels.push_back(c);
      ref = 1.0;
    }
    for (std::size_t s = 0; s < k; ++s) out.couplings[s][c] = reduced[c][s] / ref;
  }
  return out;
}

ReducedSeries renormalize_field(const ReducedSeries& moment, std::size_t transition_step) {
  if (transition_step >= moment.size()) {
    throw ArgumentError("transition step " + std::to_string(transition_step) +
                        " is outside the " + std::to_string(moment.size()) + "-step series");
  }
  const double pivot = moment[transition_step];
  if (pivot == 0.0 || !std::isfinite(pivot)) {
    throw ArgumentError("field series is zero at the transition step");
  }
  ReducedSeries out = moment;
  for (auto& v : out.values) v /= pivot;
  return out;
}

ising::IsingSchedule make_schedule(const CouplingSchedule& couplings, const ReducedSeries& field,
                                   double dt) {
  if (couplings.couplings.size() != field.size()) {
    throw ShapeError("coupling schedule has " + std::to_string(couplings.couplings.size()) +
                     " steps but field has " + std::to_string(field.size()));
  }
  ising::IsingSchedule schedule;
  schedule.n_spins = static_cast<int>(couplings.couplings.front().size());
  schedule.dt = dt;
  for (std::size_t k = 0; k < field.size(); ++k) {
    schedule.steps.push_back({couplings.couplings[k], field[k]});
  }
  ising::validate(schedule);
  return schedule;
}

}  // namespace soniq
