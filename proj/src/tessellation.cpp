#include "kiang/tessellation.hpp"

#include "kiang/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace kiang {

NucleiSet::NucleiSet(Position lattice_length, std::vector<Position> positions)
    : lattice_length_(lattice_length), positions_(std::move(positions)) {
  if (lattice_length_ < 2)
    throw PreconditionError("lattice length must be at least 2");
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    const Position p = positions_[i];
    if (p < 1 || p > lattice_length_ - 1)
      throw PreconditionError("nucleus position " + std::to_string(p) +
                              " outside [1, " +
                              std::to_string(lattice_length_ - 1) + "]");
    if (i > 0 && positions_[i - 1] >= p)
      throw PreconditionError("nucleus positions must be strictly increasing");
  }
}

NucleiSet NucleiSet::from_unsorted(Position lattice_length,
                                   std::vector<Position> positions) {
  std::sort(positions.begin(), positions.end());
  return NucleiSet(lattice_length, std::move(positions));
}

Position NucleiSet::min_gap() const {
  if (positions_.size() < 2)
    return 0;
  Position best = positions_[1] - positions_[0];
  for (std::size_t i = 2; i < positions_.size(); ++i)
    best = std::min(best, positions_[i] - positions_[i - 1]);
  return best;
}

CellSample CellSample::from_sizes(std::vector<double> sizes) {
  CellSample out;
  out.sizes = std::move(sizes);
  if (out.sizes.empty())
    return out;
  long double total = 0;
  for (double s : out.sizes)
    total += s;
  const double mean =
      static_cast<double>(total / static_cast<long double>(out.sizes.size()));
  out.normalized.resize(out.sizes.size());
  for (std::size_t i = 0; i < out.sizes.size(); ++i)
    out.normalized[i] = out.sizes[i] / mean;
  return out;
}

double CellSample::mean_size() const {
  if (sizes.empty())
    throw EmptySampleError("mean of an empty cell sample");
  long double total = 0;
  for (double s : sizes)
    total += s;
  return static_cast<double>(total / static_cast<long double>(sizes.size()));
}

std::size_t Histogram::non_empty_bins() const {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(),
                    [](std::uint64_t c) { return c != 0; }));
}

void append_cell_sizes(const NucleiSet &nuclei, std::vector<double> &out) {
  const auto &p = nuclei.positions();
  if (p.size() < 3)
    throw TooFewNucleiError("need at least 3 nuclei for an interior cell, got " +
                            std::to_string(p.size()));
  out.reserve(out.size() + p.size() - 2);
  for (std::size_t i = 1; i + 1 < p.size(); ++i)
    out.push_back(0.5 * static_cast<double>(p[i + 1] - p[i - 1]));
}

CellSample cell_sizes(const NucleiSet &nuclei) {
  std::vector<double> sizes;
  append_cell_sizes(nuclei, sizes);
  return CellSample::from_sizes(std::move(sizes));
}

Histogram histogram(const CellSample &sample, double bin_width,
                    double range_max) {
  return histogram(sample.normalized, bin_width, range_max);
}

Histogram histogram(std::span<const double> values, double bin_width,
                    double range_max) {
  if (!(bin_width > 0))
    throw PreconditionError("bin width must be positive");
  if (!(range_max >= bin_width))
    throw PreconditionError("histogram range must be at least one bin wide");
  if (values.empty())
    throw EmptySampleError("cannot histogram an empty sample");

  const double ratio = range_max / bin_width;
  const double nearest = std::round(ratio);
  const bool whole = std::abs(ratio - nearest) < 1e-9 * ratio;
  const auto n_bins = static_cast<std::size_t>(whole ? nearest : std::ceil(ratio));

  Histogram h;
  h.bin_edges.resize(n_bins + 1);
  // range_max * i / n rounds to the nearest double of the decimal edge
  // (0.3, not 3 * 0.1 = 0.30000000000000004).
  for (std::size_t i = 0; i <= n_bins; ++i)
    h.bin_edges[i] =
        whole ? range_max * static_cast<double>(i) / static_cast<double>(n_bins)
              : std::min(static_cast<double>(i) * bin_width, range_max);
  h.bin_edges.back() = range_max;
  h.counts.assign(n_bins, 0);

  for (double x : values) {
    if (x > range_max) {
      ++h.overflow;
      continue;
    }
    if (x < 0)
      throw PreconditionError("negative value in histogram input");
    auto idx = static_cast<std::size_t>(std::floor(x / bin_width));
    idx = std::min(idx, n_bins - 1);
    // Snap to the edges actually stored, so x == edge lands to the right.
    while (idx > 0 && x < h.bin_edges[idx])
      --idx;
    while (idx + 1 < n_bins && x >= h.bin_edges[idx + 1])
      ++idx;
    ++h.counts[idx];
  }
  h.n_total = values.size();

  h.densities.resize(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i)
    h.densities[i] = static_cast<double>(h.counts[i]) /
                     (static_cast<double>(h.n_total) * h.bin_width(i));
  return h;
}

void write_histogram_csv(std::ostream &os, const Histogram &h) {
  os << "bin_left,bin_right,count,density\n";
  os << std::setprecision(12);
  for (std::size_t i = 0; i < h.bins(); ++i)
    os << h.bin_edges[i] << ',' << h.bin_edges[i + 1] << ',' << h.counts[i]
       << ',' << h.densities[i] << '\n';
}

std::string histogram_csv(const Histogram &h) {
  std::ostringstream os;
  write_histogram_csv(os, h);
  return os.str();
}

} // namespace kiang
