#ifndef KIANG_TESSELLATION_HPP
#define KIANG_TESSELLATION_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace kiang {

using Position = std::int64_t;

/// Nuclei on a 1D lattice of sites 0..M. Positions are strictly increasing
/// and lie in [1, M-1].
class NucleiSet {
public:
  NucleiSet() = default;

  /// Validates ordering and range; throws PreconditionError otherwise.
  NucleiSet(Position lattice_length, std::vector<Position> positions);

  /// Sorts first; duplicates are still an error.
  static NucleiSet from_unsorted(Position lattice_length,
                                 std::vector<Position> positions);

  Position lattice_length() const noexcept { return lattice_length_; }
  const std::vector<Position> &positions() const noexcept { return positions_; }
  std::size_t size() const noexcept { return positions_.size(); }
  bool empty() const noexcept { return positions_.empty(); }

  /// Smallest gap between neighbours; 0 when fewer than two nuclei.
  Position min_gap() const;

  friend bool operator==(const NucleiSet &, const NucleiSet &) = default;

private:
  Position lattice_length_ = 0;
  std::vector<Position> positions_;
};

/// Voronoi cell sizes in lattice units, plus the same sizes divided by
/// their mean.
struct CellSample {
  std::vector<double> sizes;
  std::vector<double> normalized;

  static CellSample from_sizes(std::vector<double> sizes);

  std::size_t size() const noexcept { return sizes.size(); }
  bool empty() const noexcept { return sizes.empty(); }
  double mean_size() const;
};

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<double> densities;
  std::vector<std::uint64_t> counts;
  std::uint64_t overflow = 0; // samples above the last edge
  std::uint64_t n_total = 0;  // includes overflow

  std::size_t bins() const noexcept { return counts.size(); }
  double bin_width(std::size_t i) const {
    return bin_edges[i + 1] - bin_edges[i];
  }
  double midpoint(std::size_t i) const {
    return 0.5 * (bin_edges[i] + bin_edges[i + 1]);
  }
  std::size_t non_empty_bins() const;
};

inline constexpr double kDefaultBinWidth = 0.1;
inline constexpr double kDefaultRangeMax = 6.0;

/// Interior cells only: s_i = (p_{i+1} - p_{i-1}) / 2 for i = 2..N-1. The
/// two boundary cells are open and are dropped.
CellSample cell_sizes(const NucleiSet &nuclei);

/// Appends the interior cell sizes of `nuclei` to `out` (for pooling).
void append_cell_sizes(const NucleiSet &nuclei, std::vector<double> &out);

/// Density histogram of the normalized sizes over [0, range_max].
Histogram histogram(const CellSample &sample,
                    double bin_width = kDefaultBinWidth,
                    double range_max = kDefaultRangeMax);
Histogram histogram(std::span<const double> values, double bin_width,
                    double range_max);

/// CSV with header bin_left,bin_right,count,density.
void write_histogram_csv(std::ostream &os, const Histogram &h);
std::string histogram_csv(const Histogram &h);

} // namespace kiang

#endif // KIANG_TESSELLATION_HPP
