#ifndef KIANG_HARDCORE_HPP
#define KIANG_HARDCORE_HPP

#include "kiang/random.hpp"
#include "kiang/tessellation.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace kiang {

/// Random sequential placement on [1, m-1] with exclusion distance l_star:
/// a candidate is rejected if it lies closer than l_star to any accepted
/// nucleus (or on one, for l_star = 0). Gives up with SaturationError after
/// 10^4 * n_target attempts.
NucleiSet place_hardcore(Position m, std::size_t n_target, Position l_star,
                         Rng &rng);

struct HardCoreRun {
  Position lattice_length = 0;
  double density = 0;
  Position l_star = 0;
  std::uint64_t seed = 0;
  double alpha = 0; // least-squares fit of the normalized cells
  double coverage = 0; // density * l_star
};

/// One placement, tessellation and least-squares fit.
HardCoreRun run_hardcore(Position m, double rho, Position l_star,
                         std::uint64_t seed);

struct SweepPoint {
  Position l_star = 0;
  double rho_lstar = 0;
  double alpha_mean = 0;
  double alpha_sd = 0;
  std::size_t replicates = 0;
};

/// Replicate r of grid point g uses seed substream_seed(substream_seed(seed,
/// g), r).
std::vector<SweepPoint> sweep_alpha_vs_lstar(Position m, double rho,
                                             std::span<const Position> l_stars,
                                             std::size_t replicates,
                                             std::uint64_t seed);

struct QuadraticSensitivity {
  double a = 0; // linear coefficient
  double b = 0; // quadratic coefficient
  double residual_rms = 0;
};

/// Zero-intercept least squares of (alpha - 2) on (l*, l*^2). Points are
/// (l_star, alpha) pairs; l_star = 0 must be among them.
QuadraticSensitivity
fit_quadratic_sensitivity(std::span<const std::pair<double, double>> points);
QuadraticSensitivity fit_quadratic_sensitivity(std::span<const SweepPoint> sweep);

} // namespace kiang

#endif // KIANG_HARDCORE_HPP
