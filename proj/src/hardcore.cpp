#include "kiang/hardcore.hpp"

#include "kiang/errors.hpp"
#include "kiang/gamma_fit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace kiang {

NucleiSet place_hardcore(Position m, std::size_t n_target, Position l_star,
                         Rng &rng) {
  if (m < 2 || l_star < 0)
    throw PreconditionError("place_hardcore: need m >= 2 and l_star >= 0");
  if (static_cast<double>(n_target) * static_cast<double>(l_star + 1) >=
      static_cast<double>(m))
    throw PreconditionError("place_hardcore: n_target * (l_star + 1) must be "
                            "below the lattice length");

  const Position exclusion = std::max<Position>(l_star, 1);
  const std::size_t max_attempts = 10'000 * std::max<std::size_t>(n_target, 1);
  std::set<Position> accepted;
  std::size_t attempts = 0;
  while (accepted.size() < n_target) {
    if (++attempts > max_attempts)
      throw SaturationError("hard-core placement saturated after " +
                            std::to_string(accepted.size()) + " of " +
                            std::to_string(n_target) + " nuclei (l* = " +
                            std::to_string(l_star) + ")");
    const auto p = static_cast<Position>(
        rng.uniform_int(1, static_cast<std::uint64_t>(m - 1)));
    auto next = accepted.lower_bound(p);
    if (next != accepted.end() && *next - p < exclusion)
      continue;
    if (next != accepted.begin() && p - *std::prev(next) < exclusion)
      continue;
    accepted.insert(next, p);
  }
  return NucleiSet(m, std::vector<Position>(accepted.begin(), accepted.end()));
}

HardCoreRun run_hardcore(Position m, double rho, Position l_star,
                         std::uint64_t seed) {
  if (!(rho > 0) || !(2 * rho * static_cast<double>(l_star) < 1))
    throw PreconditionError("hard-core run requires rho > 0 and 2 rho l* < 1");
  const auto n_target = static_cast<std::size_t>(
      std::llround(rho * static_cast<double>(m)));
  Rng rng(seed);
  const NucleiSet nuclei = place_hardcore(m, n_target, l_star, rng);
  const CellSample cells = cell_sizes(nuclei);

  HardCoreRun run;
  run.lattice_length = m;
  run.density = rho;
  run.l_star = l_star;
  run.seed = seed;
  run.alpha = fit_alpha_least_squares(histogram(cells)).alpha;
  run.coverage = rho * static_cast<double>(l_star);
  return run;
}

std::vector<SweepPoint> sweep_alpha_vs_lstar(Position m, double rho,
                                             std::span<const Position> l_stars,
                                             std::size_t replicates,
                                             std::uint64_t seed) {
  if (replicates == 0)
    throw PreconditionError("sweep needs at least one replicate");
  std::vector<SweepPoint> out;
  out.reserve(l_stars.size());
  for (std::size_t g = 0; g < l_stars.size(); ++g) {
    const std::uint64_t grid_seed = substream_seed(seed, g);
    std::vector<double> alphas;
    alphas.reserve(replicates);
    for (std::size_t r = 0; r < replicates; ++r)
      alphas.push_back(
          run_hardcore(m, rho, l_stars[g], substream_seed(grid_seed, r)).alpha);

    double mean = 0;
    for (double a : alphas)
      mean += a;
    mean /= static_cast<double>(replicates);
    double ss = 0;
    for (double a : alphas)
      ss += (a - mean) * (a - mean);

    SweepPoint p;
    p.l_star = l_stars[g];
    p.rho_lstar = rho * static_cast<double>(l_stars[g]);
    p.alpha_mean = mean;
    p.alpha_sd =
        replicates > 1 ? std::sqrt(ss / static_cast<double>(replicates - 1)) : 0;
    p.replicates = replicates;
    out.push_back(p);
  }
  return out;
}

QuadraticSensitivity
fit_quadratic_sensitivity(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3)
    throw RankDeficiencyError("quadratic sensitivity fit needs at least 3 "
                              "points, got " +
                              std::to_string(points.size()));
  if (std::none_of(points.begin(), points.end(),
                   [](const auto &p) { return p.first == 0; }))
    throw PreconditionError("quadratic sensitivity fit needs the l* = 0 point");

  // Normal equations for y = a l + b l^2.
  long double s2 = 0, s3 = 0, s4 = 0, t1 = 0, t2 = 0;
  for (const auto &[l, alpha] : points) {
    const long double x = l;
    const long double y = alpha - 2.0L;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
    t1 += x * y;
    t2 += x * x * y;
  }
  const long double det = s2 * s4 - s3 * s3;
  if (!(std::fabs(det) > 1e-12L * s2 * s4))
    throw RankDeficiencyError("l* grid does not determine both coefficients");

  QuadraticSensitivity q;
  q.a = static_cast<double>((t1 * s4 - t2 * s3) / det);
  q.b = static_cast<double>((s2 * t2 - s3 * t1) / det);
  double ss = 0;
  for (const auto &[l, alpha] : points) {
    const double r = (alpha - 2.0) - (q.a * l + q.b * l * l);
    ss += r * r;
  }
  q.residual_rms = std::sqrt(ss / static_cast<double>(points.size()));
  return q;
}

QuadraticSensitivity fit_quadratic_sensitivity(std::span<const SweepPoint> sweep) {
  std::vector<std::pair<double, double>> points;
  points.reserve(sweep.size());
  for (const auto &p : sweep)
    points.emplace_back(static_cast<double>(p.l_star), p.alpha_mean);
  return fit_quadratic_sensitivity(points);
}

} // namespace kiang
