#include "doctest.h"

#include "kiang/errors.hpp"
#include "kiang/gamma_fit.hpp"
#include "kiang/tessellation.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace kiang;

namespace {

std::vector<Position> random_positions(std::mt19937_64 &gen, Position m,
                                       std::size_t n) {
  std::uniform_int_distribution<Position> pick(1, m - 1);
  std::vector<Position> out;
  while (out.size() < n) {
    out.push_back(pick(gen));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

} // namespace

TEST_CASE("worked example") {
  const NucleiSet n(40, {5, 12, 14, 30, 38});
  const auto s = cell_sizes(n);
  CHECK(s.sizes == std::vector<double>{4.5, 9.0, 12.0});
  CHECK(s.mean_size() == doctest::Approx(25.5 / 3));
  CHECK(s.normalized[0] == doctest::Approx(4.5 * 3 / 25.5));
}

TEST_CASE("equally spaced nuclei give unit cells") {
  const NucleiSet n(100, {10, 20, 30, 40});
  const auto s = cell_sizes(n);
  CHECK(s.sizes == std::vector<double>{10.0, 10.0});
  CHECK(s.normalized == std::vector<double>{1.0, 1.0});
}

TEST_CASE("too few nuclei") {
  CHECK_THROWS_AS(cell_sizes(NucleiSet(10, {1, 2})), TooFewNucleiError);
  CHECK_THROWS_AS(cell_sizes(NucleiSet(10, {})), TooFewNucleiError);
  CHECK_NOTHROW(cell_sizes(NucleiSet(10, {1, 2, 3})));
}

TEST_CASE("nuclei validation") {
  CHECK_THROWS_AS(NucleiSet(10, {0, 3}), PreconditionError);
  CHECK_THROWS_AS(NucleiSet(10, {3, 10}), PreconditionError);
  CHECK_THROWS_AS(NucleiSet(10, {3, 3}), PreconditionError);
  CHECK_THROWS_AS(NucleiSet(10, {4, 3}), PreconditionError);
  CHECK(NucleiSet::from_unsorted(10, {4, 3, 9}).positions() ==
        std::vector<Position>{3, 4, 9});
  CHECK(NucleiSet(10, {1, 4, 6}).min_gap() == 2);
}

TEST_CASE("cell-size properties over random nuclei") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Position m = 1000 + static_cast<Position>(gen() % 100000);
    const std::size_t count = 3 + gen() % 200;
    const auto pos = random_positions(gen, m, count);
    const NucleiSet nuclei(m, pos);
    const auto s = cell_sizes(nuclei);
    CAPTURE(trial);

    // Interior cells tile [(p1+p2)/2, (p_{N-1}+p_N)/2].
    const double total = std::accumulate(s.sizes.begin(), s.sizes.end(), 0.0);
    const auto n = pos.size();
    CHECK(total == doctest::Approx(0.5 * static_cast<double>(
                                             pos[n - 1] + pos[n - 2] - pos[1] - pos[0])));

    // Mean of normalized sizes is one.
    const double mean =
        std::accumulate(s.normalized.begin(), s.normalized.end(), 0.0) /
        static_cast<double>(s.size());
    CHECK(std::abs(mean - 1) < 1e-12);

    // Translation invariance.
    const Position shift = static_cast<Position>(gen() % 1000);
    std::vector<Position> moved = pos;
    for (auto &p : moved)
      p += shift;
    CHECK(cell_sizes(NucleiSet(m + shift, moved)).sizes == s.sizes);

    // Scale equivariance: sizes scale, normalized sizes do not.
    const Position k = 2 + static_cast<Position>(gen() % 5);
    std::vector<Position> scaled = pos;
    for (auto &p : scaled)
      p *= k;
    const auto t = cell_sizes(NucleiSet(m * k, scaled));
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(t.sizes[i] == doctest::Approx(s.sizes[i] * static_cast<double>(k)));
      CHECK(t.normalized[i] == doctest::Approx(s.normalized[i]));
    }
  }
}

TEST_CASE("histogram bin edges and counts") {
  const std::vector<double> v{1.0, 1.0};
  const auto h = histogram(v, 0.5, 2.0);
  CHECK(h.counts == std::vector<std::uint64_t>{0, 0, 2, 0});
  CHECK(h.bin_edges == std::vector<double>{0, 0.5, 1.0, 1.5, 2.0});
  CHECK(h.densities[2] == doctest::Approx(2.0));
  CHECK(h.n_total == 2);

  const std::vector<double> w{0.0, 2.0, 2.5};
  const auto g = histogram(w, 0.5, 2.0);
  CHECK(g.counts == std::vector<std::uint64_t>{1, 0, 0, 1});
  CHECK(g.overflow == 1);

  const auto def = histogram(std::vector<double>{0.3}, kDefaultBinWidth,
                             kDefaultRangeMax);
  CHECK(def.bins() == 60);
  // 0.3 is not exactly 3 * 0.1; it must still land in [0.3, 0.4).
  CHECK(def.counts[3] == 1);
  CHECK(histogram_csv(g).rfind("bin_left,bin_right,count,density\n", 0) == 0);

  CHECK_THROWS_AS(histogram(std::vector<double>{}, 0.1, 6.0), EmptySampleError);
  CHECK_THROWS_AS(histogram(std::vector<double>{1.0}, 0.0, 6.0), PreconditionError);
}

TEST_CASE("Gamma(2) draws histogram onto the bin-averaged density") {
  const auto draws = oracle::gamma_draws(2.0, 1'000'000, 99);
  const auto h = histogram(draws, kDefaultBinWidth, kDefaultRangeMax);
  double worst = 0;
  for (std::size_t i = 0; i < h.bins(); ++i) {
    const double expected = (kiang_cdf(h.bin_edges[i + 1]) - kiang_cdf(h.bin_edges[i])) /
                            h.bin_width(i);
    worst = std::max(worst, std::abs(h.densities[i] - expected));
  }
  CHECK(worst < 0.02);
}

TEST_CASE("Poisson lattice cells follow the alpha = 2 law") {
  // Mean gap 1000 keeps lattice rounding negligible.
  const auto pos = oracle::poisson_lattice(100'000'000, 1000.0, 2024);
  const auto s = cell_sizes(NucleiSet(100'000'000, pos));
  REQUIRE(s.size() > 90'000);
  CHECK(ks_distance(s.normalized, kiang_cdf) < 0.01);
}
