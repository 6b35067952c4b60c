#include "kiang/random.hpp"

#include "kiang/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace kiang {

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo)
    throw PreconditionError("uniform_int: empty range");
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max())
    return next_u64();
  const std::uint64_t range = span + 1;
  // Largest multiple of range representable in 64 bits.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      (std::numeric_limits<std::uint64_t>::max() % range + 1) % range;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x > limit);
  return lo + x % range;
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::exponential() { return -std::log1p(-uniform01()); }

std::uint8_t Rng::digit() {
  constexpr std::uint32_t kLimit = 4294967290u; // 10 * floor(2^32 / 10)
  std::uint32_t x;
  do {
    x = next_u32();
  } while (x >= kLimit);
  return static_cast<std::uint8_t>(x % 10);
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + (index + 1) * 0x9E3779B97F4A7C15ull);
}

DigitStream uniform_digit_stream(const RngSpec &spec, std::size_t n) {
  if (n == 0)
    throw PreconditionError("uniform_digit_stream: n must be at least 1");
  Rng rng(spec.seed);
  DigitStream out;
  out.source_label = "uniform(" + spec.algorithm_label +
                     ",seed=" + std::to_string(spec.seed) + ")";
  out.digits.resize(n);
  for (auto &d : out.digits)
    d = rng.digit();
  return out;
}

namespace {

using Permutation = std::array<std::uint8_t, 10>;

template <typename T> void shuffle(std::span<T> items, Rng &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, i - 1));
    std::swap(items[i - 1], items[j]);
  }
}

std::uint64_t encode(const Permutation &p) {
  std::uint64_t code = 0;
  for (auto d : p)
    code = code * 10 + d;
  return code;
}

} // namespace

DigitStream permutation_block_stream(const RngSpec &spec, std::size_t n_perms,
                                     std::size_t n_blocks) {
  constexpr std::size_t kFactorial10 = 3'628'800;
  if (n_perms == 0 || n_blocks == 0)
    throw PreconditionError(
        "permutation_block_stream: n_perms and n_blocks must be positive");
  if (n_perms > kFactorial10)
    throw PreconditionError("permutation_block_stream: n_perms exceeds 10!");

  Rng rng(spec.seed);
  std::vector<Permutation> perms;
  perms.reserve(n_perms);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(n_perms * 2);

  const std::size_t max_attempts = 64 * n_perms + 1024;
  std::size_t attempts = 0;
  while (perms.size() < n_perms) {
    if (++attempts > max_attempts)
      throw DistinctnessExhaustedError(
          "could not draw " + std::to_string(n_perms) +
          " distinct permutations within " + std::to_string(max_attempts) +
          " attempts");
    Permutation p;
    std::iota(p.begin(), p.end(), std::uint8_t{0});
    shuffle(std::span<std::uint8_t>(p), rng);
    if (seen.insert(encode(p)).second)
      perms.push_back(p);
  }

  DigitStream out;
  out.source_label = "perm-blocks(" + spec.algorithm_label +
                     ",seed=" + std::to_string(spec.seed) +
                     ",n_perms=" + std::to_string(n_perms) +
                     ",n_blocks=" + std::to_string(n_blocks) + ")";
  out.digits.reserve(10 * n_perms * n_blocks);
  std::vector<std::size_t> order(n_perms);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(std::span<std::size_t>(order), rng);
    for (auto idx : order)
      out.digits.insert(out.digits.end(), perms[idx].begin(), perms[idx].end());
  }
  return out;
}

} // namespace kiang
