#ifndef KIANG_RANDOM_HPP
#define KIANG_RANDOM_HPP

#include "kiang/digit_sources.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

namespace kiang {

inline constexpr const char *kRngAlgorithm = "mt19937_64";

struct RngSpec {
  std::uint64_t seed = 0;
  std::string algorithm_label = kRngAlgorithm;
};

/// Seeded generator with platform-independent derived variates. The
/// standard distributions are implementation-defined, so bounded integers
/// and reals are derived here from raw engine words.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_() >> 32); }

  /// Uniform on [lo, hi], by rejection (no modulo bias).
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Unit-mean exponential variate.
  double exponential();

  /// Uniform decimal digit, by rejection from 32-bit words.
  std::uint8_t digit();

private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for the index-th independent sub-stream of a master seed:
/// mix64(master + (index + 1) * 0x9E3779B97F4A7C15).
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index);

DigitStream uniform_digit_stream(const RngSpec &spec, std::size_t n);

/// Draws n_perms distinct permutations of 0..9, then emits n_blocks
/// independently shuffled orderings of that set of permutations.
DigitStream permutation_block_stream(const RngSpec &spec, std::size_t n_perms,
                                     std::size_t n_blocks);

} // namespace kiang

#endif // KIANG_RANDOM_HPP
