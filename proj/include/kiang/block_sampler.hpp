#ifndef KIANG_BLOCK_SAMPLER_HPP
#define KIANG_BLOCK_SAMPLER_HPP

#include "kiang/digit_sources.hpp"
#include "kiang/errors.hpp"
#include "kiang/random.hpp"
#include "kiang/tessellation.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace kiang {

enum class BlockLengths {
  drawn, // l(n_k) with n_k uniform on {1, ..., M-1}
  fixed  // always l(M-1); diagnostic variant, spatially homogeneous
};

std::string to_string(BlockLengths mode);
BlockLengths parse_block_lengths(std::string_view name);

struct BlockSamplerConfig {
  Position lattice_length = 1'000'000;
  double density = 1e-3;
  std::uint64_t seed = 0;
  std::size_t digit_budget = 0;
  BlockLengths block_lengths = BlockLengths::drawn;

  /// N0 = round(density * lattice_length).
  std::size_t target_nuclei() const;

  /// Throws PreconditionError unless 0 < density < 0.5 and N0 >= 3.
  void validate() const;
};

/// Number of decimal digits of n (n >= 1).
int length_of(std::uint64_t n);

struct Extraction {
  NucleiSet nuclei;
  std::vector<Position> accepted_in_order;
  std::size_t cursor = 0;          // index of the next unread digit
  std::size_t accepted_blocks = 0;
  std::size_t rejected_blocks = 0; // zero, out of range or already occupied
};

/// Raised when the digits run out before N0 nuclei were placed. Carries the
/// nuclei placed so far.
class StreamExhaustedError : public DataError {
public:
  StreamExhaustedError(NucleiSet partial, std::size_t cursor)
      : DataError("digit stream exhausted after placing " +
                  std::to_string(partial.size()) + " nuclei"),
        partial_(std::move(partial)), cursor_(cursor) {}

  const NucleiSet &partial() const noexcept { return partial_; }
  std::size_t cursor() const noexcept { return cursor_; }

private:
  NucleiSet partial_;
  std::size_t cursor_;
};

/// Source of the integers n_k whose lengths decide block sizes.
using DrawSource = std::function<std::uint64_t()>;

/// Reads successive blocks of l(n_k) digits starting at `cursor` as nucleus
/// coordinates until `n_target` distinct coordinates in [1, M-1] have been
/// accepted. Rejected blocks stay consumed.
Extraction extract_coordinates(std::span<const std::uint8_t> digits,
                               std::size_t cursor, Position lattice_length,
                               std::size_t n_target, const DrawSource &draw);

/// Same, with n_k drawn from `rng` as the config prescribes.
Extraction extract_coordinates(std::span<const std::uint8_t> digits,
                               std::size_t cursor,
                               const BlockSamplerConfig &config, Rng &rng);

struct Routine1Result {
  CellSample sample;
  std::size_t realizations = 0;
  std::size_t digits_consumed = 0;  // by complete realizations
  std::size_t digits_discarded = 0; // read by the incomplete final one
  std::size_t accepted_blocks = 0;
  std::size_t rejected_blocks = 0;
};

/// Fills independent lattices one after another from the first
/// digit_budget digits, pooling the interior cells of every complete
/// realization. A digit_budget of 0 means the whole stream.
Routine1Result run_routine1(const DigitStream &stream,
                            const BlockSamplerConfig &config);

} // namespace kiang

#endif // KIANG_BLOCK_SAMPLER_HPP
