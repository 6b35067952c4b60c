#ifndef KIANG_DIGIT_POSITIONS_HPP
#define KIANG_DIGIT_POSITIONS_HPP

#include "kiang/digit_sources.hpp"
#include "kiang/tessellation.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace kiang {

struct DigitPositionConfig {
  int target_digit = 0;
  std::size_t digit_budget = 0; // 0 = whole stream
};

/// Occurrences of one digit, re-based onto a trimmed lattice: the first
/// occurrence sits at site 1 and the lattice ends one site after the last.
struct DigitPositions {
  int digit = 0;
  std::size_t first_occurrence = 0; // 1-based index into the stream
  std::size_t occurrences = 0;
  NucleiSet nuclei;
};

/// 1-based occurrence positions of every digit, built in one pass.
std::array<std::vector<Position>, 10>
all_occurrences(std::span<const std::uint8_t> digits);

/// Trims raw 1-based positions of `digit`. Throws TooFewOccurrencesError for
/// fewer than 3 occurrences.
DigitPositions trim_positions(int digit, const std::vector<Position> &raw);

DigitPositions digit_positions(const DigitStream &stream, int digit,
                               std::size_t digit_budget = 0);

CellSample run_routine2(const DigitStream &stream,
                        const DigitPositionConfig &config);

} // namespace kiang

#endif // KIANG_DIGIT_POSITIONS_HPP
