#include "kiang/digit_positions.hpp"

#include "kiang/errors.hpp"

namespace kiang {

namespace {

void check_digit(int digit) {
  if (digit < 0 || digit > 9)
    throw PreconditionError("target digit must be in 0..9, got " +
                            std::to_string(digit));
}

std::span<const std::uint8_t> budgeted(const DigitStream &stream,
                                       std::size_t budget) {
  return budget == 0 ? stream.view() : stream.prefix(budget);
}

} // namespace

std::array<std::vector<Position>, 10>
all_occurrences(std::span<const std::uint8_t> digits) {
  std::array<std::vector<Position>, 10> out;
  for (auto &v : out)
    v.reserve(digits.size() / 10 + 16);
  for (std::size_t i = 0; i < digits.size(); ++i)
    out[digits[i]].push_back(static_cast<Position>(i + 1));
  return out;
}

DigitPositions trim_positions(int digit, const std::vector<Position> &raw) {
  check_digit(digit);
  if (raw.size() < 3)
    throw TooFewOccurrencesError(
        "digit " + std::to_string(digit) + " occurs " +
        std::to_string(raw.size()) + " time(s); at least 3 are needed");

  const Position first = raw.front();
  std::vector<Position> rebased(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    rebased[i] = raw[i] - first + 1;

  DigitPositions out;
  out.digit = digit;
  out.first_occurrence = static_cast<std::size_t>(first);
  out.occurrences = raw.size();
  out.nuclei = NucleiSet(raw.back() - first + 2, std::move(rebased));
  return out;
}

DigitPositions digit_positions(const DigitStream &stream, int digit,
                               std::size_t digit_budget) {
  check_digit(digit);
  const auto digits = budgeted(stream, digit_budget);
  std::vector<Position> raw;
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits[i] == digit)
      raw.push_back(static_cast<Position>(i + 1));
  return trim_positions(digit, raw);
}

CellSample run_routine2(const DigitStream &stream,
                        const DigitPositionConfig &config) {
  return cell_sizes(
      digit_positions(stream, config.target_digit, config.digit_budget)
          .nuclei);
}

} // namespace kiang
