#include "kiang/block_sampler.hpp"

#include <cmath>
#include <unordered_set>

namespace kiang {

std::string to_string(BlockLengths mode) {
  return mode == BlockLengths::drawn ? "drawn" : "fixed";
}

BlockLengths parse_block_lengths(std::string_view name) {
  if (name == "drawn")
    return BlockLengths::drawn;
  if (name == "fixed")
    return BlockLengths::fixed;
  throw UsageError("unknown block-length mode '" + std::string(name) +
                   "' (expected drawn or fixed)");
}

std::size_t BlockSamplerConfig::target_nuclei() const {
  return static_cast<std::size_t>(
      std::llround(density * static_cast<double>(lattice_length)));
}

void BlockSamplerConfig::validate() const {
  if (lattice_length < 4)
    throw PreconditionError("lattice length must be at least 4");
  if (lattice_length > 1'000'000'000'000'000'000LL)
    throw PreconditionError("lattice length must not exceed 10^18");
  if (!(density > 0 && density < 0.5))
    throw PreconditionError("density must lie in (0, 0.5)");
  if (target_nuclei() < 3)
    throw PreconditionError("density * lattice length must round to >= 3");
}

int length_of(std::uint64_t n) {
  int len = 1;
  while (n >= 10) {
    n /= 10;
    ++len;
  }
  return len;
}

Extraction extract_coordinates(std::span<const std::uint8_t> digits,
                               std::size_t cursor, Position lattice_length,
                               std::size_t n_target, const DrawSource &draw) {
  Extraction out;
  std::unordered_set<Position> occupied;
  occupied.reserve(n_target * 2);
  out.accepted_in_order.reserve(n_target);

  while (out.accepted_in_order.size() < n_target) {
    const int len = length_of(draw());
    if (cursor + static_cast<std::size_t>(len) > digits.size())
      throw StreamExhaustedError(
          NucleiSet::from_unsorted(lattice_length, out.accepted_in_order),
          cursor);

    Position value = 0;
    for (int i = 0; i < len; ++i)
      value = value * 10 + digits[cursor + static_cast<std::size_t>(i)];
    cursor += static_cast<std::size_t>(len);

    if (value < 1 || value > lattice_length - 1 ||
        !occupied.insert(value).second) {
      ++out.rejected_blocks;
      continue;
    }
    ++out.accepted_blocks;
    out.accepted_in_order.push_back(value);
  }

  out.nuclei = NucleiSet::from_unsorted(lattice_length, out.accepted_in_order);
  out.cursor = cursor;
  return out;
}

Extraction extract_coordinates(std::span<const std::uint8_t> digits,
                               std::size_t cursor,
                               const BlockSamplerConfig &config, Rng &rng) {
  config.validate();
  const auto top = static_cast<std::uint64_t>(config.lattice_length - 1);
  DrawSource draw;
  if (config.block_lengths == BlockLengths::drawn)
    draw = [&rng, top] { return rng.uniform_int(1, top); };
  else
    draw = [top] { return top; };
  return extract_coordinates(digits, cursor, config.lattice_length,
                             config.target_nuclei(), draw);
}

Routine1Result run_routine1(const DigitStream &stream,
                            const BlockSamplerConfig &config) {
  config.validate();
  const std::size_t budget =
      config.digit_budget == 0 ? stream.count() : config.digit_budget;
  const auto digits = stream.prefix(budget);

  Rng rng(config.seed);
  Routine1Result result;
  std::vector<double> pooled;
  std::size_t cursor = 0;
  for (;;) {
    try {
      Extraction ex = extract_coordinates(digits, cursor, config, rng);
      append_cell_sizes(ex.nuclei, pooled);
      cursor = ex.cursor;
      ++result.realizations;
      result.accepted_blocks += ex.accepted_blocks;
      result.rejected_blocks += ex.rejected_blocks;
    } catch (const StreamExhaustedError &partial) {
      result.digits_discarded = partial.cursor() - cursor;
      break;
    }
  }
  if (result.realizations == 0)
    throw InsufficientDigitsError(
        "budget of " + std::to_string(budget) +
        " digits does not complete a single lattice of " +
        std::to_string(config.target_nuclei()) + " nuclei");

  result.digits_consumed = cursor;
  result.sample = CellSample::from_sizes(std::move(pooled));
  return result;
}

} // namespace kiang
