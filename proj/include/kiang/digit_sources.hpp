#ifndef KIANG_DIGIT_SOURCES_HPP
#define KIANG_DIGIT_SOURCES_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kiang {

/// Fractional base-10 digits of some number, one digit per element. The
/// integer part is never stored.
struct DigitStream {
  std::string source_label;
  std::vector<std::uint8_t> digits;

  std::size_t count() const noexcept { return digits.size(); }
  std::span<const std::uint8_t> view() const noexcept { return digits; }
  std::span<const std::uint8_t> prefix(std::size_t n) const;
};

enum class Constant { pi, e, phi };

std::string to_string(Constant c);
Constant parse_constant(std::string_view name);

/// Upper bound on generated digits. Read from KIANG_MAX_DIGITS when set,
/// otherwise 200'000'000.
std::size_t max_generated_digits();

/// First n fractional digits of the constant, truncated (not rounded).
/// Throws ResourceLimitError when n exceeds max_generated_digits().
DigitStream generate_digits(Constant c, std::size_t n);
DigitStream generate_digits(Constant c, std::size_t n, std::size_t max_digits);

enum class DigitFormat {
  plain,          // bare digits, whitespace ignored
  decimal_literal // "A.ddd..." with the integer part and dot stripped
};

DigitFormat parse_digit_format(std::string_view name);

DigitStream parse_digits(std::string_view text, DigitFormat format,
                         std::string source_label);
DigitStream ingest_digit_file(const std::filesystem::path &path,
                              DigitFormat format = DigitFormat::plain);

/// Plain format: a contiguous run of digit characters, wrapped every
/// line_width characters (0 disables wrapping), newline terminated.
void write_plain_digits(std::ostream &os, std::span<const std::uint8_t> digits,
                        std::size_t line_width = 80);
std::string to_plain_text(std::span<const std::uint8_t> digits,
                          std::size_t line_width = 80);

} // namespace kiang

#endif // KIANG_DIGIT_SOURCES_HPP
