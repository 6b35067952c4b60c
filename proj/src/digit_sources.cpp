#include "kiang/digit_sources.hpp"

#include "kiang/errors.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace kiang {

namespace {

constexpr std::size_t kDefaultMaxDigits = 200'000'000;

std::size_t guard_digits(std::size_t n) {
  return 16 + static_cast<std::size_t>(
                  std::ceil(std::log10(static_cast<double>(n) + 1.0)));
}

mpz_class power_of_ten(std::size_t exponent) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, exponent);
  return r;
}

// Chudnovsky series, binary splitting over terms [a, b).
struct ChudnovskyTerms {
  mpz_class p, q, t;
};

ChudnovskyTerms chudnovsky_split(unsigned long a, unsigned long b) {
  ChudnovskyTerms r;
  if (b - a == 1) {
    if (a == 0) {
      r.p = 1;
      r.q = 1;
    } else {
      r.p = mpz_class(6 * a - 5) * (2 * a - 1) * (6 * a - 1);
      // 640320^3 / 24
      mpz_class a3 = mpz_class(a) * a * a;
      r.q = a3 * mpz_class("10939058860032000");
    }
    r.t = r.p * (mpz_class("13591409") + mpz_class("545140134") * a);
    if (a & 1u)
      r.t = -r.t;
    return r;
  }
  const unsigned long m = a + (b - a) / 2;
  ChudnovskyTerms left = chudnovsky_split(a, m);
  ChudnovskyTerms right = chudnovsky_split(m, b);
  r.t = right.q * left.t + left.p * right.t;
  r.p = left.p * right.p;
  r.q = left.q * right.q;
  return r;
}

// floor(pi * 10^scale)
mpz_class scaled_pi(std::size_t scale) {
  // Each term contributes ~14.18 decimal digits.
  const auto terms =
      static_cast<unsigned long>(static_cast<double>(scale) / 14.181647 + 2);
  ChudnovskyTerms s = chudnovsky_split(0, terms);
  mpz_class root = mpz_class(10005) * power_of_ten(2 * scale);
  mpz_sqrt(root.get_mpz_t(), root.get_mpz_t());
  mpz_class num = s.q * 426880 * root;
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), s.t.get_mpz_t());
  return out;
}

// Sum over k in (a, b] of a!/k!, as p/q with q = (a+1)...(b).
struct FactorialTerms {
  mpz_class p, q;
};

FactorialTerms factorial_split(unsigned long a, unsigned long b) {
  if (b - a == 1)
    return {mpz_class(1), mpz_class(b)};
  const unsigned long m = a + (b - a) / 2;
  FactorialTerms left = factorial_split(a, m);
  FactorialTerms right = factorial_split(m, b);
  return {left.p * right.q + right.p, left.q * right.q};
}

// floor(e * 10^scale)
mpz_class scaled_e(std::size_t scale) {
  // Smallest K with log10(K!) > scale + 4.
  unsigned long k = 2;
  const double target = (static_cast<double>(scale) + 4.0) * std::log(10.0);
  while (std::lgamma(static_cast<double>(k) + 1.0) <= target)
    k = k < 1024 ? k * 2 : k + k / 8;
  unsigned long lo = k / 2, hi = k;
  while (hi - lo > 1) {
    const unsigned long mid = lo + (hi - lo) / 2;
    if (std::lgamma(static_cast<double>(mid) + 1.0) > target)
      hi = mid;
    else
      lo = mid;
  }
  FactorialTerms s = factorial_split(0, hi);
  mpz_class num = (s.q + s.p) * power_of_ten(scale);
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), s.q.get_mpz_t());
  return out;
}

// floor(phi * 10^scale) up to one unit in the last place.
mpz_class scaled_phi(std::size_t scale) {
  mpz_class ten = power_of_ten(scale);
  mpz_class root = mpz_class(5) * ten * ten;
  mpz_sqrt(root.get_mpz_t(), root.get_mpz_t());
  mpz_class out = (ten + root) / 2;
  return out;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

} // namespace

std::span<const std::uint8_t> DigitStream::prefix(std::size_t n) const {
  if (n > digits.size())
    throw InsufficientDigitsError("requested " + std::to_string(n) +
                                  " digits but stream '" + source_label +
                                  "' holds " + std::to_string(digits.size()));
  return std::span<const std::uint8_t>(digits).first(n);
}

std::string to_string(Constant c) {
  switch (c) {
  case Constant::pi:
    return "pi";
  case Constant::e:
    return "e";
  case Constant::phi:
    return "phi";
  }
  return "unknown";
}

Constant parse_constant(std::string_view name) {
  if (name == "pi")
    return Constant::pi;
  if (name == "e")
    return Constant::e;
  if (name == "phi")
    return Constant::phi;
  throw UsageError("unknown constant '" + std::string(name) +
                   "' (expected pi, e or phi)");
}

std::size_t max_generated_digits() {
  const char *env = std::getenv("KIANG_MAX_DIGITS");
  if (env == nullptr || *env == '\0')
    return kDefaultMaxDigits;
  char *end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw UsageError("KIANG_MAX_DIGITS is not a non-negative integer: " +
                     std::string(env));
  return static_cast<std::size_t>(v);
}

DigitStream generate_digits(Constant c, std::size_t n) {
  return generate_digits(c, n, max_generated_digits());
}

DigitStream generate_digits(Constant c, std::size_t n,
                            std::size_t max_digits) {
  if (n == 0)
    throw PreconditionError("digit count must be at least 1");
  if (n > max_digits)
    throw ResourceLimitError("requested " + std::to_string(n) +
                             " digits exceeds the limit of " +
                             std::to_string(max_digits));

  const std::size_t scale = n + guard_digits(n);
  mpz_class value;
  switch (c) {
  case Constant::pi:
    value = scaled_pi(scale);
    break;
  case Constant::e:
    value = scaled_e(scale);
    break;
  case Constant::phi:
    value = scaled_phi(scale);
    break;
  }

  // All three constants lie in [1, 10), so the decimal string is one
  // integer digit followed by `scale` fractional digits.
  const std::string text = value.get_str(10);
  if (text.size() != scale + 1)
    throw NumericalError("unexpected digit count from " + to_string(c) +
                         " generator");

  DigitStream out;
  out.source_label = to_string(c);
  out.digits.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.digits[i] = static_cast<std::uint8_t>(text[i + 1] - '0');
  return out;
}

DigitFormat parse_digit_format(std::string_view name) {
  if (name == "plain")
    return DigitFormat::plain;
  if (name == "decimal-literal" || name == "decimal_literal")
    return DigitFormat::decimal_literal;
  throw UsageError("unknown digit format '" + std::string(name) +
                   "' (expected plain or decimal-literal)");
}

DigitStream parse_digits(std::string_view text, DigitFormat format,
                         std::string source_label) {
  DigitStream out;
  out.source_label = std::move(source_label);
  out.digits.reserve(text.size());

  std::size_t i = 0;
  if (format == DigitFormat::decimal_literal) {
    while (i < text.size() && is_space(text[i]))
      ++i;
    const std::size_t int_start = i;
    while (i < text.size() && is_digit(text[i]))
      ++i;
    if (i == text.size())
      throw MalformedDigitError(i, '\0');
    if (text[i] != '.' || i == int_start)
      throw MalformedDigitError(i, text[i]);
    ++i;
  }

  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (is_digit(c))
      out.digits.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (!is_space(c))
      throw MalformedDigitError(i, c);
  }
  if (out.digits.empty())
    throw EmptyStreamError("no digits in '" + out.source_label + "'");
  return out;
}

DigitStream ingest_digit_file(const std::filesystem::path &path,
                              DigitFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError(path.string(), "cannot open digit file");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad())
    throw IoError(path.string(), "read failed");
  return parse_digits(text, format, "file:" + path.filename().string());
}

void write_plain_digits(std::ostream &os, std::span<const std::uint8_t> digits,
                        std::size_t line_width) {
  os << to_plain_text(digits, line_width);
}

std::string to_plain_text(std::span<const std::uint8_t> digits,
                          std::size_t line_width) {
  std::string out;
  out.reserve(digits.size() +
              (line_width ? digits.size() / line_width : 0) + 1);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    out.push_back(static_cast<char>('0' + digits[i]));
    if (line_width != 0 && (i + 1) % line_width == 0 && i + 1 < digits.size())
      out.push_back('\n');
  }
  out.push_back('\n');
  return out;
}

} // namespace kiang
