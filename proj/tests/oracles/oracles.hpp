// Independent reference computations used only by the test suites. Nothing
// here calls into the library's arithmetic.
#ifndef KIANG_TESTS_ORACLES_HPP
#define KIANG_TESTS_ORACLES_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

enum class Number { pi, e, phi };

/// Fractional digits via MPFR at ~n + 40 digits of working precision,
/// rounded toward zero.
std::string mpfr_digits(Number c, std::size_t n, std::size_t extra_digits = 40);

/// Rabinowitz-Wagon spigot; returns the first n fractional digits of pi.
std::string spigot_pi(std::size_t n);

/// Mixed-radix spigot for e; returns the first n fractional digits of e.
std::string spigot_e(std::size_t n);

/// phi digits as the Fibonacci ratio F(k+1)/F(k), with F(k)^2 > 10^(n+20).
std::string fibonacci_phi(std::size_t n);

/// Unit-mean Gamma(shape) draws built from exponentials: shape must be a
/// multiple of 1/2 (the half comes from Z^2 / 2 with Z standard normal).
std::vector<double> gamma_draws(double shape, std::size_t n, std::uint64_t seed);

/// Homogeneous Poisson points on a lattice: cumulative exponential gaps of
/// mean `mean_gap`, rounded, duplicates dropped, clipped to [1, m-1].
std::vector<std::int64_t> poisson_lattice(std::int64_t m, double mean_gap,
                                          std::uint64_t seed);

} // namespace oracle

#endif
