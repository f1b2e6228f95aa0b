#pragma once

#include <cstddef>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "binsize/error_spec.hpp"
#include "binsize/rational.hpp"

namespace binsize {

using ExactRational = boost::multiprecision::cpp_rational;

/// Whether k successes out of n satisfy the criterion at p, decided straight
/// from its definition (|k/n - p| < eps, |k/n - p| < eps p, or either) in
/// exact arithmetic.
bool criterion_holds(std::int64_t k, std::int64_t n, const ErrorSpec& spec, const Rational& p);

struct GridScanResult {
  std::size_t grid_resolution = 0;
  double grid_min_coverage = 1.0;
  Rational grid_argmin_p;
};

/// Coverage minimised over `resolution` equally spaced points of [a, b],
/// endpoints included. A grid can only miss the true minimum, so the result
/// is never below it.
GridScanResult grid_min_coverage(std::int64_t n, const ErrorSpec& spec, const ParamInterval& interval,
                                 std::size_t resolution, unsigned threads = 1);

/// Coverage at p in exact rational arithmetic (n <= 30).
ExactRational exact_small_coverage(std::int64_t n, const ErrorSpec& spec, const Rational& p);

struct MonteCarloResult {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double empirical_coverage = 0.0;
  double std_error = 0.0;
};

/// Simulates `trials` binomial experiments at p and reports the fraction that
/// satisfy the criterion. Draws come from mt19937_64, one stream per block of
/// 65536 trials seeded by splitmix64(seed, block), so results do not depend on
/// the thread count or platform.
MonteCarloResult monte_carlo_coverage(std::int64_t n, const ErrorSpec& spec, const Rational& p,
                                      std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

}  // namespace binsize
