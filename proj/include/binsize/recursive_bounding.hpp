#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "binsize/candidates.hpp"
#include "binsize/error_spec.hpp"
#include "binsize/rational.hpp"

namespace binsize {

/// Minimum of B(n, k, .) over [theta, theta + width]; width defaults to 1/n.
/// The pmf is unimodal in p, so the minimum sits at an endpoint.
double b_under(std::int64_t n, std::int64_t k, const Rational& theta);
double b_under(std::int64_t n, std::int64_t k, const Rational& theta, const Rational& width);

/// Maximum of B(n, k, .) over [theta, theta + width]: the mode value
/// B(n, k, k/n) when k/n lies in the interval, else the larger endpoint.
double b_over(std::int64_t n, std::int64_t k, const Rational& theta);
double b_over(std::int64_t n, std::int64_t k, const Rational& theta, const Rational& width);

struct DeltaBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Bounds on Delta(n, theta, r, s) = S(n, r, s+1, theta+1/n) - S(n, r-1, s, theta)
/// from a second-order Taylor expansion whose remainder terms B(n-2, ., zeta),
/// zeta in (theta, theta+1/n), are bracketed by b_under/b_over. The returned
/// interval is widened by the floating-point error of its own evaluation.
/// For r > s+1 both sums are empty and the result is exactly zero.
/// Requires n >= 3 and 0 <= theta < theta + 1/n <= 1.
DeltaBounds delta_bounds(std::int64_t n, const Rational& theta, std::int64_t r, std::int64_t s);

/// Recursion state for one grid direction; complements are 1 - c(ell).
struct BoundState {
  std::int64_t ell = 0;
  double lower = 0.0;
  double upper = 0.0;
  Rational theta;
  std::int64_t r = 0;
  std::int64_t s = 0;
  std::size_t steps_since_exact = 0;
};

struct SweepOptions {
  /// Restart with an exact evaluation once upper - lower exceeds this
  /// fraction of delta...
  double restart_width_fraction = 0.1;
  /// ...or after this many propagated steps.
  std::size_t max_steps = 64;
  /// Also evaluate every propagated candidate exactly and check that it lies
  /// inside its propagated bounds.
  bool shadow = false;
};

struct SweepStats {
  std::size_t candidates = 0;
  std::size_t exact_evaluations = 0;
  std::size_t bounded_passes = 0;
  std::size_t bounded_failures = 0;
  std::size_t restarts = 0;
  std::size_t max_steps_since_exact = 0;
  std::size_t shadow_checks = 0;
  std::size_t shadow_violations = 0;
  std::size_t escalations = 0;
};

struct SweepResult {
  bool passes = true;
  std::optional<CandidatePoint> witness;  // first failing candidate (working coordinates)
  double witness_complement = 0.0;        // exact complement if evaluated, else lower bound
  SweepStats stats;
};

/// Decides whether min coverage over [a, b] exceeds 1 - delta for the absolute
/// criterion, walking each grid downward from its top index and propagating
/// bounds on 1 - c(ell - 1) from those on 1 - c(ell). A candidate is settled
/// by its bounds when upper < delta (passes) or lower >= delta (fails);
/// otherwise it is evaluated exactly and the recursion restarts there.
/// The decision always equals that of min_coverage.
SweepResult sweep_with_bounds(std::int64_t n, const ErrorSpec& spec, const ParamInterval& interval,
                              const Rational& delta, const SweepOptions& options = {});

}  // namespace binsize
