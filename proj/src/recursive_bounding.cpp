#include "binsize/recursive_bounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "binsize/binomial_kernel.hpp"
#include "binsize/coverage.hpp"

namespace binsize {
namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;

const Rational kZero{0};
const Rational kOne{1};

// A pmf value with its absolute error bound.
struct Bounded {
  double value;
  double error;
};

Bounded pmf_at(std::int64_t n, std::int64_t k, const Rational& p) {
  if (k < 0 || k > n) return {0.0, 0.0};
  const kernel::Prob prob = prob_of(p);
  const double v = kernel::pmf(n, k, prob);
  // prob_of rounds p and q once each; B is Lipschitz in p with relative
  // constant at most n/(pq), which the conversion error contributes.
  const double conv = (prob.p > 0 && prob.q > 0) ? kUnit * static_cast<double>(n) : 0.0;
  return {v, v * (kernel::pmf_relative_error(n, k, prob) + conv + kUnit)};
}

void check_theta(const Rational& theta, const Rational& width) {
  if (theta < kZero || theta + width > kOne || !(width > kZero)) {
    throw std::invalid_argument("need 0 <= theta < theta + width <= 1, got theta = " + theta.str());
  }
}

Bounded under_bounded(std::int64_t n, std::int64_t k, const Rational& theta, const Rational& width) {
  check_theta(theta, width);
  const Bounded x = pmf_at(n, k, theta);
  const Bounded y = pmf_at(n, k, theta + width);
  return x.value <= y.value ? x : y;
}

Bounded over_bounded(std::int64_t n, std::int64_t k, const Rational& theta, const Rational& width) {
  check_theta(theta, width);
  if (k >= 0 && k <= n) {
    const Rational mode(k, n);
    if (mode >= theta && mode <= theta + width) return pmf_at(n, k, mode);
  }
  const Bounded x = pmf_at(n, k, theta);
  const Bounded y = pmf_at(n, k, theta + width);
  return x.value >= y.value ? x : y;
}

struct Direction {
  Origin origin;
  IndexRange range;
};

}  // namespace

double b_under(std::int64_t n, std::int64_t k, const Rational& theta) {
  return b_under(n, k, theta, Rational(1, n));
}

double b_under(std::int64_t n, std::int64_t k, const Rational& theta, const Rational& width) {
  if (n < 1) throw std::invalid_argument("b_under: n must be >= 1");
  return under_bounded(n, k, theta, width).value;
}

double b_over(std::int64_t n, std::int64_t k, const Rational& theta) {
  return b_over(n, k, theta, Rational(1, n));
}

double b_over(std::int64_t n, std::int64_t k, const Rational& theta, const Rational& width) {
  if (n < 1) throw std::invalid_argument("b_over: n must be >= 1");
  return over_bounded(n, k, theta, width).value;
}

DeltaBounds delta_bounds(std::int64_t n, const Rational& theta, std::int64_t r, std::int64_t s) {
  if (n < 3) throw std::invalid_argument("delta_bounds: n must be >= 3");
  const Rational width(1, n);
  check_theta(theta, width);
  if (r > s + 1) return {0.0, 0.0};
  const Rational theta1 = theta + width;

  const Bounded t1 = pmf_at(n - 1, r - 1, theta);
  const Bounded t2 = pmf_at(n, s + 1, theta1);
  const Bounded t3 = pmf_at(n, r - 1, theta);
  const Bounded t4 = pmf_at(n - 1, s, theta);
  const double first_order = t1.value + t2.value - t3.value - t4.value;
  double slack = t1.error + t2.error + t3.error + t4.error;

  // Remainder terms B(n-2, k, zeta) for zeta in [theta, theta + 1/n].
  const Bounded over_a = over_bounded(n - 2, r - 2, theta, width);
  const Bounded over_b = over_bounded(n - 2, s, theta, width);
  const Bounded over_c = over_bounded(n - 2, r - 1, theta, width);
  const Bounded over_d = over_bounded(n - 2, s - 1, theta, width);
  const Bounded under_a = under_bounded(n - 2, r - 2, theta, width);
  const Bounded under_b = under_bounded(n - 2, s, theta, width);
  const Bounded under_c = under_bounded(n - 2, r - 1, theta, width);
  const Bounded under_d = under_bounded(n - 2, s - 1, theta, width);

  const double coeff = static_cast<double>(n - 1) / (2.0 * static_cast<double>(n));
  const double upper_rem = over_a.value + over_b.value - under_c.value - under_d.value;
  const double lower_rem = under_a.value + under_b.value - over_c.value - over_d.value;
  const double rem_slack = over_a.error + over_b.error + under_c.error + under_d.error + under_a.error +
                           under_b.error + over_c.error + over_d.error;
  slack += coeff * rem_slack;

  const double magnitude = std::fabs(t1.value) + std::fabs(t2.value) + std::fabs(t3.value) +
                           std::fabs(t4.value) +
                           coeff * (over_a.value + over_b.value + over_c.value + over_d.value);
  slack += 16 * kUnit * magnitude;

  DeltaBounds out;
  out.lower = first_order + coeff * lower_rem - slack;
  out.upper = first_order + coeff * upper_rem + slack;
  return out;
}

SweepResult sweep_with_bounds(std::int64_t n, const ErrorSpec& spec, const ParamInterval& interval,
                              const Rational& delta, const SweepOptions& options) {
  spec.validate();
  check_interval(spec, interval);
  if (effective_criterion(spec, interval) != Criterion::Absolute) {
    throw std::invalid_argument("sweep_with_bounds: only the absolute criterion has bound recursions");
  }
  if (n < 3) throw std::invalid_argument("sweep_with_bounds: n must be >= 3");
  const ParamInterval work = working_interval(spec, interval);
  const Rational& eps = spec.abs_margin();
  const std::int64_t m = ceil_mul(2 * n, eps);
  const double delta_d = delta.to_double();
  const double pass_below = delta_d * (1 - 4 * kUnit);
  const double fail_from = delta_d * (1 + 4 * kUnit);

  SweepResult result;
  auto exact = [&](const CandidatePoint& c, kernel::KernelSum& comp) {
    const CoverageWindow w = candidate_window(n, spec, c);
    comp = window_complement(w);
    ++result.stats.exact_evaluations;
    bool escalated = false;
    const bool bad = violates(w, comp, delta, &escalated);
    if (escalated) ++result.stats.escalations;
    return bad;
  };
  auto fail = [&](const CandidatePoint& c, double comp) {
    result.passes = false;
    result.witness = c;
    result.witness_complement = comp;
    return result;
  };

  for (const CandidatePoint& end :
       {CandidatePoint{work.b_reduced, Origin::EndpointB, std::nullopt, n},
        CandidatePoint{work.a_reduced, Origin::EndpointA, std::nullopt, n}}) {
    ++result.stats.candidates;
    kernel::KernelSum comp;
    if (exact(end, comp)) return fail(end, comp.value);
  }

  const Direction directions[] = {
      {Origin::PlusGrid, grid_range(Origin::PlusGrid, n, eps, work.a_reduced, work.b_reduced)},
      {Origin::MinusGrid, grid_range(Origin::MinusGrid, n, eps, work.a_reduced, work.b_reduced)},
  };
  for (const Direction& dir : directions) {
    if (dir.range.empty()) continue;
    BoundState state;
    double carried_error = 0.0;  // error of the last exact evaluation
    for (std::int64_t ell = dir.range.last; ell >= dir.range.first; --ell) {
      ++result.stats.candidates;
      const CandidatePoint cand{candidate_value(dir.origin, ell, n, eps), dir.origin, ell, n};
      const bool first = ell == dir.range.last;
      if (!first) {
        // Propagate from state.ell = ell + 1 to ell.
        const std::int64_t src = ell + 1;
        BoundState next;
        next.ell = ell;
        if (dir.origin == Origin::PlusGrid) {
          next.theta = Rational(src - 1, n) + eps;
          next.r = src + 1;
          next.s = src - 2 + m;
        } else {
          next.theta = Rational(src - 1, n) - eps;
          next.r = src + 1 - m;
          next.s = src - 2;
        }
        const DeltaBounds d = delta_bounds(n, next.theta, next.r, next.s);
        next.lower = state.lower - carried_error + d.lower;
        next.upper = state.upper + carried_error + d.upper;
        if (next.lower > next.upper) std::swap(next.lower, next.upper);
        next.steps_since_exact = state.steps_since_exact + 1;
        carried_error = 0.0;
        state = next;
        result.stats.max_steps_since_exact =
            std::max(result.stats.max_steps_since_exact, state.steps_since_exact);

        if (options.shadow) {
          const kernel::KernelSum truth = window_complement(candidate_window(n, spec, cand));
          ++result.stats.shadow_checks;
          if (truth.value < state.lower - truth.error || truth.value > state.upper + truth.error) {
            ++result.stats.shadow_violations;
          }
        }

        const bool too_wide = state.upper - state.lower > options.restart_width_fraction * delta_d;
        const bool too_long = state.steps_since_exact >= options.max_steps;
        if (!too_wide && !too_long) {
          if (state.upper < pass_below) {
            ++result.stats.bounded_passes;
            continue;
          }
          if (state.lower >= fail_from) {
            ++result.stats.bounded_failures;
            return fail(cand, state.lower);
          }
        } else {
          ++result.stats.restarts;
        }
      }
      kernel::KernelSum comp;
      if (exact(cand, comp)) return fail(cand, comp.value);
      state.ell = ell;
      state.lower = state.upper = comp.value;
      state.steps_since_exact = 0;
      carried_error = comp.error;
    }
  }
  return result;
}

}  // namespace binsize
