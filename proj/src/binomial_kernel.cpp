#include "binsize/binomial_kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace binsize::kernel {
namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;  // unit roundoff
constexpr double kLn2Pi = 1.837877066409345483560659472811;
constexpr std::int64_t kDirectMaxN = 64;
constexpr int kReanchorEvery = 32;
constexpr double kTruncationRelTol = 1e-17;

// Exact values of the Stirling remainder for k = 0..15.
constexpr std::array<double, 16> kStirlingError = {
    0.0,
    0.0810614667953272582196702,
    0.0413406959554092940938221,
    0.02767792568499833914878929,
    0.02079067210376509311152277,
    0.01664469118982119216319487,
    0.01387612882307074799874573,
    0.01189670994589177009505572,
    0.010411265261972096497478567,
    0.009255462182712732917728637,
    0.008330563433362871256469318,
    0.007573675487951840794972024,
    0.006942840107209529865664152,
    0.006408994188004207068439631,
    0.005951370112758847735624416,
    0.005554733551962801371038690,
};

struct Term {
  double value;
  double rel_error;
};

void check_args(std::int64_t n, Prob prob) {
  if (n < 1) throw std::invalid_argument("binomial: n must be >= 1, got " + std::to_string(n));
  if (!(prob.p >= 0.0 && prob.p <= 1.0) || !(prob.q >= 0.0 && prob.q <= 1.0)) {
    throw std::invalid_argument("binomial: p must lie in [0, 1]");
  }
}

// C(n,k) p^k q^(n-k) with an exact integer coefficient (n <= 64 fits in 128 bits)
// and extended-precision powers.
Term direct_pmf(std::int64_t n, std::int64_t k, Prob prob) {
  const std::int64_t j = std::min(k, n - k);
  unsigned __int128 coeff = 1;
  for (std::int64_t i = 0; i < j; ++i) {
    coeff = coeff * static_cast<unsigned __int128>(n - i) / static_cast<unsigned __int128>(i + 1);
  }
  const long double c = static_cast<long double>(coeff);
  const long double v = c * std::pow(static_cast<long double>(prob.p), static_cast<long double>(k)) *
                        std::pow(static_cast<long double>(prob.q), static_cast<long double>(n - k));
  return {static_cast<double>(v), 4 * kUnit};
}

struct Deviance {
  double value;
  double abs_error;
};

// Deviance of x from the mean n*prob. The product is rounded, but its rounding
// error is recovered exactly with an fma, so x - n*prob is known to one
// rounding; that difference drives the series and its error.
Deviance deviance_with_error(double x, double nd, double prob) {
  const double m = nd * prob;
  const double e = std::fma(nd, prob, -m);  // n*prob == m + e exactly
  if (std::fabs(x - m) < 0.1 * (x + m)) {
    const double d = (x - m) - e;  // x - m is exact (Sterbenz)
    const double v = detail::deviance_series(x, m, d);
    return {v, 8 * kUnit * std::fabs(v) + 4 * kUnit * d * d / (x + m)};
  }
  const double v = detail::deviance(x, m);
  const double scale = std::fabs(x * std::log(x / m)) + m + x;
  return {v, 4 * kUnit * scale};
}

// Saddle-point evaluation: log B = stirlerr terms - deviances - log(2 pi k (n-k)/n)/2.
Term saddle_point_pmf(std::int64_t n, std::int64_t k, Prob prob) {
  const double nd = static_cast<double>(n);
  if (k == 0) {
    if (prob.p < 0.1) {
      const Deviance d = deviance_with_error(nd, nd, prob.q);
      const double lc = -d.value - nd * prob.p;
      return {std::exp(lc), d.abs_error + 4 * kUnit * (std::fabs(lc) + 1)};
    }
    const double lc = nd * std::log(prob.q);
    return {std::exp(lc), 4 * kUnit * (std::fabs(lc) + 1)};
  }
  if (k == n) {
    if (prob.q < 0.1) {
      const Deviance d = deviance_with_error(nd, nd, prob.p);
      const double lc = -d.value - nd * prob.q;
      return {std::exp(lc), d.abs_error + 4 * kUnit * (std::fabs(lc) + 1)};
    }
    const double lc = nd * std::log(prob.p);
    return {std::exp(lc), 4 * kUnit * (std::fabs(lc) + 1)};
  }
  const double kd = static_cast<double>(k);
  const Deviance d1 = deviance_with_error(kd, nd, prob.p);
  const Deviance d2 = deviance_with_error(nd - kd, nd, prob.q);
  const double stirling = detail::stirling_error(n) - detail::stirling_error(k) -
                          detail::stirling_error(n - k);
  const double lc = stirling - d1.value - d2.value;
  const double lf = kLn2Pi + std::log(kd) + std::log1p(-kd / nd);
  const double exponent = lc - 0.5 * lf;
  const double err = d1.abs_error + d2.abs_error +
                     4 * kUnit * (std::fabs(lc) + std::fabs(lf) + std::fabs(exponent) + 4);
  return {std::exp(exponent), err};
}

Term pmf_term(std::int64_t n, std::int64_t k, Prob prob) {
  if (k < 0 || k > n) return {0.0, 0.0};
  if (prob.p == 0.0) return {k == 0 ? 1.0 : 0.0, 0.0};
  if (prob.q == 0.0) return {k == n ? 1.0 : 0.0, 0.0};
  if (n <= kDirectMaxN) return direct_pmf(n, k, prob);
  return saddle_point_pmf(n, k, prob);
}

// Neumaier's compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    ++count_;
  }
  double value() const { return sum_ + comp_; }
  std::int64_t count() const { return count_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::int64_t count_ = 0;
};

// Walks from `start` (the largest term of the range) to `stop` in direction
// `step`, using the pmf ratio recurrence, periodic re-anchoring and geometric
// tail truncation. The start term itself is not added.
void walk(std::int64_t n, std::int64_t start, Term start_term, std::int64_t stop, int step, Prob prob,
          CompensatedSum& acc, double& error) {
  const double odds = prob.p / prob.q;
  const double inv_odds = prob.q / prob.p;
  double t = start_term.value;
  double rel = start_term.rel_error;
  std::int64_t since_anchor = 0;
  const double nd = static_cast<double>(n);
  for (std::int64_t k = start; k != stop;) {
    // ratio of the next term to the current one; monotone along the walk.
    const double kd = static_cast<double>(k);
    const double ratio = step > 0 ? (nd - kd) / (kd + 1.0) * odds : kd / (nd - kd + 1.0) * inv_odds;
    if (t == 0.0) {
      // All further terms are below the smallest subnormal.
      error += static_cast<double>(std::abs(stop - k)) * std::numeric_limits<double>::denorm_min();
      return;
    }
    if (ratio < 1.0) {
      const double tail = t * ratio / (1.0 - ratio);
      if (tail <= kTruncationRelTol * acc.value()) {
        error += tail * (1.0 + 8 * kUnit);
        return;
      }
    }
    k += step;
    if (++since_anchor == kReanchorEvery) {
      const Term fresh = pmf_term(n, k, prob);
      t = fresh.value;
      rel = fresh.rel_error;
      since_anchor = 0;
    } else {
      t *= ratio;
      rel += 4 * kUnit;
    }
    acc.add(t);
    error += rel * t;
  }
}

}  // namespace

namespace detail {

double stirling_error(std::int64_t k) {
  constexpr double s0 = 1.0 / 12;
  constexpr double s1 = 1.0 / 360;
  constexpr double s2 = 1.0 / 1260;
  constexpr double s3 = 1.0 / 1680;
  constexpr double s4 = 1.0 / 1188;
  if (k <= 15) return kStirlingError[static_cast<std::size_t>(k)];
  const double x = static_cast<double>(k);
  const double xx = x * x;
  if (k > 500) return (s0 - s1 / xx) / x;
  if (k > 80) return (s0 - (s1 - s2 / xx) / xx) / x;
  if (k > 35) return (s0 - (s1 - (s2 - s3 / xx) / xx) / xx) / x;
  return (s0 - (s1 - (s2 - (s3 - s4 / xx) / xx) / xx) / xx) / x;
}

double deviance_series(double x, double m, double d) {
  double v = d / (x + m);
  double s = d * v;
  double ej = 2 * x * v;
  v *= v;
  for (int j = 1; j < 1000; ++j) {
    ej *= v;
    const double s1 = s + ej / (2 * j + 1);
    if (s1 == s) return s1;
    s = s1;
  }
  return s;
}

double deviance(double x, double m) {
  if (std::fabs(x - m) < 0.1 * (x + m)) return deviance_series(x, m, x - m);
  return x * std::log(x / m) + m - x;
}

}  // namespace detail

double pmf(std::int64_t n, std::int64_t k, double p) { return pmf(n, k, Prob::of(p)); }

double pmf(std::int64_t n, std::int64_t k, Prob prob) {
  check_args(n, prob);
  return pmf_term(n, k, prob).value;
}

double pmf_relative_error(std::int64_t n, std::int64_t k, Prob prob) {
  check_args(n, prob);
  return pmf_term(n, k, prob).rel_error;
}

KernelSum sum_range(std::int64_t n, std::int64_t lo, std::int64_t hi, double p) {
  return sum_range(n, lo, hi, Prob::of(p));
}

KernelSum sum_range(std::int64_t n, std::int64_t lo, std::int64_t hi, Prob prob) {
  check_args(n, prob);
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min(hi, n);
  if (lo > hi) return {};
  if (prob.p == 0.0) return {lo == 0 ? 1.0 : 0.0, 0.0};
  if (prob.q == 0.0) return {hi == n ? 1.0 : 0.0, 0.0};

  const auto mode = std::clamp(
      static_cast<std::int64_t>(std::floor(static_cast<double>(n + 1) * prob.p)), lo, hi);
  const Term anchor = pmf_term(n, mode, prob);
  if (anchor.value == 0.0) {
    return {0.0, static_cast<double>(hi - lo + 1) * std::numeric_limits<double>::denorm_min()};
  }
  CompensatedSum acc;
  double error = anchor.rel_error * anchor.value;
  acc.add(anchor.value);
  walk(n, mode, anchor, hi, +1, prob, acc, error);
  walk(n, mode, anchor, lo, -1, prob, acc, error);
  const double value = acc.value();
  error += 3 * kUnit * value;
  return {std::min(value, 1.0), error};
}

KernelSum complement_sum(std::int64_t n, std::int64_t lo, std::int64_t hi, double p) {
  return complement_sum(n, lo, hi, Prob::of(p));
}

KernelSum complement_sum(std::int64_t n, std::int64_t lo, std::int64_t hi, Prob prob) {
  check_args(n, prob);
  if (lo < 0 || hi > n || lo > hi) {
    throw std::invalid_argument("complement_sum: need 0 <= lo <= hi <= n");
  }
  return window_complement(n, lo, hi, prob);
}

KernelSum window_complement(std::int64_t n, std::int64_t lo, std::int64_t hi, Prob prob) {
  check_args(n, prob);
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min(hi, n);
  if (lo > hi) return {1.0, 0.0};
  const KernelSum lower = sum_range(n, 0, lo - 1, prob);
  const KernelSum upper = sum_range(n, hi + 1, n, prob);
  const double value = lower.value + upper.value;
  return {std::min(value, 1.0), lower.error + upper.error + 2 * kUnit * value};
}

}  // namespace binsize::kernel
