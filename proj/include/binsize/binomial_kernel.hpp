#pragma once

#include <cstdint>

namespace binsize::kernel {

/// A success probability together with its complement. Callers that know p
/// exactly (as a rational) pass q = 1 - p computed exactly, which keeps full
/// relative precision for p close to 1.
struct Prob {
  double p;
  double q;

  static Prob of(double p) { return {p, 1.0 - p}; }
};

/// A probability mass accumulated from binomial terms, with a rigorous bound
/// on its absolute error (term evaluation, accumulation and tail truncation).
struct KernelSum {
  double value = 0.0;
  double error = 0.0;
};

/// B(n, k, p). Zero outside 0 <= k <= n; p in {0, 1} handled exactly.
/// Throws std::invalid_argument if n < 1 or p is outside [0, 1].
double pmf(std::int64_t n, std::int64_t k, double p);
double pmf(std::int64_t n, std::int64_t k, Prob prob);

/// Relative error bound of pmf(n, k, prob) (a property of the evaluation
/// route, not of the particular rounding that happened).
double pmf_relative_error(std::int64_t n, std::int64_t k, Prob prob);

/// S(n, lo, hi, p) = sum of B(n, i, p) for i in [max(lo,0), min(hi,n)].
/// Empty ranges give exactly 0.
KernelSum sum_range(std::int64_t n, std::int64_t lo, std::int64_t hi, double p);
KernelSum sum_range(std::int64_t n, std::int64_t lo, std::int64_t hi, Prob prob);

/// 1 - S(n, lo, hi, p), computed as S(n, 0, lo-1, p) + S(n, hi+1, n, p).
/// Requires 0 <= lo <= hi <= n.
KernelSum complement_sum(std::int64_t n, std::int64_t lo, std::int64_t hi, double p);
KernelSum complement_sum(std::int64_t n, std::int64_t lo, std::int64_t hi, Prob prob);

/// Complement of an arbitrary integer window [lo, hi]: the window is clipped
/// to [0, n], and an empty window has complement exactly 1.
KernelSum window_complement(std::int64_t n, std::int64_t lo, std::int64_t hi, Prob prob);

namespace detail {
/// Stirling-series remainder log(k!) - [(k+1/2)log k - k + log sqrt(2 pi)].
double stirling_error(std::int64_t k);
/// Deviance term x log(x/m) + m - x, evaluated without cancellation.
double deviance(double x, double m);
/// Series form of the deviance for |x - m| < 0.1 (x + m), given d = x - m
/// (possibly more accurate than the rounded difference).
double deviance_series(double x, double m, double d);
}  // namespace detail

}  // namespace binsize::kernel
