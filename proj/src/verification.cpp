#include "binsize/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "binsize/coverage.hpp"

namespace binsize {
namespace {

constexpr std::uint64_t kBlockTrials = 1 << 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rational abs_value(const Rational& x) { return x < Rational(0) ? -x : x; }

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

bool criterion_holds(std::int64_t k, std::int64_t n, const ErrorSpec& spec, const Rational& p) {
  const Rational err = abs_value(Rational(k, n) - p);
  const bool abs_ok = spec.eps_abs && err < *spec.eps_abs;
  const bool rel_ok = spec.eps_rel && err < *spec.eps_rel * p;
  switch (spec.kind) {
    case Criterion::Absolute: return abs_ok;
    case Criterion::Relative: return rel_ok;
    case Criterion::Mixed: return abs_ok || rel_ok;
  }
  return false;
}

GridScanResult grid_min_coverage(std::int64_t n, const ErrorSpec& spec, const ParamInterval& interval,
                                 std::size_t resolution, unsigned threads) {
  if (resolution < 10) throw std::invalid_argument("grid resolution must be >= 10");
  spec.validate();
  check_interval(spec, interval);
  const Rational step = (interval.b - interval.a) / Rational(static_cast<std::int64_t>(resolution - 1));
  std::vector<double> values(resolution);
  parallel_for(resolution, threads, [&](std::size_t i) {
    const Rational p = i + 1 == resolution ? interval.b
                                           : interval.a + step * Rational(static_cast<std::int64_t>(i));
    values[i] = coverage_at(n, spec, p);
  });
  const auto it = std::min_element(values.begin(), values.end());
  const auto idx = static_cast<std::int64_t>(it - values.begin());
  GridScanResult out;
  out.grid_resolution = resolution;
  out.grid_min_coverage = *it;
  out.grid_argmin_p = idx + 1 == static_cast<std::int64_t>(resolution) ? interval.b
                                                                       : interval.a + step * Rational(idx);
  return out;
}

ExactRational exact_small_coverage(std::int64_t n, const ErrorSpec& spec, const Rational& p) {
  if (n < 1 || n > 30) throw std::invalid_argument("exact_small_coverage: need 1 <= n <= 30");
  if (p < Rational(0) || p > Rational(1)) throw std::invalid_argument("p must lie in [0, 1]");
  // p = u/v: sum C(n,k) u^k (v-u)^(n-k) over accepted k, divided by v^n.
  using boost::multiprecision::cpp_int;
  const cpp_int u = p.num();
  const cpp_int v = p.den();
  cpp_int numerator = 0;
  cpp_int coeff = 1;
  for (std::int64_t k = 0; k <= n; ++k) {
    if (criterion_holds(k, n, spec, p)) {
      numerator += coeff * boost::multiprecision::pow(u, static_cast<unsigned>(k)) *
                   boost::multiprecision::pow(cpp_int(v - u), static_cast<unsigned>(n - k));
    }
    coeff = coeff * (n - k) / (k + 1);
  }
  const ExactRational total(numerator, boost::multiprecision::pow(v, static_cast<unsigned>(n)));
  return total;
}

MonteCarloResult monte_carlo_coverage(std::int64_t n, const ErrorSpec& spec, const Rational& p,
                                      std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (trials < 1000) throw std::invalid_argument("monte carlo needs at least 1000 trials");
  if (n < 1) throw std::invalid_argument("sample size must be >= 1");
  if (p < Rational(0) || p > Rational(1)) throw std::invalid_argument("p must lie in [0, 1]");
  spec.validate();

  std::vector<char> inside(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) inside[static_cast<std::size_t>(k)] = criterion_holds(k, n, spec, p);
  const double pd = p.to_double();

  const std::size_t blocks = static_cast<std::size_t>((trials + kBlockTrials - 1) / kBlockTrials);
  std::vector<std::uint64_t> hits(blocks, 0);
  parallel_for(blocks, threads, [&](std::size_t block) {
    std::mt19937_64 gen(splitmix64(seed ^ splitmix64(block)));
    const std::uint64_t begin = block * kBlockTrials;
    const std::uint64_t end = std::min<std::uint64_t>(trials, begin + kBlockTrials);
    std::uint64_t count = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      std::int64_t successes = 0;
      for (std::int64_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        successes += u < pd;
      }
      count += static_cast<std::uint64_t>(inside[static_cast<std::size_t>(successes)]);
    }
    hits[block] = count;
  });
  std::uint64_t total = 0;
  for (const auto h : hits) total += h;
  MonteCarloResult out;
  out.trials = trials;
  out.seed = seed;
  out.empirical_coverage = static_cast<double>(total) / static_cast<double>(trials);
  const double c = out.empirical_coverage;
  out.std_error = std::sqrt(c * (1 - c) / static_cast<double>(trials));
  return out;
}

}  // namespace binsize
