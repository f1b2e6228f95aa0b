#include "binsize/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace binsize {
namespace {

namespace mp = boost::multiprecision;
using BigFloat = mp::cpp_bin_float_100;

const Rational kOne{1};
const Rational kHalf{1, 2};

constexpr double kGuardFactor = 1e-3;
constexpr std::int64_t kExactIntegerMaxN = 256;
constexpr std::size_t kBlockPerThread = 256;

const Rational& margin_for(const ErrorSpec& spec, Origin origin) {
  if (origin == Origin::PlusGrid || origin == Origin::MinusGrid) return spec.abs_margin();
  return spec.rel_margin();
}

bool origin_allowed(const ErrorSpec& spec, Origin origin) {
  switch (origin) {
    case Origin::PlusGrid:
    case Origin::MinusGrid: return spec.kind != Criterion::Relative;
    case Origin::RelLowGrid:
    case Origin::RelHighGrid: return spec.kind != Criterion::Absolute;
    case Origin::Crossover: return spec.kind == Criterion::Mixed;
    default: return true;
  }
}

int sign_of(const BigFloat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Sum of C(n,k) P^k R^(n-k) over k in [lo, hi] (clipped), exact.
mp::cpp_int integer_mass(std::int64_t n, std::int64_t lo, std::int64_t hi, const mp::cpp_int& P,
                         const mp::cpp_int& R) {
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min(hi, n);
  mp::cpp_int total = 0;
  if (lo > hi) return total;
  mp::cpp_int coeff = 1;  // C(n, k)
  for (std::int64_t k = 0; k <= hi; ++k) {
    if (k >= lo) total += coeff * mp::pow(P, static_cast<unsigned>(k)) * mp::pow(R, static_cast<unsigned>(n - k));
    coeff = coeff * (n - k) / (k + 1);
  }
  return total;
}

BigFloat float_tail_lower(std::int64_t n, std::int64_t last, const BigFloat& p, const BigFloat& q) {
  BigFloat sum = 0;
  if (last < 0) return sum;
  BigFloat t = mp::pow(q, static_cast<int>(n));
  const BigFloat odds = p / q;
  for (std::int64_t k = 0; k <= last; ++k) {
    sum += t;
    t *= BigFloat(n - k) / BigFloat(k + 1) * odds;
  }
  return sum;
}

BigFloat float_tail_upper(std::int64_t n, std::int64_t first, const BigFloat& p, const BigFloat& q) {
  BigFloat sum = 0;
  if (first > n) return sum;
  BigFloat t = mp::pow(p, static_cast<int>(n));
  const BigFloat inv_odds = q / p;
  for (std::int64_t k = n; k >= first; --k) {
    sum += t;
    t *= BigFloat(k) / BigFloat(n - k + 1) * inv_odds;
  }
  return sum;
}

kernel::KernelSum candidate_complement(std::int64_t n, const ErrorSpec& spec, const CandidatePoint& c) {
  return window_complement(candidate_window(n, spec, c));
}

struct Evaluated {
  std::size_t index;
  kernel::KernelSum complement;
  bool violates = false;
  bool escalated = false;
};

// Worse = larger complement; equal complements resolve toward the smaller p.
bool worse_than(const Evaluated& x, const Rational& px, const Evaluated& y, const Rational& py) {
  if (x.complement.value != y.complement.value) return x.complement.value > y.complement.value;
  return px < py;
}

}  // namespace

kernel::Prob prob_of(const Rational& p) { return {p.to_double(), (kOne - p).to_double()}; }

CoverageWindow coverage_window(std::int64_t n, const ErrorSpec& spec, const Rational& p) {
  if (n < 1) throw std::invalid_argument("sample size must be >= 1");
  if (p < Rational(0) || p > kOne) throw std::invalid_argument("p must lie in [0, 1], got " + p.str());
  bool absolute = spec.kind == Criterion::Absolute;
  if (spec.kind == Criterion::Mixed) absolute = p <= spec.crossover();
  if (absolute) {
    const Rational& eps = spec.abs_margin();
    return {n, floor_mul(n, p - eps) + 1, ceil_mul(n, p + eps) - 1, p};
  }
  if (spec.kind == Criterion::Relative && !(p > Rational(0))) {
    throw std::invalid_argument("relative criterion requires p > 0");
  }
  const Rational& eps = spec.rel_margin();
  return {n, floor_mul(n, p * (kOne - eps)) + 1, ceil_mul(n, p * (kOne + eps)) - 1, p};
}

CoverageWindow candidate_window(std::int64_t n, const ErrorSpec& spec, const CandidatePoint& cand) {
  if (cand.n != n) {
    throw InconsistentCandidate("candidate was enumerated for n = " + std::to_string(cand.n) +
                                ", evaluated with n = " + std::to_string(n));
  }
  if (!origin_allowed(spec, cand.origin)) {
    throw InconsistentCandidate("candidate origin " + std::string(to_string(cand.origin)) +
                                " does not belong to the " + std::string(to_string(spec.kind)) +
                                " criterion");
  }
  const bool grid = cand.origin != Origin::EndpointA && cand.origin != Origin::EndpointB &&
                    cand.origin != Origin::Crossover;
  if (!grid) {
    if (cand.origin == Origin::Crossover && cand.p != spec.crossover()) {
      throw InconsistentCandidate("crossover candidate does not equal eps_a/eps_r");
    }
    return coverage_window(n, spec, cand.p);
  }
  if (!cand.ell) throw InconsistentCandidate("grid candidate without index");
  const std::int64_t ell = *cand.ell;
  const Rational& eps = margin_for(spec, cand.origin);
  if (candidate_value(cand.origin, ell, n, eps) != cand.p) {
    throw InconsistentCandidate("candidate p does not match its index for this (n, eps)");
  }
  switch (cand.origin) {
    case Origin::PlusGrid: {
      const std::int64_t m = ceil_mul(2 * n, eps);
      return {n, ell + 1, ell - 1 + m, cand.p};
    }
    case Origin::MinusGrid: {
      const std::int64_t m = ceil_mul(2 * n, eps);
      return {n, ell + 1 - m, ell - 1, cand.p};
    }
    case Origin::RelLowGrid:
      return {n, ell + 1, ceil_mul(ell, (kOne + eps) / (kOne - eps)) - 1, cand.p};
    case Origin::RelHighGrid:
      return {n, floor_mul(ell, (kOne - eps) / (kOne + eps)) + 1, ell - 1, cand.p};
    default:
      break;
  }
  throw InconsistentCandidate("unhandled candidate origin");
}

double coverage_at(std::int64_t n, const ErrorSpec& spec, const Rational& p) {
  const CoverageWindow w = coverage_window(n, spec, p);
  return kernel::sum_range(n, w.g, w.h, prob_of(p)).value;
}

double coverage_at(std::int64_t n, const ErrorSpec& spec, double p) {
  return coverage_at(n, spec, Rational::from_double(p));
}

double coverage_at_candidate(std::int64_t n, const ErrorSpec& spec, const CandidatePoint& cand) {
  const CoverageWindow w = candidate_window(n, spec, cand);
  return kernel::sum_range(n, w.g, w.h, prob_of(w.p)).value;
}

kernel::KernelSum window_complement(const CoverageWindow& w) {
  return kernel::window_complement(w.n, w.g, w.h, prob_of(w.p));
}

kernel::KernelSum complement_at(std::int64_t n, const ErrorSpec& spec, const Rational& p) {
  return window_complement(coverage_window(n, spec, p));
}

int exact_complement_compare(const CoverageWindow& w, const Rational& delta) {
  const std::int64_t n = w.n;
  const std::int64_t lo = std::max<std::int64_t>(w.g, 0);
  const std::int64_t hi = std::min(w.h, n);
  if (n <= kExactIntegerMaxN) {
    const mp::cpp_int P = w.p.num();
    const mp::cpp_int Q = w.p.den();
    const mp::cpp_int R = Q - P;
    mp::cpp_int mass = 0;
    if (lo > hi) {
      mass = mp::pow(Q, static_cast<unsigned>(n));
    } else {
      mass = integer_mass(n, 0, lo - 1, P, R) + integer_mass(n, hi + 1, n, P, R);
    }
    // mass / Q^n  vs  delta.num / delta.den
    const mp::cpp_int lhs = mass * delta.den();
    const mp::cpp_int rhs = mp::cpp_int(delta.num()) * mp::pow(Q, static_cast<unsigned>(n));
    return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
  }
  const BigFloat d = BigFloat(delta.num()) / BigFloat(delta.den());
  if (lo > hi) return sign_of(BigFloat(1) - d);
  if (w.p == Rational(0) || w.p == kOne) {
    const std::int64_t k = w.p == kOne ? n : 0;
    const BigFloat comp = (k >= lo && k <= hi) ? 0 : 1;
    return sign_of(comp - d);
  }
  const BigFloat p = BigFloat(w.p.num()) / BigFloat(w.p.den());
  const BigFloat q = BigFloat((kOne - w.p).num()) / BigFloat((kOne - w.p).den());
  const BigFloat comp = float_tail_lower(n, lo - 1, p, q) + float_tail_upper(n, hi + 1, p, q);
  const BigFloat diff = comp - d;
  if (mp::abs(diff) < BigFloat("1e-90")) return 0;
  return sign_of(diff);
}

bool violates(const CoverageWindow& w, const kernel::KernelSum& complement, const Rational& delta,
              bool* escalated) {
  const double d = delta.to_double();
  const double gap = complement.value - d;
  const double err = complement.error + std::numeric_limits<double>::epsilon() * d;
  if (escalated) *escalated = false;
  if (err < kGuardFactor * std::fabs(gap)) return gap > 0;
  if (escalated) *escalated = true;
  return exact_complement_compare(w, delta) >= 0;
}

CoverageSummary min_coverage(std::int64_t n, const ErrorSpec& spec, const ParamInterval& interval,
                             const MinCoverageOptions& options) {
  const ParamInterval work = working_interval(spec, interval);
  const std::vector<CandidatePoint> cands = enumerate_candidates(n, spec, interval);

  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Rational dx = cands[x].p < kHalf ? kHalf - cands[x].p : cands[x].p - kHalf;
    const Rational dy = cands[y].p < kHalf ? kHalf - cands[y].p : cands[y].p - kHalf;
    return dx < dy;
  });

  auto evaluate = [&](std::size_t idx) {
    Evaluated e{idx, candidate_complement(n, spec, cands[idx])};
    if (options.delta) {
      e.violates = violates(candidate_window(n, spec, cands[idx]), e.complement, *options.delta, &e.escalated);
    }
    return e;
  };

  CoverageSummary s;
  s.n = n;
  s.candidate_count = cands.size();
  std::optional<Evaluated> worst;
  auto original = [&](std::size_t idx) { return work.to_original(cands[idx].p); };

  const unsigned threads = std::max(1u, options.threads);
  const std::size_t block = threads == 1 ? 1 : kBlockPerThread * threads;
  std::vector<Evaluated> results;
  for (std::size_t start = 0; start < order.size(); start += block) {
    const std::size_t stop = std::min(order.size(), start + block);
    results.clear();
    results.resize(stop - start);
    if (threads == 1 || stop - start < 2) {
      for (std::size_t i = start; i < stop; ++i) results[i - start] = evaluate(order[i]);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          for (std::size_t i = start + t; i < stop; i += threads) results[i - start] = evaluate(order[i]);
        });
      }
      for (auto& th : pool) th.join();
    }
    // Deterministic reduction in visit order.
    for (const Evaluated& e : results) {
      ++s.candidates_evaluated;
      if (e.escalated) ++s.escalations;
      if (!worst || worse_than(e, original(e.index), *worst, original(worst->index))) worst = e;
      if (e.violates && !s.violated) {
        s.violated = true;
        s.first_violation = cands[e.index];
      }
    }
    if (s.violated && options.stop_at_violation) {
      s.early_exit = stop < order.size();
      break;
    }
  }

  if (worst) {
    s.complement_of_min = worst->complement.value;
    s.min_coverage = 1.0 - worst->complement.value;
    s.error_budget = worst->complement.error;
    s.argmin = cands[worst->index];
    s.argmin_p = original(worst->index);
  }
  return s;
}

}  // namespace binsize
