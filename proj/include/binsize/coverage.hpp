#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "binsize/binomial_kernel.hpp"
#include "binsize/candidates.hpp"
#include "binsize/error_spec.hpp"
#include "binsize/rational.hpp"

namespace binsize {

/// The coverage event at p is {g <= K <= h}; g and h are unclipped, so they
/// may fall outside [0, n].
struct CoverageWindow {
  std::int64_t n = 0;
  std::int64_t g = 0;
  std::int64_t h = -1;
  Rational p;
};

/// Window straight from the criterion:
///   Absolute  g = floor(n(p - eps)) + 1,   h = ceil(n(p + eps)) - 1
///   Relative  g = floor(np(1 - eps)) + 1,  h = ceil(np(1 + eps)) - 1
///   Mixed     absolute window for p <= eps_a/eps_r, relative window beyond.
CoverageWindow coverage_window(std::int64_t n, const ErrorSpec& spec, const Rational& p);

/// Window of a candidate point from the closed index forms (e.g. PlusGrid
/// [ell+1, ell-1+ceil(2n eps)]). Throws InconsistentCandidate if the candidate
/// was not produced for this n and spec.
CoverageWindow candidate_window(std::int64_t n, const ErrorSpec& spec, const CandidatePoint& cand);

kernel::Prob prob_of(const Rational& p);

/// Coverage probability S(n, g, h, p) at a single p.
double coverage_at(std::int64_t n, const ErrorSpec& spec, const Rational& p);
double coverage_at(std::int64_t n, const ErrorSpec& spec, double p);
double coverage_at_candidate(std::int64_t n, const ErrorSpec& spec, const CandidatePoint& cand);

/// 1 - coverage, summed directly from the two tails, with its error bound.
kernel::KernelSum complement_at(std::int64_t n, const ErrorSpec& spec, const Rational& p);
kernel::KernelSum window_complement(const CoverageWindow& w);

/// Sign of (1 - S(n, g, h, p)) - delta computed without floating-point
/// summation: exact rationals for n <= 64, 100-digit binary floats beyond.
int exact_complement_compare(const CoverageWindow& w, const Rational& delta);

/// True when coverage <= 1 - delta, i.e. the complement is >= delta.
///
/// The floating complement decides whenever its error bound is below
/// 1e-3 * |complement - delta|; otherwise the comparison is redone on the
/// exact path and `escalated` is set.
bool violates(const CoverageWindow& w, const kernel::KernelSum& complement, const Rational& delta,
              bool* escalated = nullptr);

struct MinCoverageOptions {
  /// When set, candidates are also judged against coverage > 1 - delta.
  std::optional<Rational> delta;
  /// Stop at the first violating candidate (visit order: closest to 1/2 first).
  bool stop_at_violation = false;
  unsigned threads = 1;
};

struct CoverageSummary {
  std::int64_t n = 0;
  double min_coverage = 1.0;
  double complement_of_min = 0.0;
  CandidatePoint argmin;    // member of the candidate set (working coordinates)
  Rational argmin_p;        // the same point in the original interval
  std::size_t candidate_count = 0;
  std::size_t candidates_evaluated = 0;
  std::size_t escalations = 0;
  double error_budget = 0.0;  // error bound of complement_of_min
  bool early_exit = false;
  /// Only meaningful when a delta was supplied.
  bool violated = false;
  std::optional<CandidatePoint> first_violation;
};

/// Exact minimum of the coverage over [a, b] for fixed n, from the candidate set.
CoverageSummary min_coverage(std::int64_t n, const ErrorSpec& spec, const ParamInterval& interval,
                             const MinCoverageOptions& options = {});

}  // namespace binsize
