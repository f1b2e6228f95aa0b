#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "binsize/error_spec.hpp"
#include "binsize/rational.hpp"

namespace binsize {

enum class Origin { EndpointA, EndpointB, PlusGrid, MinusGrid, RelLowGrid, RelHighGrid, Crossover };

std::string_view to_string(Origin o);

/// A value of p at which the minimum coverage over [a, b] can be attained.
///
/// Grid points are identified by (origin, ell, n); `p` is always the value
/// produced by candidate_value() for that triple:
///   PlusGrid    ell/n + eps_a        MinusGrid   ell/n - eps_a
///   RelLowGrid  ell/(n(1 - eps_r))   RelHighGrid ell/(n(1 + eps_r))
/// Endpoints and the crossover eps_a/eps_r carry no index.
struct CandidatePoint {
  Rational p;
  Origin origin = Origin::EndpointA;
  std::optional<std::int64_t> ell;
  std::int64_t n = 0;
};

/// Inclusive range of grid indices; empty when first > last.
struct IndexRange {
  std::int64_t first = 0;
  std::int64_t last = -1;

  bool empty() const { return first > last; }
  std::int64_t size() const { return empty() ? 0 : last - first + 1; }
};

/// The exact value of a grid point.
Rational candidate_value(Origin origin, std::int64_t ell, std::int64_t n, const Rational& eps);

/// Indices ell with candidate_value(origin, ell, n, eps) strictly inside (lo, hi),
/// from the bracketing integer inequalities, e.g. for PlusGrid
/// 1 + floor(n(lo - eps)) <= ell <= ceil(n(hi - eps)) - 1.
IndexRange grid_range(Origin origin, std::int64_t n, const Rational& eps, const Rational& lo,
                      const Rational& hi);

/// {a', b'} plus the absolute grids inside (a', b'), where [a', b'] is the
/// interval's reduced image (or [a, b] itself if it was never reduced).
std::vector<CandidatePoint> candidates_abs(std::int64_t n, const Rational& eps,
                                           const ParamInterval& interval);

/// {a, b} plus the relative grids inside (a, b). Requires a > 0.
std::vector<CandidatePoint> candidates_rel(std::int64_t n, const Rational& eps,
                                           const ParamInterval& interval);

/// Mixed criterion. With c = eps_a/eps_r strictly inside (a, b): {a, c, b},
/// the absolute grids inside (a, c) and the relative grids inside (c, b).
/// When c >= b this is candidates_abs on the reduced interval; when c <= a it
/// is candidates_rel.
std::vector<CandidatePoint> candidates_mixed(std::int64_t n, const Rational& eps_abs,
                                             const Rational& eps_rel, const ParamInterval& interval);

/// Which sub-problem a Mixed query collapses to (Mixed itself if c is interior).
Criterion effective_criterion(const ErrorSpec& spec, const ParamInterval& interval);

/// The interval the candidates live in: reduced for the absolute criterion
/// (including a Mixed query whose crossover lies at or beyond b).
ParamInterval working_interval(const ErrorSpec& spec, const ParamInterval& interval);

/// Dispatch on the criterion. The returned points are strictly ascending.
std::vector<CandidatePoint> enumerate_candidates(std::int64_t n, const ErrorSpec& spec,
                                                 const ParamInterval& interval);

/// The candidate of the (n, spec, interval) set nearest to `target` (ties
/// toward 1/2, then toward the smaller p), found without enumerating the set.
/// `target` is in the coordinates of working_interval.
CandidatePoint nearest_candidate(std::int64_t n, const ErrorSpec& spec, const ParamInterval& interval,
                                 const Rational& target);

/// Cardinality bounds: 2n(b-a)+4 (absolute, relative) and 2n(b-a)+7 (mixed).
double candidate_count_bound(std::int64_t n, Criterion kind, const Rational& a, const Rational& b);

}  // namespace binsize
