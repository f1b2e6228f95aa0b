#include "binsize/candidates.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace binsize {
namespace {

const Rational kOne{1};
const Rational kHalf{1, 2};

struct GridFamily {
  Origin origin;
  Rational eps;
  Rational lo;
  Rational hi;
};

void append_grid(std::vector<CandidatePoint>& out, const GridFamily& g, std::int64_t n) {
  const IndexRange r = grid_range(g.origin, n, g.eps, g.lo, g.hi);
  for (std::int64_t ell = r.first; ell <= r.last; ++ell) {
    out.push_back({candidate_value(g.origin, ell, n, g.eps), g.origin, ell, n});
  }
}

// Merges ascending runs into one strictly ascending list. Coinciding grid
// points (e.g. ell/n + eps == ell'/n - eps when 2n*eps is an integer) keep the
// first origin encountered.
std::vector<CandidatePoint> assemble(std::int64_t n, const std::vector<GridFamily>& families,
                                     std::vector<CandidatePoint> fixed) {
  std::vector<CandidatePoint> out = std::move(fixed);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.p < y.p; });
  for (const GridFamily& g : families) {
    std::vector<CandidatePoint> run;
    append_grid(run, g, n);
    std::vector<CandidatePoint> merged;
    merged.reserve(out.size() + run.size());
    std::merge(out.begin(), out.end(), run.begin(), run.end(), std::back_inserter(merged),
               [](const auto& x, const auto& y) { return x.p < y.p; });
    out = std::move(merged);
  }
  out.erase(std::unique(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.p == y.p; }),
            out.end());
  return out;
}

std::vector<GridFamily> abs_families(const Rational& eps, const Rational& lo, const Rational& hi) {
  return {{Origin::PlusGrid, eps, lo, hi}, {Origin::MinusGrid, eps, lo, hi}};
}

std::vector<GridFamily> rel_families(const Rational& eps, const Rational& lo, const Rational& hi) {
  return {{Origin::RelLowGrid, eps, lo, hi}, {Origin::RelHighGrid, eps, lo, hi}};
}

void check_n(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("sample size must be >= 1");
}

// Grid families and fixed points describing the candidate set of a query.
struct CandidateLayout {
  std::vector<GridFamily> families;
  std::vector<CandidatePoint> fixed;
};

CandidateLayout layout(std::int64_t n, const ErrorSpec& spec, const ParamInterval& interval) {
  const ParamInterval work = working_interval(spec, interval);
  const Rational& a = work.a_reduced;
  const Rational& b = work.b_reduced;
  CandidateLayout out;
  out.fixed = {{a, Origin::EndpointA, std::nullopt, n}, {b, Origin::EndpointB, std::nullopt, n}};
  switch (effective_criterion(spec, interval)) {
    case Criterion::Absolute:
      out.families = abs_families(spec.abs_margin(), a, b);
      break;
    case Criterion::Relative:
      out.families = rel_families(spec.rel_margin(), a, b);
      break;
    case Criterion::Mixed: {
      const Rational c = spec.crossover();
      out.fixed.push_back({c, Origin::Crossover, std::nullopt, n});
      out.families = abs_families(spec.abs_margin(), a, c);
      for (auto& f : rel_families(spec.rel_margin(), c, b)) out.families.push_back(f);
      break;
    }
  }
  return out;
}

Rational abs_diff(const Rational& x, const Rational& y) { return x < y ? y - x : x - y; }

}  // namespace

std::string_view to_string(Origin o) {
  switch (o) {
    case Origin::EndpointA: return "endpoint_a";
    case Origin::EndpointB: return "endpoint_b";
    case Origin::PlusGrid: return "plus_grid";
    case Origin::MinusGrid: return "minus_grid";
    case Origin::RelLowGrid: return "rel_low_grid";
    case Origin::RelHighGrid: return "rel_high_grid";
    case Origin::Crossover: return "crossover";
  }
  return "?";
}

Rational candidate_value(Origin origin, std::int64_t ell, std::int64_t n, const Rational& eps) {
  switch (origin) {
    case Origin::PlusGrid: return Rational(ell, n) + eps;
    case Origin::MinusGrid: return Rational(ell, n) - eps;
    case Origin::RelLowGrid: return Rational(ell, n) / (kOne - eps);
    case Origin::RelHighGrid: return Rational(ell, n) / (kOne + eps);
    default: throw std::invalid_argument("candidate_value: origin has no grid index");
  }
}

IndexRange grid_range(Origin origin, std::int64_t n, const Rational& eps, const Rational& lo,
                      const Rational& hi) {
  if (!(lo < hi)) return {};
  switch (origin) {
    case Origin::PlusGrid:
      return {1 + floor_mul(n, lo - eps), ceil_mul(n, hi - eps) - 1};
    case Origin::MinusGrid:
      return {1 + floor_mul(n, lo + eps), ceil_mul(n, hi + eps) - 1};
    case Origin::RelLowGrid:
      return {1 + floor_mul(n, lo * (kOne - eps)), ceil_mul(n, hi * (kOne - eps)) - 1};
    case Origin::RelHighGrid:
      return {1 + floor_mul(n, lo * (kOne + eps)), ceil_mul(n, hi * (kOne + eps)) - 1};
    default:
      throw std::invalid_argument("grid_range: origin has no grid index");
  }
}

std::vector<CandidatePoint> candidates_abs(std::int64_t n, const Rational& eps,
                                           const ParamInterval& interval) {
  check_n(n);
  const Rational& a = interval.a_reduced;
  const Rational& b = interval.b_reduced;
  return assemble(n, abs_families(eps, a, b),
                  {{a, Origin::EndpointA, std::nullopt, n}, {b, Origin::EndpointB, std::nullopt, n}});
}

std::vector<CandidatePoint> candidates_rel(std::int64_t n, const Rational& eps,
                                           const ParamInterval& interval) {
  check_n(n);
  if (!(interval.a > Rational(0))) {
    throw std::invalid_argument("relative criterion requires a > 0");
  }
  const Rational& a = interval.a;
  const Rational& b = interval.b;
  return assemble(n, rel_families(eps, a, b),
                  {{a, Origin::EndpointA, std::nullopt, n}, {b, Origin::EndpointB, std::nullopt, n}});
}

std::vector<CandidatePoint> candidates_mixed(std::int64_t n, const Rational& eps_abs,
                                             const Rational& eps_rel, const ParamInterval& interval) {
  const ErrorSpec spec{Criterion::Mixed, eps_abs, eps_rel, Rational(1, 2)};
  return enumerate_candidates(n, spec, interval);
}

Criterion effective_criterion(const ErrorSpec& spec, const ParamInterval& interval) {
  if (spec.kind != Criterion::Mixed) return spec.kind;
  const Rational c = spec.crossover();
  if (c >= interval.b) return Criterion::Absolute;
  if (c <= interval.a) return Criterion::Relative;
  return Criterion::Mixed;
}

ParamInterval working_interval(const ErrorSpec& spec, const ParamInterval& interval) {
  if (effective_criterion(spec, interval) == Criterion::Absolute) return symmetry_reduce(interval);
  ParamInterval out = interval;
  out.a_reduced = interval.a;
  out.b_reduced = interval.b;
  out.reduced = false;
  return out;
}

std::vector<CandidatePoint> enumerate_candidates(std::int64_t n, const ErrorSpec& spec,
                                                 const ParamInterval& interval) {
  check_n(n);
  spec.validate();
  check_interval(spec, interval);
  CandidateLayout l = layout(n, spec, interval);
  return assemble(n, l.families, std::move(l.fixed));
}

CandidatePoint nearest_candidate(std::int64_t n, const ErrorSpec& spec, const ParamInterval& interval,
                                 const Rational& target) {
  check_n(n);
  const CandidateLayout l = layout(n, spec, interval);
  std::vector<CandidatePoint> pool = l.fixed;
  for (const GridFamily& g : l.families) {
    const IndexRange r = grid_range(g.origin, n, g.eps, g.lo, g.hi);
    if (r.empty()) continue;
    std::int64_t guess = 0;
    switch (g.origin) {
      case Origin::PlusGrid: guess = floor_mul(n, target - g.eps); break;
      case Origin::MinusGrid: guess = floor_mul(n, target + g.eps); break;
      case Origin::RelLowGrid: guess = floor_mul(n, target * (kOne - g.eps)); break;
      case Origin::RelHighGrid: guess = floor_mul(n, target * (kOne + g.eps)); break;
      default: break;
    }
    for (std::int64_t ell = guess - 1; ell <= guess + 2; ++ell) {
      const std::int64_t e = std::clamp(ell, r.first, r.last);
      pool.push_back({candidate_value(g.origin, e, n, g.eps), g.origin, e, n});
    }
  }
  auto better = [&](const CandidatePoint& x, const CandidatePoint& y) {
    const Rational dx = abs_diff(x.p, target);
    const Rational dy = abs_diff(y.p, target);
    if (dx != dy) return dx < dy;
    const Rational hx = abs_diff(x.p, kHalf);
    const Rational hy = abs_diff(y.p, kHalf);
    if (hx != hy) return hx < hy;
    return x.p < y.p;
  };
  return *std::min_element(pool.begin(), pool.end(), better);
}

double candidate_count_bound(std::int64_t n, Criterion kind, const Rational& a, const Rational& b) {
  const double width = (b - a).to_double();
  const double extra = kind == Criterion::Mixed ? 7.0 : 4.0;
  return 2.0 * static_cast<double>(n) * width + extra;
}

}  // namespace binsize
