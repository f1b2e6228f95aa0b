#pragma once

// Reference implementations used only by the tests. Everything here is
// computed in exact rational arithmetic straight from the definitions, with
// no shared code paths with the library beyond the Rational value type.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "binsize/error_spec.hpp"
#include "binsize/rational.hpp"

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Q = boost::multiprecision::cpp_rational;

inline Q to_q(const binsize::Rational& r) { return Q(Int(r.num()), Int(r.den())); }

inline double to_double(const Q& q) { return static_cast<double>(q); }

inline Int binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  Int c = 1;
  for (std::int64_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

inline Int ipow(const Int& base, std::int64_t e) {
  Int out = 1;
  for (std::int64_t i = 0; i < e; ++i) out *= base;
  return out;
}

/// B(n, k, u/v) exactly.
inline Q pmf(std::int64_t n, std::int64_t k, const binsize::Rational& p) {
  if (k < 0 || k > n) return 0;
  const Int u = p.num();
  const Int v = p.den();
  return Q(binomial(n, k) * ipow(u, k) * ipow(v - u, n - k), ipow(v, n));
}

/// Sum of B(n, i, p) over i in [lo, hi] clipped to [0, n].
inline Q sum_range(std::int64_t n, std::int64_t lo, std::int64_t hi, const binsize::Rational& p) {
  Q total = 0;
  for (std::int64_t k = std::max<std::int64_t>(lo, 0); k <= std::min(hi, n); ++k) total += pmf(n, k, p);
  return total;
}

/// Whether |k/n - p| meets the criterion, from the definition.
inline bool holds(std::int64_t k, std::int64_t n, const binsize::ErrorSpec& spec, const binsize::Rational& p) {
  const Q pq = to_q(p);
  Q err = Q(Int(k), Int(n)) - pq;
  if (err < 0) err = -err;
  const bool abs_ok = spec.eps_abs && err < to_q(*spec.eps_abs);
  const bool rel_ok = spec.eps_rel && err < to_q(*spec.eps_rel) * pq;
  switch (spec.kind) {
    case binsize::Criterion::Absolute: return abs_ok;
    case binsize::Criterion::Relative: return rel_ok;
    case binsize::Criterion::Mixed: return abs_ok || rel_ok;
  }
  return false;
}

/// Coverage probability Pr{|K/n - p| meets the criterion}, exactly.
inline Q coverage(std::int64_t n, const binsize::ErrorSpec& spec, const binsize::Rational& p) {
  Q total = 0;
  for (std::int64_t k = 0; k <= n; ++k) {
    if (holds(k, n, spec, p)) total += pmf(n, k, p);
  }
  return total;
}

/// Accepted k form a contiguous run; returns it as [g, h] (g > h if empty).
inline std::pair<std::int64_t, std::int64_t> window(std::int64_t n, const binsize::ErrorSpec& spec,
                                                    const binsize::Rational& p) {
  std::int64_t g = n + 1, h = -1;
  for (std::int64_t k = 0; k <= n; ++k) {
    if (holds(k, n, spec, p)) {
      g = std::min(g, k);
      h = std::max(h, k);
    }
  }
  return {g, h};
}

inline double relative_error(double approx, const Q& exact) {
  const double e = to_double(exact);
  if (e == 0.0) return approx == 0.0 ? 0.0 : 1.0;
  return std::abs(approx - e) / std::abs(e);
}

}  // namespace oracle
