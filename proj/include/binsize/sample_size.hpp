#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "binsize/candidates.hpp"
#include "binsize/coverage.hpp"
#include "binsize/error_spec.hpp"
#include "binsize/rational.hpp"

namespace binsize {

/// Evidence that sample size n is insufficient: a p (working coordinates)
/// whose coverage is <= 1 - delta.
struct FailureWitness {
  std::int64_t n = 0;
  CandidatePoint point;
  Rational p;  // original coordinates
  double coverage = 0.0;
  bool from_full_sweep = false;
};

struct SearchOptions {
  std::int64_t max_n = 10'000'000;
  std::int64_t start_n = 2;
  /// Prove most n insufficient from a single carried-over witness.
  bool witness_fast_path = true;
  /// Absolute criterion: use the bound recursion for full sweeps.
  bool use_bounds = true;
  unsigned threads = 1;
  /// Keep a witness for every n below the answer.
  bool keep_proof = true;
};

struct SampleSizeReport {
  ErrorSpec spec;
  ParamInterval interval;
  std::int64_t n_min = 0;
  CoverageSummary summary_at_n;
  std::optional<FailureWitness> fail_witness_at_n_minus_1;
  std::int64_t baseline_normal = 0;
  std::int64_t baseline_chernoff = 0;
  std::int64_t baseline_bernoulli = 0;
  std::size_t ns_scanned = 0;
  std::size_t full_sweeps = 0;
  std::size_t witness_rejections = 0;
  double runtime_ms = 0.0;
  /// One witness per n in [start_n, n_min) when keep_proof is set.
  std::vector<FailureWitness> proof;
};

/// Smallest n >= start_n with min coverage over [a, b] > 1 - delta, scanning
/// upward one n at a time; every smaller n is shown to fail by a witness.
/// Throws ResourceLimit when max_n is exceeded.
SampleSizeReport min_sample_size(const ErrorSpec& spec, const ParamInterval& interval,
                                 const SearchOptions& options = {});

/// Upper delta/2 quantile of the standard normal.
double normal_upper_quantile(double alpha);

/// ceil(Z_{delta/2}^2 / (4 eps^2)).
std::int64_t baseline_normal(double eps, double delta);
/// Smallest n with n > ln(2/delta) / (2 eps^2).
std::int64_t baseline_chernoff(double eps, double delta);
/// Smallest n with n > 1 / (4 eps^2 delta), in exact arithmetic.
std::int64_t baseline_bernoulli(const Rational& eps, const Rational& delta);

/// Absolute margin that implies the query's criterion on [a, b], used for
/// the baselines: eps (absolute), eps_a (mixed), eps_r * a (relative).
Rational baseline_margin(const ErrorSpec& spec, const ParamInterval& interval);

}  // namespace binsize
