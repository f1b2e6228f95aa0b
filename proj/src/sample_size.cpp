#include "binsize/sample_size.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "binsize/recursive_bounding.hpp"

namespace binsize {
namespace {

void check_unit_open(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
}

// Acklam's rational approximation of the lower normal quantile (|rel err| < 1.2e-9).
double acklam_lower_quantile(double prob) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double low = 0.02425;
  if (prob < low) {
    const double q = std::sqrt(-2 * std::log(prob));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (prob <= 1 - low) {
    const double q = prob - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  }
  const double q = std::sqrt(-2 * std::log1p(-prob));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
}

FailureWitness make_witness(std::int64_t n, const ErrorSpec& spec, const ParamInterval& work,
                            const CandidatePoint& c, bool full) {
  const kernel::KernelSum comp = window_complement(candidate_window(n, spec, c));
  return {n, c, work.to_original(c.p), 1.0 - comp.value, full};
}

}  // namespace

double normal_upper_quantile(double alpha) {
  check_unit_open(alpha, "alpha");
  double z = -acklam_lower_quantile(alpha);
  // Newton on 0.5 erfc(z / sqrt 2) = alpha.
  for (int i = 0; i < 3; ++i) {
    const double f = 0.5 * std::erfc(z / std::numbers::sqrt2) - alpha;
    const double density = std::exp(-0.5 * z * z) / std::sqrt(2 * std::numbers::pi);
    z += f / density;
  }
  return z;
}

std::int64_t baseline_normal(double eps, double delta) {
  check_unit_open(eps, "eps");
  check_unit_open(delta, "delta");
  const double z = normal_upper_quantile(delta / 2);
  return static_cast<std::int64_t>(std::ceil(z * z / (4 * eps * eps)));
}

std::int64_t baseline_chernoff(double eps, double delta) {
  check_unit_open(eps, "eps");
  check_unit_open(delta, "delta");
  return static_cast<std::int64_t>(std::floor(std::log(2 / delta) / (2 * eps * eps))) + 1;
}

std::int64_t baseline_bernoulli(const Rational& eps, const Rational& delta) {
  check_unit_open(eps.to_double(), "eps");
  check_unit_open(delta.to_double(), "delta");
  const Rational bound = Rational(1) / (Rational(4) * eps * eps * delta);
  return bound.floor() + 1;
}

Rational baseline_margin(const ErrorSpec& spec, const ParamInterval& interval) {
  switch (spec.kind) {
    case Criterion::Absolute: return spec.abs_margin();
    case Criterion::Mixed: return spec.abs_margin();
    case Criterion::Relative: return spec.rel_margin() * interval.a;
  }
  return spec.abs_margin();
}

SampleSizeReport min_sample_size(const ErrorSpec& spec, const ParamInterval& interval,
                                 const SearchOptions& options) {
  spec.validate();
  check_interval(spec, interval);
  if (options.start_n < 1) throw std::invalid_argument("start_n must be >= 1");
  const auto started = std::chrono::steady_clock::now();
  const ParamInterval work = working_interval(spec, interval);
  const bool bounded = options.use_bounds && effective_criterion(spec, interval) == Criterion::Absolute;

  SampleSizeReport report;
  report.spec = spec;
  report.interval = interval;
  const Rational margin = baseline_margin(spec, interval);
  report.baseline_normal = baseline_normal(margin.to_double(), spec.delta.to_double());
  report.baseline_chernoff = baseline_chernoff(margin.to_double(), spec.delta.to_double());
  report.baseline_bernoulli = baseline_bernoulli(margin, spec.delta);

  std::optional<Rational> witness_p;
  std::optional<FailureWitness> last_failure;
  auto record = [&](FailureWitness w) {
    witness_p = w.point.p;
    if (options.keep_proof) report.proof.push_back(w);
    last_failure = std::move(w);
  };

  for (std::int64_t n = options.start_n; n <= options.max_n; ++n) {
    ++report.ns_scanned;
    if (witness_p && options.witness_fast_path) {
      const CandidatePoint c = nearest_candidate(n, spec, interval, *witness_p);
      const CoverageWindow w = candidate_window(n, spec, c);
      if (violates(w, window_complement(w), spec.delta)) {
        ++report.witness_rejections;
        record(make_witness(n, spec, work, c, false));
        continue;
      }
    }
    ++report.full_sweeps;
    if (bounded && n >= 3) {
      const SweepResult sweep = sweep_with_bounds(n, spec, interval, spec.delta);
      if (!sweep.passes) {
        record(make_witness(n, spec, work, *sweep.witness, true));
        continue;
      }
    } else {
      const CoverageSummary s =
          min_coverage(n, spec, interval, {spec.delta, /*stop_at_violation=*/true, options.threads});
      if (s.violated) {
        record(make_witness(n, spec, work, *s.first_violation, true));
        continue;
      }
    }
    report.n_min = n;
    report.summary_at_n = min_coverage(n, spec, interval, {spec.delta, false, options.threads});
    if (report.summary_at_n.violated) {
      throw std::logic_error("bounded sweep and full sweep disagree at n = " + std::to_string(n));
    }
    if (last_failure && last_failure->n == n - 1) report.fail_witness_at_n_minus_1 = last_failure;
    report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return report;
  }
  throw ResourceLimit("no sample size up to max_n = " + std::to_string(options.max_n) +
                      " satisfies the requirement");
}

}  // namespace binsize
