#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "binsize/binomial_kernel.hpp"
#include "binsize/coverage.hpp"
#include "binsize/recursive_bounding.hpp"

using namespace binsize;
using Catch::Matchers::WithinRel;

TEST_CASE("pmf bounds over a cell") {
  CHECK_THAT(b_under(10, 0, Rational(1, 10)), WithinRel(std::pow(0.8, 10), 1e-14));
  CHECK_THAT(b_under(10, 10, Rational(8, 10)), WithinRel(std::pow(0.8, 10), 1e-14));
  const double lo = std::min(kernel::pmf(4, 2, 0.45), kernel::pmf(4, 2, 0.7));
  CHECK_THAT(b_under(4, 2, Rational(45, 100)), WithinRel(lo, 1e-14));
  CHECK_THAT(b_over(4, 2, Rational(45, 100)), WithinRel(0.375, 1e-14));
  CHECK_THAT(b_over(10, 0, Rational(1, 10)), WithinRel(std::pow(0.9, 10), 1e-14));
  CHECK_THAT(b_over(10, 10, Rational(8, 10)), WithinRel(std::pow(0.9, 10), 1e-14));
}

TEST_CASE("delta bounds bracket the direct difference") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(3, 2000)(rng);
    const Rational theta(std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng) * 7 + 3, 7 * n);
    if (theta + Rational(1, n) > Rational(1)) continue;
    const std::int64_t centre = floor_mul(n, theta);
    std::int64_t r = centre + std::uniform_int_distribution<std::int64_t>(-15, 5)(rng);
    std::int64_t s = centre + std::uniform_int_distribution<std::int64_t>(-5, 15)(rng);
    if (i % 10 == 0) std::swap(r, s);  // includes r > s + 1
    const double p0 = theta.to_double(), p1 = (theta + Rational(1, n)).to_double();
    const double direct = kernel::sum_range(n, r, s + 1, p1).value - kernel::sum_range(n, r - 1, s, p0).value;
    const DeltaBounds d = delta_bounds(n, theta, r, s);
    INFO("n=" << n << " theta=" << theta.str() << " r=" << r << " s=" << s);
    CHECK(d.lower <= d.upper);
    CHECK(d.lower <= direct + 1e-15);
    CHECK(direct <= d.upper + 1e-15);
    if (r > s + 1) {
      CHECK(d.lower == 0.0);
      CHECK(d.upper == 0.0);
    }
  }
}

TEST_CASE("bounded sweep decides like the plain sweep") {
  const auto spec = ErrorSpec::absolute(Rational(1, 10), Rational(1, 20));
  const auto pass = sweep_with_bounds(101, spec, ParamInterval::unit(), spec.delta);
  CHECK(pass.passes);
  CHECK(pass.stats.exact_evaluations <= pass.stats.candidates);

  const auto fail = sweep_with_bounds(100, spec, ParamInterval::unit(), spec.delta);
  REQUIRE_FALSE(fail.passes);
  REQUIRE(fail.witness);
  const CoverageWindow w = candidate_window(100, spec, *fail.witness);
  CHECK(violates(w, window_complement(w), spec.delta));
  CHECK(1.0 - coverage_at_candidate(100, spec, *fail.witness) >= 0.05);
}

TEST_CASE("shadowed sweeps stay inside their bounds") {
  SweepOptions opts;
  opts.shadow = true;
  for (const Rational eps : {Rational(1, 20), Rational(1, 10), Rational(3, 100)}) {
    for (const Rational delta : {Rational(1, 20), Rational(1, 100)}) {
      const auto spec = ErrorSpec::absolute(eps, delta);
      for (std::int64_t n = 20; n <= 1500; n += 37) {
        for (const auto& iv : {ParamInterval::unit(), ParamInterval::make(Rational(1, 10), Rational(35, 100))}) {
          const SweepResult r = sweep_with_bounds(n, spec, iv, delta, opts);
          const CoverageSummary plain = min_coverage(n, spec, iv, {delta, false, 1});
          INFO("n=" << n << " eps=" << eps.str() << " delta=" << delta.str());
          CHECK(r.passes == !plain.violated);
          CHECK(r.stats.shadow_violations == 0);
          CHECK(r.stats.max_steps_since_exact <= opts.max_steps);
        }
      }
    }
  }
}

TEST_CASE("sweep rejects non-absolute queries") {
  const auto rel = ErrorSpec::relative(Rational(1, 10), Rational(1, 20));
  CHECK_THROWS_AS(sweep_with_bounds(50, rel, ParamInterval::make(Rational(1, 10), Rational(1)), rel.delta),
                  std::invalid_argument);
}
