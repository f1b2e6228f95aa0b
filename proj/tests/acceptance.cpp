// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "binsize/binomial_kernel.hpp"
#include "binsize/candidates.hpp"
#include "binsize/coverage.hpp"
#include "binsize/recursive_bounding.hpp"
#include "binsize/sample_size.hpp"
#include "binsize/verification.hpp"
#include "oracle.hpp"

using namespace binsize;

namespace {

struct TableEntry {
  ErrorSpec spec;
  std::int64_t expected;
  std::string label;
};

std::vector<TableEntry> table_abs() {
  const char* eps[] = {"0.1", "0.05", "0.01"};
  const char* deltas[] = {"0.05", "0.01", "0.001"};
  const std::int64_t expected[3][3] = {{101, 171, 276}, {391, 671, 1091}, {9651, 16601, 27101}};
  std::vector<TableEntry> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out.push_back({ErrorSpec::absolute(Rational::parse(eps[i]), Rational::parse(deltas[j])), expected[i][j],
                     std::string("abs eps=") + eps[i] + " delta=" + deltas[j]});
    }
  }
  return out;
}

std::vector<TableEntry> table_mixed() {
  const char* eps_abs[] = {"0.05", "0.01", "0.005"};
  const char* deltas[] = {"0.05", "0.01", "0.001"};
  const std::int64_t expected[3][3] = {{391, 671, 1091}, {3501, 6051, 9801}, {7401, 12701, 20701}};
  std::vector<TableEntry> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out.push_back({ErrorSpec::mixed(Rational::parse(eps_abs[i]), Rational(1, 10), Rational::parse(deltas[j])),
                     expected[i][j], std::string("mixed eps_a=") + eps_abs[i] + " eps_r=0.1 delta=" + deltas[j]});
    }
  }
  return out;
}

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail, double seconds) {
  if (!pass) ++failures;
  std::printf("%s [%d] %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, name, detail.c_str(), seconds);
  std::fflush(stdout);
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rational random_unit(std::mt19937_64& rng, std::int64_t max_den) {
  const std::int64_t den = std::uniform_int_distribution<std::int64_t>(2, max_den)(rng);
  return Rational(std::uniform_int_distribution<std::int64_t>(0, den)(rng), den);
}

std::vector<std::int64_t> reproduce(int id, const char* name, const std::vector<TableEntry>& entries) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::int64_t> got;
  std::ostringstream detail;
  int matched = 0;
  for (const auto& e : entries) {
    const std::int64_t n = min_sample_size(e.spec, ParamInterval::unit()).n_min;
    got.push_back(n);
    if (n == e.expected) {
      ++matched;
    } else {
      detail << " [" << e.label << ": got " << n << ", expected " << e.expected << "]";
    }
  }
  std::ostringstream head;
  head << matched << "/" << entries.size() << " exact matches";
  report(id, name, matched == static_cast<int>(entries.size()), head.str() + detail.str(), since(t0));
  return got;
}

void minimality(const std::vector<TableEntry>& entries, const std::vector<std::int64_t>& found) {
  const auto t0 = std::chrono::steady_clock::now();
  int ok = 0;
  std::ostringstream detail;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const std::int64_t n = found[i];
    const CoverageSummary at_n = min_coverage(n, e.spec, ParamInterval::unit(), {e.spec.delta, false, 1});
    const CoverageSummary before = min_coverage(n - 1, e.spec, ParamInterval::unit(), {e.spec.delta, false, 1});
    // The witness is re-judged at its own p, independently of the sweep.
    bool witness_ok = false;
    if (before.violated) {
      const CoverageWindow w = coverage_window(n - 1, e.spec, before.argmin_p);
      witness_ok = violates(w, window_complement(w), e.spec.delta);
    }
    if (!at_n.violated && before.violated && witness_ok) {
      ++ok;
    } else {
      detail << " [" << e.label << " n=" << n << "]";
    }
  }
  std::ostringstream head;
  head << ok << "/" << entries.size() << " entries fail at n-1 with a witness and pass at n";
  report(3, "Minimality proof", ok == static_cast<int>(entries.size()), head.str() + detail.str(), since(t0));
}

void oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const Rational eps_values[] = {Rational(1, 20), Rational(1, 10), Rational(1, 5)};
  const ParamInterval intervals[] = {ParamInterval::unit(), ParamInterval::make(Rational(0), Rational(1, 2)),
                                     ParamInterval::make(Rational(1, 5), Rational(2, 5))};
  int total = 0, below_ok = 0, close_ok = 0;
  double worst_gap = 0.0;
  std::string worst;
  for (std::int64_t n = 5; n <= 50; ++n) {
    for (const Rational& eps : eps_values) {
      for (const auto& iv : intervals) {
        const auto spec = ErrorSpec::absolute(eps, Rational(1, 20));
        const double cand = min_coverage(n, spec, iv).min_coverage;
        const double grid = grid_min_coverage(n, spec, iv, 100'000).grid_min_coverage;
        ++total;
        below_ok += cand <= grid + 1e-12;
        close_ok += std::abs(cand - grid) <= 1e-6;
        if (std::abs(cand - grid) > worst_gap) {
          worst_gap = std::abs(cand - grid);
          std::ostringstream os;
          os << "n=" << n << " eps=" << eps.str() << " [" << iv.a.str() << "," << iv.b.str() << "]";
          worst = os.str();
        }
      }
    }
  }
  std::ostringstream detail;
  detail << "candidate min <= grid + 1e-12 on " << below_ok << "/" << total << "; |candidate - grid| <= 1e-6 on "
         << close_ok << "/" << total << "; largest gap " << worst_gap << " at " << worst;
  report(4, "Oracle equivalence", below_ok == total && close_ok == total, detail.str(), since(t0));
}

void kernel_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240501);
  int ok = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 30)(rng);
    const Rational ea(std::uniform_int_distribution<std::int64_t>(1, 99)(rng), 100);
    const Rational er(std::uniform_int_distribution<std::int64_t>(1, 99)(rng), 100);
    const Rational p = random_unit(rng, 1000);
    ErrorSpec spec;
    switch (i % 3) {
      case 0: spec = ErrorSpec::absolute(ea, Rational(1, 20)); break;
      case 1: spec = ErrorSpec::relative(er, Rational(1, 20)); break;
      default: spec = ErrorSpec::mixed(ea, er, Rational(1, 20)); break;
    }
    const double rel = oracle::relative_error(coverage_at(n, spec, p), oracle::coverage(n, spec, p));
    worst = std::max(worst, rel);
    ok += rel <= 1e-13;
  }
  std::ostringstream detail;
  detail << ok << "/1000 instances within 1e-13 relative error; worst " << worst;
  report(5, "Kernel exactness", ok == 1000, detail.str(), since(t0));
}

void recursion_soundness() {
  const auto t0 = std::chrono::steady_clock::now();
  SweepOptions opts;
  opts.shadow = true;
  int total = 0, agree = 0;
  std::size_t checks = 0, violations = 0;
  for (std::int64_t n = 10; n <= 200; ++n) {
    for (const Rational eps : {Rational(1, 20), Rational(1, 10)}) {
      for (const Rational delta : {Rational(1, 20), Rational(1, 100)}) {
        const auto spec = ErrorSpec::absolute(eps, delta);
        const SweepResult r = sweep_with_bounds(n, spec, ParamInterval::unit(), delta, opts);
        const CoverageSummary plain = min_coverage(n, spec, ParamInterval::unit(), {delta, false, 1});
        ++total;
        agree += r.passes == !plain.violated;
        checks += r.stats.shadow_checks;
        violations += r.stats.shadow_violations;
      }
    }
  }
  std::ostringstream detail;
  detail << agree << "/" << total << " decisions equal the plain sweep; " << violations << " of " << checks
         << " propagated intervals miss the exact complement";
  report(6, "Recursive-bounding soundness", agree == total && violations == 0 && checks > 0, detail.str(),
         since(t0));
}

void baseline_dominance(const std::vector<TableEntry>& entries, const std::vector<std::int64_t>& found) {
  const auto t0 = std::chrono::steady_clock::now();
  int ok = 0;
  std::ostringstream detail;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Rational margin = baseline_margin(entries[i].spec, ParamInterval::unit());
    const std::int64_t chernoff = baseline_chernoff(margin.to_double(), entries[i].spec.delta.to_double());
    const std::int64_t bernoulli = baseline_bernoulli(margin, entries[i].spec.delta);
    if (found[i] <= chernoff && found[i] <= bernoulli) {
      ++ok;
    } else {
      detail << " [" << entries[i].label << "]";
    }
  }
  const bool spots = baseline_chernoff(0.1, 0.05) == 185 && baseline_bernoulli(Rational(1, 10), Rational(1, 20)) == 501;
  std::ostringstream head;
  head << ok << "/" << entries.size() << " queries at or below both bounds; chernoff(0.1,0.05)="
       << baseline_chernoff(0.1, 0.05) << " bernoulli(0.1,0.05)=" << baseline_bernoulli(Rational(1, 10), Rational(1, 20));
  report(7, "Baseline dominance", ok == static_cast<int>(entries.size()) && spots, head.str() + detail.str(),
         since(t0));
}

void monte_carlo() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto spec = ErrorSpec::absolute(Rational(1, 10), Rational(1, 20));
  bool ok = true;
  std::ostringstream detail;
  for (const Rational p : {Rational(1, 10), Rational(3, 10), Rational(1, 2)}) {
    const MonteCarloResult mc = monte_carlo_coverage(101, spec, p, 1'000'000, 42);
    const double exact = coverage_at(101, spec, p);
    const double z = std::abs(mc.empirical_coverage - exact) / mc.std_error;
    ok = ok && z <= 5.0;
    detail << "p=" << p.str() << " z=" << z << "; ";
  }
  report(8, "Monte Carlo sanity", ok, detail.str() + "seed 42, 1e6 trials each", since(t0));
}

void structural_properties() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(777);

  // Fixed window [g, h] on a random [u, v]: no interior grid point beats the endpoints.
  int endpoint_ok = 0;
  for (int i = 0; i < 500; ++i) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(2, 200)(rng);
    std::int64_t g = std::uniform_int_distribution<std::int64_t>(1, n - 1)(rng);
    std::int64_t h = std::uniform_int_distribution<std::int64_t>(1, n - 1)(rng);
    if (g > h) std::swap(g, h);
    double u = std::uniform_real_distribution<double>(1e-3, 1 - 1e-3)(rng);
    double v = std::uniform_real_distribution<double>(1e-3, 1 - 1e-3)(rng);
    if (u > v) std::swap(u, v);
    const double ends = std::min(kernel::sum_range(n, g, h, u).value, kernel::sum_range(n, g, h, v).value);
    double inner = 1.0;
    for (int j = 1; j < 1000; ++j) inner = std::min(inner, kernel::sum_range(n, g, h, u + (v - u) * j / 1000.0).value);
    endpoint_ok += ends <= inner + 1e-12;
  }

  // g and h constant between consecutive candidates, three interior samples per gap.
  int constancy_ok = 0;
  for (int i = 0; i < 500; ++i) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 100)(rng);
    const Rational ea(std::uniform_int_distribution<std::int64_t>(1, 50)(rng), 100);
    const Rational er(std::uniform_int_distribution<std::int64_t>(1, 90)(rng), 100);
    const Rational a = random_unit(rng, 10) * Rational(1, 2);
    const Rational b = a + (Rational(1) - a) * (Rational(1, 2) + random_unit(rng, 10) * Rational(1, 2));
    const ParamInterval iv = ParamInterval::make(a, b);
    ErrorSpec spec;
    switch (i % 3) {
      case 0: spec = ErrorSpec::absolute(ea, Rational(1, 20)); break;
      case 1: spec = a > Rational(0) ? ErrorSpec::relative(er, Rational(1, 20)) : ErrorSpec::mixed(ea, er, Rational(1, 20)); break;
      default: spec = ErrorSpec::mixed(ea, er, Rational(1, 20)); break;
    }
    const ParamInterval work = working_interval(spec, iv);
    const auto cs = enumerate_candidates(n, spec, iv);
    bool constant = true;
    for (std::size_t j = 1; j < cs.size() && constant; ++j) {
      const Rational lo = cs[j - 1].p, width = cs[j].p - cs[j - 1].p;
      const auto [g0, h0] = oracle::window(n, spec, work.to_original(lo + width * Rational(1, 4)));
      for (const Rational t : {Rational(1, 2), Rational(3, 4)}) {
        const auto [g1, h1] = oracle::window(n, spec, work.to_original(lo + width * t));
        constant = constant && ((g0 > h0 && g1 > h1) || (g0 == g1 && h0 == h1));
      }
    }
    constancy_ok += constant;
  }
  std::ostringstream detail;
  detail << "endpoint minimum " << endpoint_ok << "/500, window constancy " << constancy_ok << "/500";
  report(9, "Structural properties", endpoint_ok == 500 && constancy_ok == 500, detail.str(), since(t0));
}

}  // namespace

int main() {
  const auto t1 = table_abs();
  const auto t2 = table_mixed();
  const auto n1 = reproduce(1, "Absolute reference table", t1);
  const auto n2 = reproduce(2, "Mixed reference table", t2);

  std::vector<TableEntry> all = t1;
  all.insert(all.end(), t2.begin(), t2.end());
  std::vector<std::int64_t> found = n1;
  found.insert(found.end(), n2.begin(), n2.end());

  minimality(all, found);
  oracle_equivalence();
  kernel_exactness();
  recursion_soundness();
  baseline_dominance(all, found);
  monte_carlo();
  structural_properties();

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
