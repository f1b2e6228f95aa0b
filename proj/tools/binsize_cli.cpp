// binsize: exact minimum sample sizes for estimating a binomial proportion.
//
//   binsize minsize  {abs|rel|mixed} [margins] [--a A --b B]
//   binsize coverage {abs|rel|mixed} --n N [--at P | --min] [--trace FILE]
//   binsize table    {abs|rel|mixed} --eps/--eps-abs/--eps-rel/--delta LISTS
//   binsize verify   --n N [margins] [--grid R] [--mc T --seed S --at P]
//
// Exit codes: 0 ok, 1 internal or I/O error, 2 invalid arguments,
// 3 resource limit, 4 verification failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "binsize/candidates.hpp"
#include "binsize/coverage.hpp"
#include "binsize/error_spec.hpp"
#include "binsize/rational.hpp"
#include "binsize/sample_size.hpp"
#include "binsize/table.hpp"
#include "binsize/verification.hpp"

using namespace binsize;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitVerifyFailed = 4;

struct Common {
  std::string criterion = "abs";
  std::optional<std::string> a, b;
  bool json = false;
  bool csv = false;
  std::string cache;
  std::int64_t max_n = 10'000'000;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 42;
};

struct Margins {
  std::string eps, eps_abs, eps_rel;
  std::string delta = "0.05";
};

void add_common(CLI::App* cmd, Common& c, bool criterion_positional) {
  if (criterion_positional) {
    cmd->add_option("criterion", c.criterion, "abs | rel | mixed")
        ->required()
        ->check(CLI::IsMember({"abs", "absolute", "rel", "relative", "mixed"}));
  }
  cmd->add_option("--a", c.a, "lower end of the parameter interval (default 0)");
  cmd->add_option("--b", c.b, "upper end of the parameter interval (default 1)");
  auto* j = cmd->add_flag("--json", c.json, "JSON output");
  cmd->add_flag("--csv", c.csv, "CSV output")->excludes(j);
  cmd->add_option("--cache", c.cache, "sample-size cache file (CSV)");
  cmd->add_option("--max-n", c.max_n, "largest n to try")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "Monte Carlo seed");
}

void add_margins(CLI::App* cmd, Margins& m) {
  cmd->add_option("--eps", m.eps, "margin of error (abs / rel)");
  cmd->add_option("--eps-abs", m.eps_abs, "absolute margin (mixed)");
  cmd->add_option("--eps-rel", m.eps_rel, "relative margin (mixed)");
  cmd->add_option("--delta", m.delta, "1 - confidence level");
}

Rational parse_value(const std::string& text, const char* name) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("bad value for ") + name + ": '" + text + "' (" + e.what() + ")");
  }
}

const std::string& pick(const std::string& primary, const std::string& alias, const char* name) {
  if (!primary.empty() && !alias.empty() && primary != alias) {
    throw std::invalid_argument(std::string("conflicting values given for ") + name);
  }
  if (primary.empty() && alias.empty()) throw std::invalid_argument(std::string("missing ") + name);
  return primary.empty() ? alias : primary;
}

ErrorSpec make_spec(Criterion kind, const Margins& m) {
  const Rational delta = parse_value(m.delta, "--delta");
  switch (kind) {
    case Criterion::Absolute:
      return ErrorSpec::absolute(parse_value(pick(m.eps, m.eps_abs, "--eps"), "--eps"), delta);
    case Criterion::Relative:
      return ErrorSpec::relative(parse_value(pick(m.eps, m.eps_rel, "--eps"), "--eps"), delta);
    case Criterion::Mixed:
      if (!m.eps.empty()) throw std::invalid_argument("mixed takes --eps-abs and --eps-rel, not --eps");
      return ErrorSpec::mixed(parse_value(pick(m.eps_abs, "", "--eps-abs"), "--eps-abs"),
                              parse_value(pick(m.eps_rel, "", "--eps-rel"), "--eps-rel"), delta);
  }
  throw std::logic_error("unknown criterion");
}

ParamInterval make_interval(Criterion kind, const Common& c) {
  if (kind == Criterion::Relative && !c.a) {
    throw std::invalid_argument("the relative criterion needs an explicit interval with --a > 0");
  }
  const Rational a = c.a ? parse_value(*c.a, "--a") : Rational(0);
  const Rational b = c.b ? parse_value(*c.b, "--b") : Rational(1);
  return ParamInterval::make(a, b);
}

std::optional<double> as_double(const std::optional<Rational>& r) {
  if (!r) return std::nullopt;
  return r->to_double();
}

TableRow row_of(const ErrorSpec& spec, const ParamInterval& interval, std::int64_t n) {
  TableRow row;
  row.criterion = spec.kind;
  row.eps_abs = as_double(spec.eps_abs);
  row.eps_rel = as_double(spec.eps_rel);
  row.delta = spec.delta.to_double();
  row.a = interval.a.to_double();
  row.b = interval.b.to_double();
  row.n = n;
  return row;
}

json rational_json(const Rational& r) { return {{"value", r.to_double()}, {"exact", r.str()}}; }

json spec_json(const ErrorSpec& spec, const ParamInterval& interval) {
  json j;
  j["criterion"] = std::string(to_string(spec.kind));
  j["eps_abs"] = spec.eps_abs ? json(spec.eps_abs->str()) : json(nullptr);
  j["eps_rel"] = spec.eps_rel ? json(spec.eps_rel->str()) : json(nullptr);
  j["delta"] = spec.delta.str();
  j["a"] = interval.a.str();
  j["b"] = interval.b.str();
  return j;
}

json summary_json(const CoverageSummary& s) {
  json j;
  j["n"] = s.n;
  j["min_coverage"] = s.min_coverage;
  j["argmin_p"] = rational_json(s.argmin_p);
  j["argmin_origin"] = std::string(to_string(s.argmin.origin));
  j["candidate_count"] = s.candidate_count;
  j["candidates_evaluated"] = s.candidates_evaluated;
  j["escalations"] = s.escalations;
  return j;
}

std::string fmt(double x) { return format_real(x); }

// ---------------------------------------------------------------- minsize

int run_minsize(const Common& c, const Margins& m) {
  const Criterion kind = parse_criterion(c.criterion);
  const ErrorSpec spec = make_spec(kind, m);
  const ParamInterval interval = make_interval(kind, c);
  check_interval(spec, interval);

  TableCache cache(c.cache);
  cache.load();
  const TableRow key = row_of(spec, interval, 0);

  SampleSizeReport report;
  bool cached = false;
  if (const auto hit = cache.lookup(key)) {
    // The cached n is re-certified at n and n-1, which is cheap.
    cached = true;
    report.spec = spec;
    report.interval = interval;
    report.n_min = *hit;
    report.summary_at_n = min_coverage(*hit, spec, interval, {spec.delta, false, c.threads});
    const Rational margin = baseline_margin(spec, interval);
    report.baseline_normal = baseline_normal(margin.to_double(), spec.delta.to_double());
    report.baseline_chernoff = baseline_chernoff(margin.to_double(), spec.delta.to_double());
    report.baseline_bernoulli = baseline_bernoulli(margin, spec.delta);
    if (*hit > 1) {
      const CoverageSummary before = min_coverage(*hit - 1, spec, interval, {spec.delta, true, c.threads});
      if (before.violated) {
        const CandidatePoint& w = *before.first_violation;
        report.fail_witness_at_n_minus_1 =
            FailureWitness{*hit - 1, w, working_interval(spec, interval).to_original(w.p),
                           coverage_at_candidate(*hit - 1, spec, w), true};
      }
    }
  } else {
    SearchOptions opts;
    opts.max_n = c.max_n;
    opts.threads = c.threads;
    opts.keep_proof = false;
    report = min_sample_size(spec, interval, opts);
    cache.insert(row_of(spec, interval, report.n_min));
    cache.save();
  }

  if (c.csv) {
    write_table(std::cout, {row_of(spec, interval, report.n_min)});
  } else if (c.json) {
    json j;
    j["schema"] = 1;
    j["command"] = "minsize";
    j["query"] = spec_json(spec, interval);
    j["n_min"] = report.n_min;
    j["cached"] = cached;
    j["min_coverage_at_n"] = summary_json(report.summary_at_n);
    if (report.fail_witness_at_n_minus_1) {
      const FailureWitness& w = *report.fail_witness_at_n_minus_1;
      j["witness_at_n_minus_1"] = {{"n", w.n}, {"p", rational_json(w.p)}, {"coverage", w.coverage}};
    } else {
      j["witness_at_n_minus_1"] = nullptr;
    }
    j["baselines"] = {{"normal", report.baseline_normal},
                      {"chernoff", report.baseline_chernoff},
                      {"bernoulli", report.baseline_bernoulli}};
    j["runtime"] = {{"ms", report.runtime_ms},
                    {"ns_scanned", report.ns_scanned},
                    {"full_sweeps", report.full_sweeps},
                    {"witness_rejections", report.witness_rejections}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "criterion      " << to_string(spec.kind) << '\n';
    if (spec.eps_abs) std::cout << "eps_abs        " << spec.eps_abs->str() << '\n';
    if (spec.eps_rel) std::cout << "eps_rel        " << spec.eps_rel->str() << '\n';
    std::cout << "delta          " << spec.delta.str() << '\n'
              << "interval       [" << interval.a.str() << ", " << interval.b.str() << "]\n"
              << "n_min          " << report.n_min << (cached ? "  (cached)" : "") << '\n'
              << "min coverage   " << fmt(report.summary_at_n.min_coverage) << " at p = "
              << report.summary_at_n.argmin_p.str() << '\n';
    if (report.fail_witness_at_n_minus_1) {
      const FailureWitness& w = *report.fail_witness_at_n_minus_1;
      std::cout << "n-1 witness    coverage " << fmt(w.coverage) << " at p = " << w.p.str() << '\n';
    }
    std::cout << "baselines      normal " << report.baseline_normal << ", chernoff " << report.baseline_chernoff
              << ", bernoulli " << report.baseline_bernoulli << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- coverage

struct CoverageArgs {
  std::int64_t n = 0;
  std::optional<std::string> at;
  bool min = false;
  std::string trace;
  bool delta_given = false;
};

int run_coverage(const Common& c, const Margins& m, const CoverageArgs& args) {
  const Criterion kind = parse_criterion(c.criterion);
  const ErrorSpec spec = make_spec(kind, m);
  if (args.n < 1) throw std::invalid_argument("--n must be >= 1");

  if (args.at) {
    const Rational p = parse_value(*args.at, "--at");
    if (p < Rational(0) || p > Rational(1)) throw std::invalid_argument("--at must lie in [0, 1]");
    const CoverageWindow w = coverage_window(args.n, spec, p);
    const double cov = coverage_at(args.n, spec, p);
    if (c.json) {
      json j = {{"schema", 1}, {"command", "coverage"}, {"n", args.n}, {"p", rational_json(p)},
                {"window", {w.g, w.h}}, {"coverage", cov}};
      if (args.delta_given) j["pass"] = cov > 1.0 - spec.delta.to_double();
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << "coverage " << fmt(cov) << " at p = " << p.str() << " (window [" << w.g << ", " << w.h
                << "])\n";
    }
    if (!args.min && args.trace.empty()) return kExitOk;
  }

  const ParamInterval interval = make_interval(kind, c);
  check_interval(spec, interval);

  if (!args.trace.empty()) {
    std::ofstream out(args.trace);
    if (!out) throw std::runtime_error("cannot write trace file " + args.trace);
    const ParamInterval work = working_interval(spec, interval);
    out << "p,coverage,origin,ell\n";
    for (const CandidatePoint& cand : enumerate_candidates(args.n, spec, interval)) {
      out << fmt(work.to_original(cand.p).to_double()) << ',' << fmt(coverage_at_candidate(args.n, spec, cand))
          << ',' << to_string(cand.origin) << ',' << (cand.ell ? std::to_string(*cand.ell) : "") << '\n';
    }
    if (!out) throw std::runtime_error("failed writing trace file " + args.trace);
  }

  if (!args.min && args.at) return kExitOk;
  MinCoverageOptions opts;
  if (args.delta_given) opts.delta = spec.delta;
  opts.threads = c.threads;
  const CoverageSummary s = min_coverage(args.n, spec, interval, opts);
  if (c.json) {
    json j = {{"schema", 1}, {"command", "coverage"}, {"query", spec_json(spec, interval)}};
    j["summary"] = summary_json(s);
    if (args.delta_given) j["pass"] = !s.violated;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "n              " << s.n << '\n'
              << "min coverage   " << fmt(s.min_coverage) << '\n'
              << "argmin p       " << s.argmin_p.str() << " (" << to_string(s.argmin.origin) << ")\n"
              << "candidates     " << s.candidate_count << '\n';
    if (args.delta_given) {
      std::cout << (s.violated ? "FAIL" : "PASS") << "           coverage " << (s.violated ? "<=" : ">") << " 1 - "
                << spec.delta.str() << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- table

struct TableArgs {
  std::vector<std::string> eps, eps_abs, eps_rel, delta;
};

int run_table(const Common& c, const TableArgs& args) {
  const Criterion kind = parse_criterion(c.criterion);
  std::vector<std::string> first, second;
  switch (kind) {
    case Criterion::Absolute: first = args.eps.empty() ? args.eps_abs : args.eps; second = {""}; break;
    case Criterion::Relative: first = args.eps.empty() ? args.eps_rel : args.eps; second = {""}; break;
    case Criterion::Mixed: first = args.eps_abs; second = args.eps_rel; break;
  }
  if (first.empty() || second.empty()) throw std::invalid_argument("empty margin list");
  if (args.delta.empty()) throw std::invalid_argument("empty --delta list");
  const ParamInterval interval = make_interval(kind, c);

  std::vector<std::pair<TableRow, ErrorSpec>> queries;
  for (const auto& e1 : first) {
    for (const auto& e2 : second) {
      for (const auto& d : args.delta) {
        Margins m;
        m.delta = d;
        if (kind == Criterion::Mixed) {
          m.eps_abs = e1;
          m.eps_rel = e2;
        } else {
          m.eps = e1;
        }
        const ErrorSpec spec = make_spec(kind, m);
        check_interval(spec, interval);
        queries.emplace_back(row_of(spec, interval, 0), spec);
      }
    }
  }
  std::sort(queries.begin(), queries.end(),
            [](const auto& x, const auto& y) { return key_of(x.first) < key_of(y.first); });
  queries.erase(std::unique(queries.begin(), queries.end(),
                            [](const auto& x, const auto& y) { return key_of(x.first) == key_of(y.first); }),
                queries.end());

  TableCache cache(c.cache);
  cache.load();
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (const auto hit = cache.lookup(queries[i].first)) {
      queries[i].first.n = *hit;
    } else {
      todo.push_back(i);
    }
  }

  // Independent queries run concurrently; output order is fixed by the sort above.
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(todo.size());
  auto worker = [&] {
    for (std::size_t t = next++; t < todo.size(); t = next++) {
      auto& [row, spec] = queries[todo[t]];
      try {
        SearchOptions opts;
        opts.max_n = c.max_n;
        opts.keep_proof = false;
        row.n = min_sample_size(spec, interval, opts).n_min;
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::min<unsigned>(c.threads, static_cast<unsigned>(std::max<std::size_t>(1, todo.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<TableRow> rows;
  for (const auto& [row, spec] : queries) {
    rows.push_back(row);
    cache.insert(row);
  }
  cache.save();

  if (c.json) {
    json j = {{"schema", 1}, {"command", "table"}, {"rows", json::array()}};
    for (const auto& row : rows) {
      j["rows"].push_back({{"criterion", std::string(to_string(row.criterion))},
                           {"eps_abs", row.eps_abs ? json(*row.eps_abs) : json(nullptr)},
                           {"eps_rel", row.eps_rel ? json(*row.eps_rel) : json(nullptr)},
                           {"delta", row.delta},
                           {"a", row.a},
                           {"b", row.b},
                           {"n", row.n}});
    }
    std::cout << j.dump(2) << '\n';
  } else {
    write_table(std::cout, rows);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::int64_t n = 0;
  std::size_t grid = 10000;
  std::uint64_t mc = 0;
  std::optional<std::string> at;
  bool delta_given = false;
};

int run_verify(const Common& c, const Margins& m, const VerifyArgs& args) {
  const Criterion kind = parse_criterion(c.criterion);
  const ErrorSpec spec = make_spec(kind, m);
  const ParamInterval interval = make_interval(kind, c);
  check_interval(spec, interval);
  if (args.n < 1) throw std::invalid_argument("--n must be >= 1");
  if (args.grid != 0 && args.grid < 10) throw std::invalid_argument("--grid must be 0 or >= 10");
  if (args.mc != 0 && args.mc < 1000) throw std::invalid_argument("--mc must be 0 or >= 1000");

  json checks = json::array();
  bool all_pass = true;
  auto report = [&](const std::string& name, bool pass, const std::string& detail, json extra = json::object()) {
    all_pass = all_pass && pass;
    extra["check"] = name;
    extra["pass"] = pass;
    extra["detail"] = detail;
    checks.push_back(extra);
    if (!c.json) std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
  };

  MinCoverageOptions opts;
  opts.delta = spec.delta;
  opts.threads = c.threads;
  const CoverageSummary s = min_coverage(args.n, spec, interval, opts);
  // The requirement itself is only judged against an explicitly chosen delta.
  if (args.delta_given) {
    std::ostringstream os;
    os << "min coverage " << fmt(s.min_coverage) << " at p = " << s.argmin_p.str()
       << (s.violated ? " <= " : " > ") << "1 - " << spec.delta.str();
    report("requirement", !s.violated, os.str(),
           {{"min_coverage", s.min_coverage}, {"witness_p", s.violated ? json(s.argmin_p.str()) : json(nullptr)}});
  }

  if (args.grid != 0) {
    const GridScanResult g = grid_min_coverage(args.n, spec, interval, args.grid, c.threads);
    const bool ok = s.min_coverage <= g.grid_min_coverage + 1e-12;
    std::ostringstream os;
    os << args.grid << "-point grid min " << fmt(g.grid_min_coverage) << " at p = " << fmt(g.grid_argmin_p.to_double())
       << ", gap " << fmt(g.grid_min_coverage - s.min_coverage);
    report("grid", ok, os.str(), {{"grid_min_coverage", g.grid_min_coverage}});
  }

  const Rational point = args.at ? parse_value(*args.at, "--at") : s.argmin_p;
  if (point < Rational(0) || point > Rational(1)) throw std::invalid_argument("--at must lie in [0, 1]");
  const double cov_point = coverage_at(args.n, spec, point);

  if (args.n <= 30) {
    const ExactRational exact = exact_small_coverage(args.n, spec, point);
    const double ex = static_cast<double>(exact);
    const double rel = ex == 0.0 ? std::abs(cov_point) : std::abs(cov_point - ex) / ex;
    std::ostringstream os;
    os << "coverage at p = " << point.str() << ": float " << fmt(cov_point) << ", exact " << fmt(ex)
       << ", relative error " << fmt(rel);
    report("rational", rel <= 1e-13, os.str(), {{"relative_error", rel}});
  }

  if (args.mc != 0) {
    const MonteCarloResult mc = monte_carlo_coverage(args.n, spec, point, args.mc, c.seed, c.threads);
    const double diff = std::abs(mc.empirical_coverage - cov_point);
    const double z = mc.std_error > 0 ? diff / mc.std_error : (diff < 1e-12 ? 0.0 : INFINITY);
    std::ostringstream os;
    os << mc.trials << " trials (seed " << mc.seed << ") at p = " << point.str() << ": empirical "
       << fmt(mc.empirical_coverage) << ", exact " << fmt(cov_point) << ", z = " << fmt(z);
    report("monte_carlo", z <= 5.0, os.str(), {{"empirical_coverage", mc.empirical_coverage}, {"z", z}});
  }

  if (c.json) {
    std::cout << json{{"schema", 1},       {"command", "verify"}, {"query", spec_json(spec, interval)},
                      {"n", args.n},       {"checks", checks},    {"pass", all_pass}}
                     .dump(2)
              << '\n';
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact minimum sample sizes for estimating a binomial proportion"};
  app.require_subcommand(1);

  Common common;
  Margins margins;

  auto* minsize = app.add_subcommand("minsize", "smallest n whose coverage exceeds 1 - delta on [a, b]");
  add_common(minsize, common, true);
  add_margins(minsize, margins);

  CoverageArgs cov_args;
  auto* coverage = app.add_subcommand("coverage", "coverage at a point or its minimum over [a, b]");
  add_common(coverage, common, true);
  add_margins(coverage, margins);
  coverage->add_option("--n", cov_args.n, "sample size")->required();
  coverage->add_option("--at", cov_args.at, "evaluate at this p");
  coverage->add_flag("--min", cov_args.min, "minimum over the candidate set");
  coverage->add_option("--trace", cov_args.trace, "write every candidate (p, coverage, origin, ell) as CSV");

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "sample sizes for every combination of margins and deltas");
  add_common(table, common, true);
  table->add_option("--eps", table_args.eps, "margins (abs / rel)")->delimiter(',');
  table->add_option("--eps-abs", table_args.eps_abs, "absolute margins (mixed)")->delimiter(',');
  table->add_option("--eps-rel", table_args.eps_rel, "relative margins (mixed)")->delimiter(',');
  table->add_option("--delta", table_args.delta, "deltas")->delimiter(',')->required();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check a sample size against independent oracles");
  add_common(verify, common, false);
  add_margins(verify, margins);
  verify->add_option("--criterion", common.criterion, "abs | rel | mixed")
      ->check(CLI::IsMember({"abs", "absolute", "rel", "relative", "mixed"}));
  verify->add_option("--n", verify_args.n, "sample size")->required();
  verify->add_option("--grid", verify_args.grid, "grid points for the dense scan (0 skips it)");
  verify->add_option("--mc", verify_args.mc, "Monte Carlo trials (0 skips it)");
  verify->add_option("--at", verify_args.at, "point for the rational and Monte Carlo checks (default: argmin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (minsize->parsed()) return run_minsize(common, margins);
    if (coverage->parsed()) {
      cov_args.delta_given = coverage->count("--delta") > 0;
      return run_coverage(common, margins, cov_args);
    }
    if (table->parsed()) return run_table(common, table_args);
    if (verify->parsed()) {
      verify_args.delta_given = verify->count("--delta") > 0;
      return run_verify(common, margins, verify_args);
    }
  } catch (const ResourceLimit& e) {
    std::cerr << "binsize: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "binsize: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "binsize: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}
