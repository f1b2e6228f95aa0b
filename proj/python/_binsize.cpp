#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <variant>

#include "binsize/coverage.hpp"
#include "binsize/error_spec.hpp"
#include "binsize/sample_size.hpp"

namespace py = pybind11;
using namespace binsize;

namespace {

// Numbers arrive as decimal strings ("0.05", "1/20") or floats; floats are read
// as their shortest decimal so 0.1 means 1/10.
using Number = std::variant<std::string, double>;

Rational to_rational(const Number& x) {
  if (const auto* s = std::get_if<std::string>(&x)) return Rational::parse(*s);
  return Rational::from_decimal_double(std::get<double>(x));
}

std::optional<Rational> opt(const std::optional<Number>& x) {
  if (!x) return std::nullopt;
  return to_rational(*x);
}

ErrorSpec make_spec(const std::string& criterion, const std::optional<Number>& eps_abs,
                    const std::optional<Number>& eps_rel, const Number& delta) {
  ErrorSpec spec;
  spec.kind = parse_criterion(criterion);
  spec.eps_abs = opt(eps_abs);
  spec.eps_rel = opt(eps_rel);
  spec.delta = to_rational(delta);
  spec.validate();
  return spec;
}

py::dict summary_dict(const CoverageSummary& s) {
  py::dict d;
  d["min_coverage"] = s.min_coverage;
  d["argmin_p"] = s.argmin_p.str();
  d["argmin_origin"] = std::string(to_string(s.argmin.origin));
  d["candidate_count"] = s.candidate_count;
  d["escalations"] = s.escalations;
  d["violated"] = s.violated;
  return d;
}

}  // namespace

PYBIND11_MODULE(_binsize, m) {
  m.doc() = "Exact minimum sample size for estimating a binomial proportion";

  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);

  m.def(
      "min_sample_size",
      [](const std::string& criterion, std::optional<Number> eps_abs, std::optional<Number> eps_rel,
         Number delta, Number a, Number b, std::int64_t max_n, unsigned threads) {
        const ErrorSpec spec = make_spec(criterion, eps_abs, eps_rel, delta);
        const ParamInterval iv = ParamInterval::make(to_rational(a), to_rational(b));
        SearchOptions options;
        options.max_n = max_n;
        options.threads = threads;
        options.keep_proof = false;
        SampleSizeReport r;
        {
          py::gil_scoped_release release;
          r = min_sample_size(spec, iv, options);
        }
        py::dict d;
        d["n"] = r.n_min;
        d["summary"] = summary_dict(r.summary_at_n);
        if (r.fail_witness_at_n_minus_1) {
          py::dict w;
          w["n"] = r.fail_witness_at_n_minus_1->n;
          w["p"] = r.fail_witness_at_n_minus_1->p.str();
          w["coverage"] = r.fail_witness_at_n_minus_1->coverage;
          d["witness"] = w;
        } else {
          d["witness"] = py::none();
        }
        d["baseline_normal"] = r.baseline_normal;
        d["baseline_chernoff"] = r.baseline_chernoff;
        d["baseline_bernoulli"] = r.baseline_bernoulli;
        d["runtime_ms"] = r.runtime_ms;
        return d;
      },
      py::arg("criterion") = "absolute", py::arg("eps_abs") = py::none(), py::arg("eps_rel") = py::none(),
      py::arg("delta") = Number{std::string("0.05")}, py::arg("a") = Number{0.0}, py::arg("b") = Number{1.0},
      py::arg("max_n") = 10'000'000, py::arg("threads") = 1u);

  m.def(
      "coverage_at",
      [](std::int64_t n, Number p, const std::string& criterion, std::optional<Number> eps_abs,
         std::optional<Number> eps_rel) {
        return coverage_at(n, make_spec(criterion, eps_abs, eps_rel, Number{0.05}), to_rational(p));
      },
      py::arg("n"), py::arg("p"), py::arg("criterion") = "absolute", py::arg("eps_abs") = py::none(),
      py::arg("eps_rel") = py::none());

  m.def(
      "min_coverage",
      [](std::int64_t n, const std::string& criterion, std::optional<Number> eps_abs, std::optional<Number> eps_rel,
         Number a, Number b) {
        const ErrorSpec spec = make_spec(criterion, eps_abs, eps_rel, Number{0.05});
        CoverageSummary s;
        {
          py::gil_scoped_release release;
          s = min_coverage(n, spec, ParamInterval::make(to_rational(a), to_rational(b)));
        }
        return summary_dict(s);
      },
      py::arg("n"), py::arg("criterion") = "absolute", py::arg("eps_abs") = py::none(),
      py::arg("eps_rel") = py::none(), py::arg("a") = Number{0.0}, py::arg("b") = Number{1.0});

  m.def(
      "candidates",
      [](std::int64_t n, const std::string& criterion, std::optional<Number> eps_abs, std::optional<Number> eps_rel,
         Number a, Number b) {
        const ErrorSpec spec = make_spec(criterion, eps_abs, eps_rel, Number{0.05});
        const ParamInterval iv = ParamInterval::make(to_rational(a), to_rational(b));
        const ParamInterval work = working_interval(spec, iv);
        py::list out;
        for (const auto& c : enumerate_candidates(n, spec, iv)) {
          out.append(py::make_tuple(work.to_original(c.p).str(), std::string(to_string(c.origin))));
        }
        return out;
      },
      py::arg("n"), py::arg("criterion") = "absolute", py::arg("eps_abs") = py::none(),
      py::arg("eps_rel") = py::none(), py::arg("a") = Number{0.0}, py::arg("b") = Number{1.0});

  m.def("baseline_normal", &baseline_normal, py::arg("eps"), py::arg("delta"));
  m.def("baseline_chernoff", &baseline_chernoff, py::arg("eps"), py::arg("delta"));
  m.def(
      "baseline_bernoulli",
      [](Number eps, Number delta) { return baseline_bernoulli(to_rational(eps), to_rational(delta)); },
      py::arg("eps"), py::arg("delta"));
}
