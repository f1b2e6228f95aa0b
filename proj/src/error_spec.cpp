#include "binsize/error_spec.hpp"

namespace binsize {
namespace {

const Rational kZero{0};
const Rational kOne{1};
const Rational kHalf{1, 2};

void check_open_unit(const Rational& x, const char* name) {
  if (!(x > kZero && x < kOne)) {
    throw std::invalid_argument(std::string(name) + " must lie strictly inside (0, 1), got " + x.str());
  }
}

}  // namespace

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::Absolute: return "abs";
    case Criterion::Relative: return "rel";
    case Criterion::Mixed: return "mixed";
  }
  return "?";
}

Criterion parse_criterion(std::string_view name) {
  if (name == "abs" || name == "absolute") return Criterion::Absolute;
  if (name == "rel" || name == "relative") return Criterion::Relative;
  if (name == "mixed") return Criterion::Mixed;
  throw std::invalid_argument("unknown criterion '" + std::string(name) + "'");
}

ErrorSpec ErrorSpec::absolute(Rational eps, Rational delta) {
  ErrorSpec s{Criterion::Absolute, eps, std::nullopt, delta};
  s.validate();
  return s;
}

ErrorSpec ErrorSpec::relative(Rational eps, Rational delta) {
  ErrorSpec s{Criterion::Relative, std::nullopt, eps, delta};
  s.validate();
  return s;
}

ErrorSpec ErrorSpec::mixed(Rational eps_abs, Rational eps_rel, Rational delta) {
  ErrorSpec s{Criterion::Mixed, eps_abs, eps_rel, delta};
  s.validate();
  return s;
}

void ErrorSpec::validate() const {
  if ((kind == Criterion::Absolute || kind == Criterion::Mixed) && !eps_abs) {
    throw std::invalid_argument("criterion requires an absolute margin");
  }
  if ((kind == Criterion::Relative || kind == Criterion::Mixed) && !eps_rel) {
    throw std::invalid_argument("criterion requires a relative margin");
  }
  if (eps_abs) check_open_unit(*eps_abs, "eps_abs");
  if (eps_rel) check_open_unit(*eps_rel, "eps_rel");
  check_open_unit(delta, "delta");
}

const Rational& ErrorSpec::abs_margin() const {
  if (!eps_abs) throw std::invalid_argument("no absolute margin");
  return *eps_abs;
}

const Rational& ErrorSpec::rel_margin() const {
  if (!eps_rel) throw std::invalid_argument("no relative margin");
  return *eps_rel;
}

Rational ErrorSpec::crossover() const { return abs_margin() / rel_margin(); }

ParamInterval ParamInterval::make(Rational a, Rational b) {
  if (a < kZero || b > kOne || !(a < b)) {
    throw std::invalid_argument("interval must satisfy 0 <= a < b <= 1, got [" + a.str() + ", " +
                                b.str() + "]");
  }
  return ParamInterval{a, b, a, b, false};
}

Rational ParamInterval::to_original(const Rational& p_reduced) const {
  if (reduced && a + b > kOne) return kOne - p_reduced;
  return p_reduced;
}

ParamInterval symmetry_reduce(const ParamInterval& interval) {
  const Rational& a = interval.a;
  const Rational& b = interval.b;
  if (!(a < b)) throw std::invalid_argument("symmetry_reduce: need a < b");
  ParamInterval out = interval;
  out.a_reduced = (a + b <= kOne) ? a : kOne - b;
  if (b <= kHalf) {
    out.b_reduced = b;
  } else if (a < kHalf) {
    out.b_reduced = kHalf;
  } else {
    out.b_reduced = kOne - a;
  }
  out.reduced = true;
  return out;
}

void check_interval(const ErrorSpec& spec, const ParamInterval& interval) {
  if (interval.a < kZero || interval.b > kOne || !(interval.a < interval.b)) {
    throw std::invalid_argument("interval must satisfy 0 <= a < b <= 1");
  }
  if (spec.kind == Criterion::Relative && !(interval.a > kZero)) {
    throw std::invalid_argument("relative criterion requires a > 0 (relative error is undefined at p = 0)");
  }
}

}  // namespace binsize
