#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "binsize/rational.hpp"

namespace binsize {

enum class Criterion { Absolute, Relative, Mixed };

std::string_view to_string(Criterion c);
/// "abs" | "absolute" | "rel" | "relative" | "mixed".
Criterion parse_criterion(std::string_view name);

/// Margin(s) of error and the confidence parameter delta. The requirement
/// being certified is coverage > 1 - delta for every p in the interval.
struct ErrorSpec {
  Criterion kind = Criterion::Absolute;
  std::optional<Rational> eps_abs;
  std::optional<Rational> eps_rel;
  Rational delta{1, 20};

  static ErrorSpec absolute(Rational eps, Rational delta);
  static ErrorSpec relative(Rational eps, Rational delta);
  static ErrorSpec mixed(Rational eps_abs, Rational eps_rel, Rational delta);

  /// Throws std::invalid_argument unless the parameters required by `kind`
  /// are present and every present parameter lies strictly inside (0, 1).
  void validate() const;

  /// Margin of the absolute (Absolute / Mixed) or relative (Relative / Mixed) part.
  const Rational& abs_margin() const;
  const Rational& rel_margin() const;

  /// eps_a / eps_r; Mixed only.
  Rational crossover() const;
};

/// Prior interval [a, b] for p and its symmetry-reduced image [a', b'] in
/// [0, 1/2] (equal to [a, b] until symmetry_reduce is applied).
struct ParamInterval {
  Rational a{0};
  Rational b{1};
  Rational a_reduced{0};
  Rational b_reduced{1};
  bool reduced = false;

  /// Validates 0 <= a < b <= 1.
  static ParamInterval make(Rational a, Rational b);
  static ParamInterval unit() { return make(Rational(0), Rational(1)); }

  /// Maps a point of the reduced interval back into [a, b].
  Rational to_original(const Rational& p_reduced) const;
};

/// C(p) = C(1-p) for the absolute criterion lets [a, b] shrink to [a', b'].
/// Throws std::invalid_argument if a >= b.
ParamInterval symmetry_reduce(const ParamInterval& interval);

/// Throws std::invalid_argument when the interval is not admissible for the
/// criterion (Relative needs a > 0).
void check_interval(const ErrorSpec& spec, const ParamInterval& interval);

class InconsistentCandidate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace binsize
