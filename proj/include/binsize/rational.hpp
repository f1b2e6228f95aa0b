#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace binsize {

using int128 = __int128;

/// Exact rational number with 64-bit numerator/denominator, always reduced,
/// denominator positive.
///
/// Every margin, confidence parameter, interval endpoint and candidate
/// abscissa is carried as a Rational so that the integer window indices
/// (floors and ceilings of n(p -/+ eps) and friends) are computed exactly.
/// Arithmetic is done in 128-bit intermediates and throws std::overflow_error
/// if the reduced result does not fit.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Parses "0.05", "5e-2", "1/20", "-3", "2.5E+1".
  static Rational parse(std::string_view text);

  /// Exact value of a binary double when its dyadic denominator fits in 62
  /// bits; otherwise the best rational approximation with denominator
  /// at most 2^53.
  static Rational from_double(double x);

  /// Shortest decimal that round-trips to `x`, parsed as a rational.
  /// from_decimal_double(0.1) == 1/10.
  static Rational from_decimal_double(double x);

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  double to_double() const;
  std::int64_t floor() const;
  std::int64_t ceil() const;
  bool is_integer() const { return den_ == 1; }

  /// "num/den", or "num" for integers.
  std::string str() const;

  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  friend Rational operator/(const Rational& x, const Rational& y);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    const int128 lhs = static_cast<int128>(x.num_) * y.den_;
    const int128 rhs = static_cast<int128>(y.num_) * x.den_;
    return lhs <=> rhs;
  }

  /// Builds a reduced rational from 128-bit parts; throws on overflow.
  static Rational from_wide(int128 num, int128 den);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// floor(num/den) for den != 0.
int128 floor_div(int128 num, int128 den);
/// ceil(num/den) for den != 0.
int128 ceil_div(int128 num, int128 den);

/// floor(n * x) without forming n*x as a Rational.
std::int64_t floor_mul(std::int64_t n, const Rational& x);
/// ceil(n * x) without forming n*x as a Rational.
std::int64_t ceil_mul(std::int64_t n, const Rational& x);

}  // namespace binsize
