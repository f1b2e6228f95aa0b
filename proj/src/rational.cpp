#include "binsize/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <system_error>

namespace binsize {
namespace {

int128 abs128(int128 v) { return v < 0 ? -v : v; }

int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr int128 kInt64Max = std::numeric_limits<std::int64_t>::max();

int128 checked_mul(int128 a, int128 b) {
  int128 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return out;
}

int128 checked_add(int128 a, int128 b) {
  int128 out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return out;
}

int128 pow10(int exp) {
  int128 v = 1;
  for (int i = 0; i < exp; ++i) v = checked_mul(v, 10);
  return v;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("not a number: '" + std::string(text) + "'");
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  int128 mantissa = 0;
  int frac_digits = 0;
  bool seen_digit = false;
  bool seen_point = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c >= '0' && c <= '9') {
      mantissa = checked_add(checked_mul(mantissa, 10), c - '0');
      if (seen_point) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) bad_number(text);
  int exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') bad_number(text);
    std::string_view e = s.substr(i + 1);
    if (!e.empty() && e.front() == '+') e.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exponent);
    if (ec != std::errc{} || ptr != e.data() + e.size() || e.empty()) bad_number(text);
  }
  exponent -= frac_digits;
  if (negative) mantissa = -mantissa;
  if (exponent >= 0) return Rational::from_wide(checked_mul(mantissa, pow10(exponent)), 1);
  if (exponent < -36) throw std::overflow_error("decimal exponent too small: '" + std::string(text) + "'");
  return Rational::from_wide(mantissa, pow10(-exponent));
}

}  // namespace

int128 floor_div(int128 num, int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  int128 q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

int128 ceil_div(int128 num, int128 den) { return -floor_div(-num, den); }

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(int128 num, int128 den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (abs128(num) > kInt64Max || den > kInt64Max) {
    throw std::overflow_error("rational value does not fit in 64 bits");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) bad_number(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (den.num() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  return parse_decimal(text);
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  if (x == 0.0) return {};
  int exp = 0;
  const double frac = std::frexp(x, &exp);  // x = frac * 2^exp, |frac| in [0.5, 1)
  auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  exp -= 53;
  while (exp < 0 && (mant % 2) == 0) {
    mant /= 2;
    ++exp;
  }
  if (exp >= 0) {
    if (exp > 62) throw std::overflow_error("double too large for a 64-bit rational");
    return from_wide(checked_mul(mant, static_cast<int128>(1) << exp), 1);
  }
  if (-exp <= 62) return from_wide(mant, static_cast<int128>(1) << -exp);

  // Best approximation by continued fractions, denominator <= 2^53.
  const int128 limit = static_cast<int128>(1) << 53;
  long double rest = std::fabs(static_cast<long double>(x));
  int128 h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a_f = std::floor(rest);
    if (a_f > 1e18L) break;
    const auto a = static_cast<int128>(a_f);
    const int128 h2 = a * h1 + h0;
    const int128 k2 = a * k1 + k0;
    if (k2 > limit) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const long double f = rest - a_f;
    if (f == 0.0L) break;
    rest = 1.0L / f;
  }
  if (k1 == 0) return {};
  return from_wide(x < 0 ? -h1 : h1, k1);
}

Rational Rational::from_decimal_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw std::invalid_argument("cannot format double");
  return parse(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

double Rational::to_double() const {
  constexpr std::int64_t kExact = std::int64_t{1} << 53;
  if (num_ > -kExact && num_ < kExact && den_ < kExact) {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::int64_t Rational::floor() const { return static_cast<std::int64_t>(floor_div(num_, den_)); }
std::int64_t Rational::ceil() const { return static_cast<std::int64_t>(ceil_div(num_, den_)); }

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& x, const Rational& y) {
  return Rational::from_wide(checked_add(static_cast<int128>(x.num_) * y.den_,
                                         static_cast<int128>(y.num_) * x.den_),
                             static_cast<int128>(x.den_) * y.den_);
}

Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

Rational operator*(const Rational& x, const Rational& y) {
  return Rational::from_wide(static_cast<int128>(x.num_) * y.num_,
                             static_cast<int128>(x.den_) * y.den_);
}

Rational operator/(const Rational& x, const Rational& y) {
  if (y.num_ == 0) throw std::domain_error("rational division by zero");
  return Rational::from_wide(static_cast<int128>(x.num_) * y.den_,
                             static_cast<int128>(x.den_) * y.num_);
}

std::int64_t floor_mul(std::int64_t n, const Rational& x) {
  return static_cast<std::int64_t>(floor_div(static_cast<int128>(n) * x.num(), x.den()));
}

std::int64_t ceil_mul(std::int64_t n, const Rational& x) {
  return static_cast<std::int64_t>(ceil_div(static_cast<int128>(n) * x.num(), x.den()));
}

}  // namespace binsize
