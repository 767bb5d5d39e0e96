#include "apdisc/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

#include "apdisc/error.hpp"

namespace apdisc {
namespace {

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 x) {
  return x >= std::numeric_limits<std::int64_t>::min() &&
         x <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw Error(ErrorCode::ParseError, "numtheory",
                "not an integer: '" + std::string(s) + "'");
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  APDISC_ENSURE(den != 0, ErrorCode::PreconditionViolation, "numtheory",
                "zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(i128 num, i128 den) {
  APDISC_ENSURE(den != 0, ErrorCode::PreconditionViolation, "numtheory",
                "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  APDISC_ENSURE(fits64(num) && fits64(den), ErrorCode::Overflow, "numtheory",
                "rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::parse(std::string_view text) {
  if (text.find_first_of(".eE") != std::string_view::npos)
    throw Error(ErrorCode::ParseError, "cli",
                "decimal input rejected, use an exact fraction p/q: '" +
                    std::string(text) + "'");
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t p = parse_int(text.substr(0, slash));
  std::int64_t q = parse_int(text.substr(slash + 1));
  if (q == 0) throw Error(ErrorCode::ParseError, "cli", "zero denominator");
  return Rational(p, q);
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const noexcept {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::abs() const { return num_ < 0 ? -*this : *this; }

Rational Rational::reciprocal() const {
  APDISC_ENSURE(num_ != 0, ErrorCode::PreconditionViolation, "numtheory",
                "reciprocal of zero");
  return from_wide(den_, num_);
}

std::int64_t Rational::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::int64_t Rational::nearest() const noexcept {
  // |x - f| vs 1/2 decided on 2*num against (2f+1)*den.
  std::int64_t f = floor();
  i128 twice_rem = 2 * (static_cast<i128>(num_) - static_cast<i128>(f) * den_);
  if (twice_rem > den_) return f + 1;
  if (twice_rem < den_) return f;
  return f >= 0 ? f : f + 1;  // exact half: toward zero
}

Rational Rational::frac() const { return *this - Rational(floor()); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<i128>(a.num_) * b.den_ +
                                 static_cast<i128>(b.num_) * a.den_,
                             static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<i128>(a.num_) * b.den_ -
                                 static_cast<i128>(b.num_) * a.den_,
                             static_cast<i128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<i128>(a.num_) * b.num_,
                             static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  APDISC_ENSURE(b.num_ != 0, ErrorCode::PreconditionViolation, "numtheory",
                "division by zero");
  return Rational::from_wide(static_cast<i128>(a.num_) * b.den_,
                             static_cast<i128>(a.den_) * b.num_);
}

Rational Rational::operator-() const {
  return from_wide(-static_cast<i128>(num_), den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  i128 lhs = static_cast<i128>(a.num_) * b.den_;
  i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int Rational::compare_square(std::int64_t c) const noexcept {
  // num^2 vs c * den^2; den^2 < 2^126 only when den < 2^63, and c * den^2 can
  // exceed 128 bits, so compare num^2 / den against c * den via division.
  i128 n2 = static_cast<i128>(num_) * num_;
  i128 d = den_;
  i128 q = n2 / d;
  i128 r = n2 % d;
  i128 rhs = static_cast<i128>(c) * d;
  if (q != rhs) return q < rhs ? -1 : 1;
  return r > 0 ? 1 : 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace apdisc
