#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace apdisc {

using i128 = __int128;

// Exact fraction num/den, always stored reduced with den > 0.
// Arithmetic is carried out in 128-bit intermediates; a result that does not
// fit back into 64 bits raises ErrorCode::Overflow.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT implicit
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  // "p/q" or "p"; decimal notation is rejected.
  static Rational parse(std::string_view text);
  std::string to_string() const;
  double to_double() const noexcept;

  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }
  Rational abs() const;
  Rational reciprocal() const;
  std::int64_t floor() const noexcept;
  std::int64_t ceil() const noexcept;
  // Nearest integer, halves rounded toward zero.
  std::int64_t nearest() const noexcept;
  // Representative in [0, 1).
  Rational frac() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

  // Sign of this^2 - c, exactly. Used to compare against irrational sqrt(c).
  int compare_square(std::int64_t c) const noexcept;

 private:
  static Rational from_wide(i128 num, i128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace apdisc
