#include "apdisc/numtheory.hpp"

#include <cmath>
#include <numeric>

#include "apdisc/error.hpp"

namespace apdisc {

std::int64_t gcd(std::int64_t x, std::int64_t y) {
  APDISC_ENSURE(x >= 0 && y >= 0, ErrorCode::PreconditionViolation, "numtheory",
                "gcd of negative argument");
  APDISC_ENSURE(x != 0 || y != 0, ErrorCode::PreconditionViolation, "numtheory",
                "gcd(0, 0) is undefined");
  return std::gcd(x, y);
}

InversePair mod_inverse_pair(std::int64_t a, std::int64_t delta) {
  APDISC_ENSURE(delta >= 2, ErrorCode::DegenerateModulus, "numtheory",
                "modulus must be at least 2, got " + std::to_string(delta));
  std::int64_t r = a % delta;
  if (r < 0) r += delta;
  APDISC_ENSURE(r != 0 && std::gcd(r, delta) == 1, ErrorCode::NotCoprime, "numtheory",
                std::to_string(a) + " is not invertible modulo " + std::to_string(delta));

  // Extended Euclid on (r, delta): tracks x with x * r = rem (mod delta).
  std::int64_t old_rem = r, rem = delta;
  std::int64_t old_x = 1, x = 0;
  while (rem != 0) {
    std::int64_t q = old_rem / rem;
    std::int64_t t = old_rem - q * rem;
    old_rem = rem;
    rem = t;
    t = old_x - q * x;
    old_x = x;
    x = t;
  }
  std::int64_t k = old_x % delta;
  if (k < 0) k += delta;
  return {k, delta - k};
}

DirichletWitness dirichlet_approx(const Rational& alpha, std::int64_t k) {
  APDISC_ENSURE(k >= 1, ErrorCode::PreconditionViolation, "numtheory",
                "dirichlet_approx needs k >= 1");
  const Rational bound(1, k);
  for (std::int64_t delta = 1; delta <= k; ++delta) {
    Rational scaled = alpha * Rational(delta);
    std::int64_t a = scaled.nearest();
    Rational err = (scaled - Rational(a)).abs();
    if (err < bound) return {delta, a, err};
  }
  throw Error(ErrorCode::InternalInvariantViolation, "numtheory",
              "pigeonhole scan found no delta for alpha=" + alpha.to_string() +
                  ", k=" + std::to_string(k));
}

std::vector<std::int64_t> totatives(std::int64_t delta) {
  APDISC_ENSURE(delta >= 1, ErrorCode::PreconditionViolation, "numtheory",
                "totatives needs delta >= 1");
  std::vector<std::int64_t> out;
  for (std::int64_t b = 1; b <= delta; ++b)
    if (std::gcd(b, delta) == 1) out.push_back(b);
  return out;
}

std::int64_t floor_sqrt(std::int64_t x) {
  APDISC_ENSURE(x >= 0, ErrorCode::PreconditionViolation, "numtheory",
                "sqrt of negative");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && static_cast<i128>(r) * r > x) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::int64_t ceil_sqrt(std::int64_t x) {
  std::int64_t r = floor_sqrt(x);
  return static_cast<i128>(r) * r == x ? r : r + 1;
}

std::int64_t ceil_sqrt_div(std::int64_t x, std::int64_t q) {
  APDISC_ENSURE(q >= 1, ErrorCode::PreconditionViolation, "numtheory",
                "ceil_sqrt_div needs q >= 1");
  // q L is an integer, so q L >= sqrt(x) iff q L >= ceil(sqrt(x)).
  return ceil_div(ceil_sqrt(x), q);
}

}  // namespace apdisc
