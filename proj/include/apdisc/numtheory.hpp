#pragma once

#include <cstdint>
#include <vector>

#include "apdisc/rational.hpp"

namespace apdisc {

// Greatest common divisor of two nonnegative integers, not both zero.
std::int64_t gcd(std::int64_t x, std::int64_t y);

// k and delta - k with k * a = 1 and (delta - k) * a = -1 modulo delta.
struct InversePair {
  std::int64_t k = 0;
  std::int64_t k_neg = 0;
};

InversePair mod_inverse_pair(std::int64_t a, std::int64_t delta);

// An approximation |delta * alpha - a| = err < 1/k with delta in [1, k].
struct DirichletWitness {
  std::int64_t delta = 0;
  std::int64_t a = 0;
  Rational err;
};

// Smallest qualifying delta, nearest a (halves toward zero). Exact O(k) scan.
DirichletWitness dirichlet_approx(const Rational& alpha, std::int64_t k);

// B(delta) = {b in [delta] : gcd(b, delta) = 1}, increasing. B(1) = {1}.
std::vector<std::int64_t> totatives(std::int64_t delta);

// Integer square roots, exact for the full uint64 range.
std::int64_t floor_sqrt(std::int64_t x);
std::int64_t ceil_sqrt(std::int64_t x);

// Smallest L with q * L >= sqrt(x) for q >= 1, i.e. ceil(sqrt(x) / q).
std::int64_t ceil_sqrt_div(std::int64_t x, std::int64_t q);

// ceil(p / q) for q > 0.
constexpr std::int64_t ceil_div(std::int64_t p, std::int64_t q) {
  return p >= 0 ? (p + q - 1) / q : -((-p) / q);
}

// floor(p / q) for q > 0.
constexpr std::int64_t floor_div(std::int64_t p, std::int64_t q) {
  return p >= 0 ? p / q : -ceil_div(-p, q);
}

}  // namespace apdisc
