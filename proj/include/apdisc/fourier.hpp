#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "apdisc/hypergraph.hpp"
#include "apdisc/rational.hpp"

namespace apdisc {

// Transforms use f^(alpha) = sum_z f(z) e^{2 pi i z alpha}. Phases are reduced
// modulo 1 in exact integer arithmetic before any trigonometric call.

using Complex = std::complex<double>;

struct FourierPoint {
  Rational alpha;
  Complex value;
};

// Uniform quadrature grid t/m, t in [0, m).
struct GridSpec {
  std::int64_t m = 1;
};

// e^{2 pi i z alpha}
Complex unit_phase(std::int64_t z, const Rational& alpha);

// sum_{j < len} e^{2 pi i j step alpha}, closed form.
Complex geometric_sum(std::int64_t step, std::int64_t len, const Rational& alpha);

// sum_{z in E} e^{2 pi i z alpha}. Collision-free edges use the product of the
// two geometric sums; others sum over the element set.
Complex indicator_fourier(const SumEdge& e, const Rational& alpha);
Complex indicator_fourier_direct(const SumEdge& e, const Rational& alpha);

Complex coloring_fourier(const Coloring& chi, const Rational& alpha);

// sum_a |chi(a + E)|^2 by the direct translate loop. This is the reference.
std::int64_t sum_sq_disc(const Coloring& chi, const SumEdge& e);

// R(h) = sum_z chi(z) chi(z + h) for h in [0, N-1].
std::vector<std::int64_t> autocorrelation(const Coloring& chi);

// sum_a |chi(a + E)|^2 = sum_{x, y in E} R(x - y), from a precomputed R.
std::int64_t sum_sq_disc_fast(const SumEdge& e, std::span<const std::int64_t> corr);

// chi^(t/m) for all t in [0, m).
std::vector<Complex> coloring_spectrum(const Coloring& chi, GridSpec grid);

// (1/m) sum_t |chi^(t/m)|^2 sum_E |1^_E(t/m)|^2
double quadrature_sum_sq(const Coloring& chi, std::span<const SumEdge> edges, GridSpec grid);

// |LHS - RHS| / LHS for LHS = sum_sq_disc and RHS its grid quadrature.
// Requires m > 2 (N + max E).
double parseval_check(const Coloring& chi, const SumEdge& e, GridSpec grid);

// |1^_E(t/m)| for t in [0, m).
std::vector<FourierPoint> indicator_spectrum(const SumEdge& e, GridSpec grid);

}  // namespace apdisc
