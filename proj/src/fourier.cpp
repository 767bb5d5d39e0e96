#include "apdisc/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apdisc/error.hpp"
#include "apdisc/numtheory.hpp"

namespace apdisc {
namespace {

// (z * p) mod q in [0, q).
std::int64_t phase_residue(std::int64_t z, const Rational& alpha) {
  i128 r = static_cast<i128>(z) * alpha.num() % alpha.den();
  if (r < 0) r += alpha.den();
  return static_cast<std::int64_t>(r);
}

Complex phase_of(std::int64_t residue, std::int64_t den) {
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(residue) / static_cast<double>(den);
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace

Complex unit_phase(std::int64_t z, const Rational& alpha) {
  return phase_of(phase_residue(z, alpha), alpha.den());
}

Complex geometric_sum(std::int64_t step, std::int64_t len, const Rational& alpha) {
  if (len <= 0) return {0.0, 0.0};
  const std::int64_t r = phase_residue(step, alpha);
  if (r == 0) return {static_cast<double>(len), 0.0};
  // (1 - w^len) / (1 - w) with w = e^{2 pi i theta};
  // 1 - e^{2 pi i phi} = -2i sin(pi phi) e^{i pi phi}.
  const std::int64_t r_len = phase_residue(step * len, alpha);
  // Signed residues keep sin(pi theta) away from cancellation near theta = 1.
  const auto centered = [&](std::int64_t x) { return 2 * x > alpha.den() ? x - alpha.den() : x; };
  const double den = static_cast<double>(alpha.den());
  const double theta = static_cast<double>(centered(r)) / den;
  const double theta_len = static_cast<double>(centered(r_len)) / den;
  const double pi = std::numbers::pi;
  const double mag = std::sin(pi * theta_len) / std::sin(pi * theta);
  const double arg = pi * (theta_len - theta);
  return {mag * std::cos(arg), mag * std::sin(arg)};
}

Complex indicator_fourier(const SumEdge& e, const Rational& alpha) {
  if (edge_cardinality(e).collision_free)
    return geometric_sum(e.d1, e.l1, alpha) * geometric_sum(e.d2, e.l2, alpha);
  return indicator_fourier_direct(e, alpha);
}

Complex indicator_fourier_direct(const SumEdge& e, const Rational& alpha) {
  Complex s{0.0, 0.0};
  for (auto x : edge_elements(e)) s += unit_phase(x, alpha);
  return s;
}

Complex coloring_fourier(const Coloring& chi, const Rational& alpha) {
  Complex s{0.0, 0.0};
  for (std::int64_t z = 1; z <= chi.n(); ++z) s += static_cast<double>(chi(z)) * unit_phase(z, alpha);
  return s;
}

std::int64_t sum_sq_disc(const Coloring& chi, const SumEdge& e) {
  std::int64_t total = 0;
  for (auto v : translate_values(chi, e)) total += v * v;
  return total;
}

std::vector<std::int64_t> autocorrelation(const Coloring& chi) {
  const auto v = chi.values();
  const std::size_t n = v.size();
  std::vector<std::int64_t> r(n, 0);
  for (std::size_t h = 0; h < n; ++h) {
    std::int64_t s = 0;
    for (std::size_t z = 0; z + h < n; ++z) s += v[z] * v[z + h];
    r[h] = s;
  }
  return r;
}

std::int64_t sum_sq_disc_fast(const SumEdge& e, std::span<const std::int64_t> corr) {
  const auto n = static_cast<std::int64_t>(corr.size());
  auto at = [&](std::int64_t h) { return h < 0 ? (-h < n ? corr[-h] : 0) : (h < n ? corr[h] : 0); };

  if (!edge_cardinality(e).collision_free) {
    const auto elems = edge_elements(e);
    std::int64_t total = static_cast<std::int64_t>(elems.size()) * at(0);
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < elems.size() && elems[j] - elems[i] < n; ++j)
        total += 2 * at(elems[j] - elems[i]);
    return total;
  }

  // Grid differences (u, v) occur (l1 - |u|)(l2 - |v|) times each.
  std::int64_t total = 0;
  for (std::int64_t u = -(e.l1 - 1); u < e.l1; ++u) {
    const std::int64_t base = u * e.d1;
    const std::int64_t w1 = e.l1 - (u < 0 ? -u : u);
    // |base + v d2| < n
    const std::int64_t v_lo = std::max(-(e.l2 - 1), ceil_div(-n + 1 - base, e.d2));
    const std::int64_t v_hi = std::min(e.l2 - 1, floor_div(n - 1 - base, e.d2));
    for (std::int64_t v = v_lo; v <= v_hi; ++v)
      total += w1 * (e.l2 - (v < 0 ? -v : v)) * at(base + v * e.d2);
  }
  return total;
}

std::vector<Complex> coloring_spectrum(const Coloring& chi, GridSpec grid) {
  APDISC_ENSURE(grid.m >= 1, ErrorCode::PreconditionViolation, "fourier", "grid needs m >= 1");
  std::vector<Complex> out(static_cast<std::size_t>(grid.m));
  for (std::int64_t t = 0; t < grid.m; ++t) {
    Complex s{0.0, 0.0};
    for (std::int64_t z = 1; z <= chi.n(); ++z) {
      const auto r = static_cast<std::int64_t>(static_cast<i128>(z) * t % grid.m);
      s += static_cast<double>(chi(z)) * phase_of(r, grid.m);
    }
    out[static_cast<std::size_t>(t)] = s;
  }
  return out;
}

double quadrature_sum_sq(const Coloring& chi, std::span<const SumEdge> edges, GridSpec grid) {
  std::int64_t max_e = 0;
  for (const auto& e : edges) max_e = std::max(max_e, e.max_element());
  APDISC_ENSURE(grid.m > 2 * (chi.n() + max_e), ErrorCode::GridTooCoarse, "fourier",
                "grid m=" + std::to_string(grid.m) + " must exceed 2(N + max E)=" +
                    std::to_string(2 * (chi.n() + max_e)));
  const auto spec = coloring_spectrum(chi, grid);
  double total = 0.0;
  for (std::int64_t t = 0; t < grid.m; ++t) {
    const Rational alpha(t, grid.m);
    double weight = 0.0;
    for (const auto& e : edges) weight += std::norm(indicator_fourier(e, alpha));
    total += std::norm(spec[static_cast<std::size_t>(t)]) * weight;
  }
  return total / static_cast<double>(grid.m);
}

double parseval_check(const Coloring& chi, const SumEdge& e, GridSpec grid) {
  const auto lhs = static_cast<double>(sum_sq_disc(chi, e));
  const double rhs = quadrature_sum_sq(chi, std::span<const SumEdge>(&e, 1), grid);
  return std::abs(lhs - rhs) / lhs;
}

std::vector<FourierPoint> indicator_spectrum(const SumEdge& e, GridSpec grid) {
  APDISC_ENSURE(grid.m >= 1, ErrorCode::PreconditionViolation, "fourier", "grid needs m >= 1");
  std::vector<FourierPoint> out;
  out.reserve(static_cast<std::size_t>(grid.m));
  for (std::int64_t t = 0; t < grid.m; ++t) {
    const Rational alpha(t, grid.m);
    out.push_back({alpha, indicator_fourier(e, alpha)});
  }
  return out;
}

}  // namespace apdisc
