#include "apdisc/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>

#include "apdisc/error.hpp"
#include "apdisc/numtheory.hpp"

namespace apdisc {

std::vector<std::int64_t> APSpec::elements() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(len));
  for (std::int64_t j = 0; j < len; ++j) out.push_back(start + j * diff);
  return out;
}

void to_json(nlohmann::json& j, const SumEdge& e) {
  j = nlohmann::json{{"d1", e.d1}, {"l1", e.l1}, {"d2", e.d2}, {"l2", e.l2}};
}

void from_json(const nlohmann::json& j, SumEdge& e) {
  j.at("d1").get_to(e.d1);
  j.at("l1").get_to(e.l1);
  j.at("d2").get_to(e.d2);
  j.at("l2").get_to(e.l2);
  APDISC_ENSURE(e.d1 >= 1 && e.l1 >= 1 && e.d2 >= 1 && e.l2 >= 1,
                ErrorCode::ParseError, "hypergraph", "edge fields must be positive");
}

std::vector<std::int64_t> edge_elements(const SumEdge& e) {
  const std::int64_t span = e.max_element() + 1;
  std::vector<std::int64_t> out;
  if (span <= 64 * e.grid_size() + 64) {
    std::vector<char> seen(static_cast<std::size_t>(span), 0);
    for (std::int64_t j2 = 0; j2 < e.l2; ++j2)
      for (std::int64_t j1 = 0; j1 < e.l1; ++j1)
        seen[static_cast<std::size_t>(j1 * e.d1 + j2 * e.d2)] = 1;
    for (std::int64_t x = 0; x < span; ++x)
      if (seen[static_cast<std::size_t>(x)]) out.push_back(x);
    return out;
  }
  out.reserve(static_cast<std::size_t>(e.grid_size()));
  for (std::int64_t j2 = 0; j2 < e.l2; ++j2)
    for (std::int64_t j1 = 0; j1 < e.l1; ++j1) out.push_back(j1 * e.d1 + j2 * e.d2);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Cardinality edge_cardinality(const SumEdge& e) {
  const std::int64_t g = std::gcd(e.d1, e.d2);
  if (e.l1 * g <= e.d2 || e.l2 * g <= e.d1) return {e.grid_size(), true};
  const auto n = static_cast<std::int64_t>(edge_elements(e).size());
  return {n, n == e.grid_size()};
}

// --- Coloring ---------------------------------------------------------------

Coloring::Coloring(std::vector<std::int8_t> values) : values_(std::move(values)) {
  APDISC_ENSURE(!values_.empty(), ErrorCode::PreconditionViolation, "hypergraph",
                "coloring needs N >= 1");
  for (auto v : values_)
    APDISC_ENSURE(v == 1 || v == -1, ErrorCode::PreconditionViolation, "hypergraph",
                  "coloring values must be +1 or -1");
}

Coloring Coloring::all_plus(std::int64_t n) {
  return Coloring(std::vector<std::int8_t>(static_cast<std::size_t>(n), 1));
}

Coloring Coloring::alternating(std::int64_t n) {
  std::vector<std::int8_t> v(static_cast<std::size_t>(n));
  for (std::int64_t z = 1; z <= n; ++z) v[static_cast<std::size_t>(z - 1)] = (z % 2 == 0) ? 1 : -1;
  return Coloring(std::move(v));
}

Coloring Coloring::blocks(std::int64_t n, std::int64_t block) {
  APDISC_ENSURE(block >= 1, ErrorCode::PreconditionViolation, "hypergraph",
                "block length must be positive");
  std::vector<std::int8_t> v(static_cast<std::size_t>(n));
  for (std::int64_t z = 1; z <= n; ++z)
    v[static_cast<std::size_t>(z - 1)] = ((z - 1) / block) % 2 == 0 ? 1 : -1;
  return Coloring(std::move(v));
}

Coloring Coloring::random(std::int64_t n, std::mt19937_64& rng) {
  std::vector<std::int8_t> v(static_cast<std::size_t>(n));
  std::uint64_t bits = 0;
  int left = 0;
  for (auto& x : v) {
    if (left == 0) {
      bits = rng();
      left = 64;
    }
    x = (bits & 1) ? 1 : -1;
    bits >>= 1;
    --left;
  }
  return Coloring(std::move(v));
}

Coloring Coloring::from_mask(std::int64_t n, std::uint64_t plus_mask) {
  APDISC_ENSURE(n >= 1 && n <= 64, ErrorCode::PreconditionViolation, "hypergraph",
                "mask colorings support 1 <= N <= 64");
  std::vector<std::int8_t> v(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = ((plus_mask >> i) & 1) ? 1 : -1;
  return Coloring(std::move(v));
}

std::int64_t Coloring::imbalance() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), std::int64_t{0});
}

std::uint64_t Coloring::plus_mask() const {
  APDISC_ENSURE(n() <= 64, ErrorCode::PreconditionViolation, "hypergraph",
                "plus_mask needs N <= 64");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] > 0) m |= std::uint64_t{1} << i;
  return m;
}

void to_json(nlohmann::json& j, const Coloring& c) {
  std::vector<int> v(c.values().begin(), c.values().end());
  j = nlohmann::json{{"n", c.n()}, {"values", v}};
}

void from_json(const nlohmann::json& j, Coloring& c) {
  const auto n = j.at("n").get<std::int64_t>();
  auto raw = j.at("values").get<std::vector<int>>();
  APDISC_ENSURE(static_cast<std::int64_t>(raw.size()) == n, ErrorCode::ParseError,
                "hypergraph", "coloring length does not match n");
  std::vector<std::int8_t> v;
  v.reserve(raw.size());
  for (int x : raw) {
    APDISC_ENSURE(x == 1 || x == -1, ErrorCode::ParseError, "hypergraph",
                  "coloring values must be +1 or -1");
    v.push_back(static_cast<std::int8_t>(x));
  }
  c = Coloring(std::move(v));
}

std::int64_t color_value(const Coloring& chi, const SumEdge& e, std::int64_t a) {
  std::int64_t s = 0;
  for (auto x : edge_elements(e)) s += chi(a + x);
  return s;
}

std::vector<std::int64_t> translate_values(const Coloring& chi, const SumEdge& e) {
  const auto elems = edge_elements(e);
  const std::int64_t lo = 1 - e.max_element();
  std::vector<std::int64_t> out(static_cast<std::size_t>(chi.n() - lo + 1), 0);
  for (std::int64_t a = lo; a <= chi.n(); ++a) {
    std::int64_t s = 0;
    for (auto x : elems) s += chi(a + x);
    out[static_cast<std::size_t>(a - lo)] = s;
  }
  return out;
}

// --- Canonical enumeration ---------------------------------------------------

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t bit(std::int64_t z) { return std::uint64_t{1} << (z - 1); }

void compact(std::vector<std::uint64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<std::uint64_t> enumerate_canonical_edges(std::int64_t n, std::int64_t cap) {
  APDISC_ENSURE(n >= 1, ErrorCode::PreconditionViolation, "hypergraph", "N must be >= 1");
  APDISC_ENSURE(cap <= 64, ErrorCode::PreconditionViolation, "hypergraph",
                "enumeration cap cannot exceed the 64-bit mask width");
  APDISC_ENSURE(n <= cap, ErrorCode::CapExceeded, "hypergraph",
                "N=" + std::to_string(n) + " exceeds enumeration cap " + std::to_string(cap));

  std::vector<std::uint64_t> out;
  constexpr std::size_t kCompactAt = std::size_t{1} << 24;

  // One summand is {0}: plain progressions inside [N].
  for (std::int64_t a = 1; a <= n; ++a) {
    out.push_back(bit(a));
    for (std::int64_t d = 1; a + d <= n; ++d) {
      std::uint64_t m = bit(a);
      for (std::int64_t z = a + d; z <= n; z += d) {
        m |= bit(z);
        out.push_back(m);
      }
    }
  }

  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

  // Both lengths >= 2. With spans D_i = (l_i - 1) d_i, a minimal representative
  // has a + D1 and a + D2 both in [1, N].
  for (std::int64_t d1 = 1; d1 <= n; ++d1) {
    for (std::int64_t l1 = 2; l1 <= n; ++l1) {
      const std::int64_t span1 = (l1 - 1) * d1;
      for (std::int64_t d2 = 1; d2 <= n; ++d2) {
        const std::int64_t l2_lo = std::max<std::int64_t>(2, ceil_div(span1 - n + 1, d2) + 1);
        const std::int64_t l2_hi = std::min<std::int64_t>(n, (span1 + n - 1) / d2 + 1);
        for (std::int64_t l2 = l2_lo; l2 <= l2_hi; ++l2) {
          if (std::pair(d2, l2) < std::pair(d1, l1)) continue;  // mirror already visited
          const std::int64_t span2 = (l2 - 1) * d2;
          const std::int64_t lo = std::max(1 - span1, 1 - span2);
          const std::int64_t hi = std::min(n - span1, n - span2);
          if (lo > hi) continue;
          // Grid points x = j1 d1 + j2 d2 that land in [N] for some offset.
          const std::int64_t xlo = 1 - hi;
          const std::int64_t xhi = n - lo;
          u128 local = 0;
          for (std::int64_t j2 = 0; j2 < l2; ++j2) {
            const std::int64_t base = j2 * d2;
            if (base > xhi) break;
            std::int64_t j1 = std::max<std::int64_t>(0, ceil_div(xlo - base, d1));
            for (std::int64_t x = base + j1 * d1; j1 < l1 && x <= xhi; ++j1, x += d1)
              local |= u128{1} << (x - xlo);
          }
          for (std::int64_t a = lo; a <= hi; ++a) {
            const auto m = static_cast<std::uint64_t>(local >> (1 - a - xlo)) & full;
            out.push_back(m);
          }
          if (out.size() >= kCompactAt) compact(out);
        }
      }
    }
  }
  compact(out);
  return out;
}

std::int64_t count_ap_sets(std::int64_t n) {
  std::int64_t total = n;
  for (std::int64_t d = 1; d < n; ++d)
    for (std::int64_t span = d; span <= n - 1; span += d) total += n - span;
  return total;
}

EdgeMax max_edge_imbalance(std::span<const std::uint64_t> masks, std::uint64_t plus_mask) {
  EdgeMax best;
  for (auto m : masks) {
    const std::int64_t plus = std::popcount(m & plus_mask);
    const std::int64_t size = std::popcount(m);
    const std::int64_t v = std::abs(2 * plus - size);
    if (v > best.value || best.mask == 0) best = {v, m};
  }
  return best;
}

}  // namespace apdisc
