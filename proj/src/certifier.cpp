#include "apdisc/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "apdisc/error.hpp"
#include "apdisc/family.hpp"
#include "apdisc/fourier.hpp"
#include "apdisc/numtheory.hpp"
#include "apdisc/parallel.hpp"

namespace apdisc {
namespace {

constexpr const char* kModule = "certifier";
constexpr std::int64_t kCase1MaxDelta = 24;

void check(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InternalInvariantViolation, kModule, what);
}

std::int64_t pow4(std::int64_t k) { return std::int64_t{1} << (2 * k); }

// |delta alpha - a| <= 1 / (12 (len - 1)), vacuous for len = 1.
bool phase_condition(const Rational& alpha, std::int64_t delta, std::int64_t a,
                     std::int64_t len) {
  if (len <= 1) return true;
  const Rational dist = (alpha * Rational(delta) - Rational(a)).abs();
  return dist * Rational(12 * (len - 1)) <= Rational(1);
}

}  // namespace

Delta1Choice select_delta1(const Rational& alpha, std::int64_t n) {
  APDISC_ENSURE(alpha >= Rational(0) && alpha < Rational(1), ErrorCode::PreconditionViolation,
                kModule, "alpha must lie in [0, 1), got " + alpha.to_string());
  APDISC_ENSURE(n >= 1, ErrorCode::PreconditionViolation, kModule, "N must be >= 1");
  // Dirichlet with Q = floor(sqrt N) gives a distance <= 1/(Q + 1) < N^{-1/2},
  // so the scan below always succeeds.
  const std::int64_t root = floor_sqrt(n);
  for (std::int64_t delta = 1; delta <= root; ++delta) {
    const Rational scaled = alpha * Rational(delta);
    const std::int64_t a = scaled.nearest();
    const Rational dist = (scaled - Rational(a)).abs();
    // dist < N^{-1/2}  <=>  (dist N)^2 < N
    if ((dist * Rational(n)).compare_square(n) < 0) {
      const std::int64_t g = std::gcd(a < 0 ? -a : a, delta);
      return {delta / g, a / g};
    }
  }
  throw Error(ErrorCode::InternalInvariantViolation, kModule,
              "no delta1 <= sqrt(N) found for alpha=" + alpha.to_string());
}

CaseTag classify_case(const Rational& alpha, std::int64_t delta1, std::int64_t a1,
                      std::int64_t n) {
  const Rational eps = (alpha - Rational(a1, delta1)).abs();
  if (eps < Rational(1, n)) return delta1 <= kCase1MaxDelta ? CaseTag::Case1 : CaseTag::Case2;
  return CaseTag::Case3;
}

double certify_tolerance(std::int64_t n) { return 1e-6 * static_cast<double>(n); }

Certificate certify(const Rational& alpha, std::int64_t n) {
  APDISC_ENSURE(n >= kMinN, ErrorCode::BelowMinN, kModule,
                "N=" + std::to_string(n) + " is below the minimum " + std::to_string(kMinN));
  const auto [delta1, a1] = select_delta1(alpha, n);
  const std::int64_t root = floor_sqrt(n);

  Certificate c;
  c.alpha = alpha;
  c.n = n;
  c.delta1 = delta1;
  c.a1 = a1;
  c.tolerance = certify_tolerance(n);
  c.case_tag = classify_case(alpha, delta1, a1, n);

  const Rational offset = alpha - Rational(a1, delta1);
  const Rational eps = offset.abs();
  check(delta1 >= 1 && delta1 <= root, "delta1 outside [1, sqrt N]");
  check(std::gcd(a1 < 0 ? -a1 : a1, delta1) == 1, "a1/delta1 not reduced");
  check((eps * Rational(delta1 * n)).compare_square(n) < 0,
        "|alpha - a1/delta1| >= N^{-1/2} / delta1");

  switch (c.case_tag) {
    case CaseTag::Case1: {
      const std::int64_t l1 = e1_length(n, delta1);
      c.edge = {delta1, l1, 1, 1};
      // Every phase j1 (delta1 alpha - a1) stays within 1/6 of an integer.
      check((eps * Rational(delta1)) * Rational(l1 - 1) <= Rational(1, 6),
            "case 1 phase exceeds 1/6");
      c.certified_bound = static_cast<double>(n) / 288.0;
      break;
    }
    case CaseTag::Case2: {
      check(delta1 > kCase1MaxDelta, "case 2 with delta1 <= 24");
      const auto w = dirichlet_approx(alpha, delta1 - 1);
      const std::int64_t delta2 = w.delta;
      const std::int64_t a2 = w.a;
      c.delta2 = delta2;
      c.a2 = a2;
      check(delta2 >= 1 && delta2 < delta1, "delta2 outside [delta1 - 1]");
      check((alpha - Rational(a2, delta2)).abs() <= Rational(1, (delta1 - 1) * delta2),
            "|alpha - a2/delta2| > 1/((delta1 - 1) delta2)");
      check(std::gcd(delta1, delta2) == 1, "gcd(delta1, delta2) != 1 in case 2");
      const std::int64_t l1 = e2_length1(n, delta1);
      const std::int64_t l2 = e2_length2(delta1);
      c.edge = {delta1, l1, delta2, l2};
      check(l2 <= delta1, "injectivity condition fails in case 2");
      check(phase_condition(alpha, delta1, a1, l1), "phase condition fails for delta1");
      check(phase_condition(alpha, delta2, a2, l2), "phase condition fails for delta2");
      check(150 * l1 * l2 >= n, "case 2 |E| < N/150");
      c.certified_bound = static_cast<double>(n) / 300.0;
      break;
    }
    case CaseTag::Case3: {
      // t = 1/(eps delta1) lies in (2^k sqrt N, 2^{k+1} sqrt N].
      const Rational t = (eps * Rational(delta1)).reciprocal();
      check(t.compare_square(n) > 0, "t <= sqrt N in case 3");
      std::int64_t k = 0;
      while (t.compare_square(pow4(k + 1) * n) > 0) ++k;
      check(k <= k_bar(n, delta1), "level k exceeds k_bar");
      const std::int64_t s = offset.sign();
      std::int64_t b = 1;
      if (delta1 > 1) {
        const auto inv = mod_inverse_pair(a1, delta1);
        c.gamma = inv.k;
        b = s > 0 ? inv.k_neg : inv.k;
      }
      // b a1 / delta1 = mu - s / delta1
      const std::int64_t mu_num = b * a1 + s;
      check(mu_num % delta1 == 0, "b a1 + s not divisible by delta1");
      const std::int64_t mu = mu_num / delta1;
      const std::int64_t step = pow4(k) * delta1;
      const Rational d = (t - Rational(b)) / Rational(step);
      const std::int64_t delta2 = b + d.ceil() * step;
      const std::int64_t a2 = mu + d.ceil() * pow4(k) * a1;
      const std::int64_t l1 = e3_length1(n, k);
      const std::int64_t l2 = e3_length2(n, k);
      c.k = k;
      c.s = s;
      c.b = b;
      c.d = d;
      c.mu = mu;
      c.delta2 = delta2;
      c.a2 = a2;
      c.edge = {delta1, l1, delta2, l2};
      check(in_m_set(n, delta1, b, k, delta2), "delta2 not in M(b, k)");
      check(std::gcd(delta1, delta2) == 1, "gcd(delta1, delta2) != 1 in case 3");
      check(delta2 > l1, "delta2 <= L1 in case 3");
      check(phase_condition(alpha, delta1, a1, l1), "phase condition fails for delta1");
      check(phase_condition(alpha, delta2, a2, l2), "phase condition fails for delta2");
      check(144 * l1 * l2 >= n, "case 3 |E| < N/144");
      c.certified_bound = static_cast<double>(n) / 288.0;
      break;
    }
  }

  const auto card = edge_cardinality(c.edge);
  check(card.collision_free, "certified edge has collisions");
  check(c.edge.max_element() <= n - 1, "certified edge leaves [0, N-1]");
  c.edge_size = card.value;
  c.measured = std::abs(indicator_fourier(c.edge, alpha));
  const double direct = std::abs(indicator_fourier_direct(c.edge, alpha));
  check(std::abs(c.measured - direct) <= 1e-9 * std::max(1.0, direct),
        "factorized and direct transforms disagree");
  check(c.measured >= c.certified_bound - c.tolerance,
        "measured " + std::to_string(c.measured) + " below certified bound " +
            std::to_string(c.certified_bound));
  return c;
}

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j{{"alpha", c.alpha.to_string()},
                   {"n", c.n},
                   {"case", static_cast<int>(c.case_tag)},
                   {"delta1", c.delta1},
                   {"a1", c.a1},
                   {"edge", c.edge},
                   {"edge_size", c.edge_size},
                   {"certified_bound", c.certified_bound},
                   {"measured", c.measured},
                   {"tolerance", c.tolerance}};
  auto put = [&](const char* key, const std::optional<std::int64_t>& v) {
    if (v) j[key] = *v;
  };
  put("delta2", c.delta2);
  put("a2", c.a2);
  put("k", c.k);
  put("s", c.s);
  put("gamma", c.gamma);
  put("b", c.b);
  put("mu", c.mu);
  if (c.d) j["d"] = c.d->to_string();
  return j;
}

// --- Sweeps -------------------------------------------------------------------

std::vector<Rational> grid_points(std::int64_t grid) {
  APDISC_ENSURE(grid >= 1, ErrorCode::PreconditionViolation, kModule, "grid must be >= 1");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(grid));
  for (std::int64_t t = 0; t < grid; ++t) out.emplace_back(t, grid);
  return out;
}

std::vector<Rational> random_points(std::int64_t count, std::int64_t max_den, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    const auto q = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_den)) + 1;
    const auto p = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
    out.emplace_back(p, q);
  }
  return out;
}

std::vector<Rational> adversarial_points(std::int64_t n) {
  const std::int64_t root = floor_sqrt(n);
  // Rational stand-ins for N^{-1/2} just below and above it.
  const Rational inv_root_lo(1, ceil_sqrt(n));
  const Rational inv_root_hi(1, root);
  const Rational nudge(1, 1000 * n * n);
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::vector<Rational> out;
  auto add = [&](const Rational& x) {
    const Rational r = x.frac();
    if (seen.emplace(r.num(), r.den()).second) out.push_back(r);
  };
  for (std::int64_t delta = 1; delta <= root; ++delta) {
    for (std::int64_t a = 0; a < delta; ++a) {
      if (std::gcd(a, delta) != 1) continue;
      const Rational center(a, delta);
      std::vector<Rational> radii{Rational(0), Rational(1, n)};
      // Level edges 2^{-k} N^{-1/2} / delta for k = 0..k_bar.
      for (std::int64_t k = 0; (std::int64_t{1} << k) * delta <= root; ++k) {
        const Rational scale(1, (std::int64_t{1} << k) * delta);
        radii.push_back(inv_root_lo * scale);
        if (inv_root_hi != inv_root_lo) radii.push_back(inv_root_hi * scale);
      }
      for (const auto& r : radii) {
        for (int sign : {-1, 1}) {
          const Rational base = center + Rational(sign) * r;
          add(base);
          add(base + nudge);
          add(base - nudge);
        }
      }
    }
  }
  return out;
}

std::vector<SweepRow> sweep(std::int64_t n, const std::vector<Rational>& points, unsigned threads) {
  std::vector<SweepRow> rows(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.alpha = points[i];
    try {
      row.cert = certify(points[i], n);
      row.ok = row.cert->measured >= static_cast<double>(n) / 300.0 - row.cert->tolerance;
    } catch (const Error& e) {
      row.error = std::string(to_string(e.code())) + ": " + e.what();
    }
  });
  return rows;
}

}  // namespace apdisc
