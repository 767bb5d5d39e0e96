#include "apdisc/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "apdisc/error.hpp"
#include "apdisc/fourier.hpp"
#include "apdisc/parallel.hpp"
#include "apdisc/rational.hpp"

namespace apdisc {
namespace {

constexpr const char* kModule = "solver";

void check(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InternalInvariantViolation, kModule, what);
}

// Edge ids containing z, indexed by z - 1.
std::vector<std::vector<std::uint32_t>> incidence(std::int64_t n,
                                                  const std::vector<std::uint64_t>& masks) {
  std::vector<std::vector<std::uint32_t>> inc(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < masks.size(); ++e) {
    for (std::uint64_t m = masks[e]; m != 0; m &= m - 1)
      inc[static_cast<std::size_t>(std::countr_zero(m))].push_back(static_cast<std::uint32_t>(e));
  }
  return inc;
}

// Does a coloring with chi(1) = +1 keep every edge within [-bound, bound]?
class BoundedSearch {
 public:
  BoundedSearch(std::int64_t n, const std::vector<std::uint64_t>& masks)
      : n_(n), inc_(incidence(n, masks)), sum_(masks.size(), 0), rem_(masks.size(), 0),
        chi_(static_cast<std::size_t>(n), 0) {
    for (std::size_t e = 0; e < masks.size(); ++e) rem_[e] = std::popcount(masks[e]);
  }

  bool run(std::int64_t bound) {
    bound_ = bound;
    return descend(0);
  }

  Coloring coloring() const { return Coloring(chi_); }

 private:
  bool descend(std::size_t z) {
    if (z == static_cast<std::size_t>(n_)) return true;
    for (std::int8_t c : {std::int8_t{1}, std::int8_t{-1}}) {
      if (z == 0 && c < 0) break;  // chi and -chi have equal discrepancy
      bool ok = true;
      for (auto e : inc_[z]) {
        sum_[e] += c;
        --rem_[e];
        if (std::abs(sum_[e]) - rem_[e] > bound_) ok = false;
      }
      chi_[z] = c;
      if (ok && descend(z + 1)) return true;
      for (auto e : inc_[z]) {
        sum_[e] -= c;
        ++rem_[e];
      }
    }
    chi_[z] = 0;
    return false;
  }

  std::int64_t n_;
  std::vector<std::vector<std::uint32_t>> inc_;
  std::vector<int> sum_;
  std::vector<int> rem_;
  std::vector<std::int8_t> chi_;
  std::int64_t bound_ = 0;
};

// Index in [0, bound) from raw generator output, portable across standard libraries.
std::size_t draw_index(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

struct Objective {
  std::int64_t max = 0;
  std::int64_t count = 0;
  friend auto operator<=>(const Objective&, const Objective&) = default;
};

Objective objective_of(const std::vector<std::int64_t>& hist) {
  for (std::int64_t v = static_cast<std::int64_t>(hist.size()) - 1; v >= 0; --v)
    if (hist[static_cast<std::size_t>(v)] > 0) return {v, hist[static_cast<std::size_t>(v)]};
  return {0, 0};
}

}  // namespace

std::string_view to_string(DiscMethod m) {
  switch (m) {
    case DiscMethod::Exhaustive: return "exhaustive";
    case DiscMethod::LocalSearch: return "local_search";
    case DiscMethod::Random: return "random";
  }
  return "unknown";
}

nlohmann::json to_json(const DiscReport& r) {
  nlohmann::json j{{"n", r.n},
                   {"method", to_string(r.method)},
                   {"disc_value", r.disc_value},
                   {"disc_lower", r.disc_lower},
                   {"exact_scan", r.exact_scan},
                   {"edge_count", r.edge_count},
                   {"edge_count_is_lower_bound", r.edge_count_is_lower_bound},
                   {"trials", r.trials},
                   {"restarts", r.restarts},
                   {"seed", r.seed}};
  if (r.witness_coloring) j["witness_coloring"] = *r.witness_coloring;
  if (r.witness_edge_mask) {
    std::vector<std::int64_t> elems;
    for (std::uint64_t m = *r.witness_edge_mask; m != 0; m &= m - 1) elems.push_back(std::countr_zero(m) + 1);
    j["witness_edge"] = elems;
  }
  return j;
}

nlohmann::json to_json(const TwoNormBound& b) {
  return {{"n", b.n},
          {"total", b.total},
          {"family_size", b.family_size},
          {"derived_disc_lb", b.derived_disc_lb},
          {"witness_edge", b.witness_edge},
          {"witness_offset", b.witness_offset},
          {"witness_value", b.witness_value}};
}

TwoNormBound two_norm_lower(const Coloring& chi, const FamilyE0& family, unsigned threads) {
  APDISC_ENSURE(family.n == chi.n(), ErrorCode::FamilyMismatch, kModule,
                "family built for N=" + std::to_string(family.n) + " but coloring has N=" +
                    std::to_string(chi.n()));
  const std::int64_t n = chi.n();
  const auto edges = family.all_edges();
  APDISC_ENSURE(!edges.empty(), ErrorCode::PreconditionViolation, kModule, "family is empty");
  const auto corr = autocorrelation(chi);

  std::vector<std::int64_t> per_edge(edges.size());
  parallel_for(edges.size(), threads,
               [&](std::size_t i) { per_edge[i] = sum_sq_disc_fast(edges[i], corr); });

  i128 total = 0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < per_edge.size(); ++i) {
    total += per_edge[i];
    if (per_edge[i] > per_edge[best]) best = i;
  }
  APDISC_ENSURE(total <= std::numeric_limits<std::int64_t>::max(), ErrorCode::Overflow, kModule,
                "S exceeds int64");

  TwoNormBound out;
  out.n = n;
  out.total = static_cast<std::int64_t>(total);
  out.family_size = static_cast<std::int64_t>(edges.size());
  const i128 slots = static_cast<i128>(2 * n) * out.family_size;
  out.derived_disc_lb = std::sqrt(static_cast<double>(out.total) / static_cast<double>(slots));

  check(total * 90000 >= static_cast<i128>(n) * n * n,
        "S=" + std::to_string(out.total) + " below N^3/90000");

  const SumEdge& e = edges[best];
  const auto values = translate_values(chi, e);
  std::size_t arg = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (std::abs(values[i]) > std::abs(values[arg])) arg = i;
  out.witness_edge = e;
  out.witness_offset = 1 - e.max_element() + static_cast<std::int64_t>(arg);
  out.witness_value = values[arg];

  const i128 w2 = static_cast<i128>(out.witness_value) * out.witness_value;
  check(w2 * slots >= total, "witness below the averaging bound");
  check(w2 * 1200 * 1200 > n, "witness |chi(E_a)| <= sqrt(N)/1200");
  return out;
}

std::int64_t two_norm_total_direct(const Coloring& chi, const FamilyE0& family) {
  APDISC_ENSURE(family.n == chi.n(), ErrorCode::FamilyMismatch, kModule,
                "family and coloring disagree on N");
  std::int64_t total = 0;
  for (const auto& e : family.all_edges()) total += sum_sq_disc(chi, e);
  return total;
}

DiscReport exact_discrepancy(std::int64_t n) {
  APDISC_ENSURE(n >= 1, ErrorCode::PreconditionViolation, kModule, "N must be >= 1");
  APDISC_ENSURE(n <= kExactMaxN, ErrorCode::CapExceeded, kModule,
                "exact search supports N <= " + std::to_string(kExactMaxN));
  const auto masks = enumerate_canonical_edges(n);
  BoundedSearch search(n, masks);
  DiscReport r;
  r.n = n;
  r.method = DiscMethod::Exhaustive;
  r.edge_count = static_cast<std::int64_t>(masks.size());
  for (std::int64_t bound = 1;; ++bound) {
    if (search.run(bound)) {
      const Coloring chi = search.coloring();
      const auto best = max_edge_imbalance(masks, chi.plus_mask());
      check(best.value == bound, "exact witness does not attain the searched bound");
      r.disc_value = r.disc_lower = bound;
      r.witness_coloring = chi;
      r.witness_edge_mask = best.mask;
      return r;
    }
  }
}

DiscReport local_search_upper(std::int64_t n, std::int64_t restarts, std::uint64_t seed) {
  APDISC_ENSURE(n >= 1, ErrorCode::PreconditionViolation, kModule, "N must be >= 1");
  APDISC_ENSURE(restarts >= 1, ErrorCode::PreconditionViolation, kModule, "restarts must be >= 1");
  const auto masks = enumerate_canonical_edges(n);
  const auto inc = incidence(n, masks);
  std::mt19937_64 rng(seed);

  std::optional<Coloring> best;
  Objective best_obj{};
  std::vector<int> sum(masks.size());
  std::vector<std::int64_t> hist(static_cast<std::size_t>(n) + 1);
  std::vector<std::int64_t> order(static_cast<std::size_t>(n));

  for (std::int64_t rs = 0; rs < restarts; ++rs) {
    Coloring chi = Coloring::random(n, rng);
    const std::uint64_t plus = chi.plus_mask();
    std::fill(hist.begin(), hist.end(), 0);
    for (std::size_t e = 0; e < masks.size(); ++e) {
      sum[e] = 2 * std::popcount(masks[e] & plus) - std::popcount(masks[e]);
      ++hist[static_cast<std::size_t>(std::abs(sum[e]))];
    }
    Objective obj = objective_of(hist);

    auto apply = [&](std::int64_t z) {
      const int delta = -2 * chi(z);
      for (auto e : inc[static_cast<std::size_t>(z - 1)]) {
        --hist[static_cast<std::size_t>(std::abs(sum[e]))];
        sum[e] += delta;
        ++hist[static_cast<std::size_t>(std::abs(sum[e]))];
      }
      chi.flip(z);
    };

    for (bool improved = true; improved;) {
      improved = false;
      for (std::int64_t i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[draw_index(rng, i)]);
      for (auto z : order) {
        apply(z);
        const Objective trial = objective_of(hist);
        if (trial < obj) {
          obj = trial;
          improved = true;
        } else {
          apply(z);
        }
      }
    }
    if (!best || obj < best_obj) {
      best = chi;
      best_obj = obj;
    }
  }

  const auto verified = max_edge_imbalance(masks, best->plus_mask());
  check(verified.value == best_obj.max, "re-verification scan disagrees with local search");
  DiscReport r;
  r.n = n;
  r.method = DiscMethod::LocalSearch;
  r.disc_value = r.disc_lower = verified.value;
  r.witness_coloring = best;
  r.witness_edge_mask = verified.mask;
  r.edge_count = static_cast<std::int64_t>(masks.size());
  r.restarts = restarts;
  r.seed = seed;
  return r;
}

DiscReport random_coloring_upper(std::int64_t n, std::int64_t trials, std::uint64_t seed) {
  APDISC_ENSURE(n >= 1, ErrorCode::PreconditionViolation, kModule, "N must be >= 1");
  APDISC_ENSURE(trials >= 1, ErrorCode::PreconditionViolation, kModule, "trials must be >= 1");
  std::mt19937_64 rng(seed);
  DiscReport r;
  r.n = n;
  r.method = DiscMethod::Random;
  r.trials = trials;
  r.seed = seed;

  if (n <= kDefaultEnumerationCap) {
    const auto masks = enumerate_canonical_edges(n);
    r.edge_count = static_cast<std::int64_t>(masks.size());
    for (std::int64_t t = 0; t < trials; ++t) {
      Coloring chi = Coloring::random(n, rng);
      const auto m = max_edge_imbalance(masks, chi.plus_mask());
      if (!r.witness_coloring || m.value < r.disc_value) {
        r.disc_value = r.disc_lower = m.value;
        r.witness_coloring = std::move(chi);
        r.witness_edge_mask = m.mask;
      }
    }
    return r;
  }

  // Every edge is a subset of [N], so |chi(E)| <= max(#plus, #minus).
  r.exact_scan = false;
  r.edge_count = count_ap_sets(n);
  r.edge_count_is_lower_bound = true;
  for (std::int64_t t = 0; t < trials; ++t) {
    Coloring chi = Coloring::random(n, rng);
    const std::int64_t upper = (n + std::abs(chi.imbalance())) / 2;
    if (!r.witness_coloring || upper < r.disc_value) {
      r.disc_value = upper;
      r.witness_coloring = std::move(chi);
    }
  }
  r.disc_lower = max_ap_imbalance(*r.witness_coloring);
  check(r.disc_lower <= r.disc_value, "AP lower bound exceeds the upper bound");
  return r;
}

std::int64_t max_ap_imbalance(const Coloring& chi) {
  const std::int64_t n = chi.n();
  std::int64_t best = n >= 1 ? 1 : 0;
  for (std::int64_t d = 1; d < n; ++d) {
    for (std::int64_t a = 1; a <= d; ++a) {
      // Best contiguous block of the chain a, a + d, ... is max - min prefix.
      std::int64_t prefix = 0, lo = 0, hi = 0;
      for (std::int64_t z = a; z <= n; z += d) {
        prefix += chi(z);
        lo = std::min(lo, prefix);
        hi = std::max(hi, prefix);
      }
      best = std::max(best, hi - lo);
    }
  }
  return best;
}

}  // namespace apdisc
