#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "apdisc/family.hpp"
#include "apdisc/hypergraph.hpp"

namespace apdisc {

enum class DiscMethod { Exhaustive, LocalSearch, Random };

std::string_view to_string(DiscMethod m);

inline constexpr std::int64_t kExactMaxN = 24;

// Result of a discrepancy run. For the witness coloring the true
// disc(H, chi) lies in [disc_lower, disc_value]; the two coincide whenever the
// canonical edges were scanned exhaustively (N <= 64).
struct DiscReport {
  std::int64_t n = 0;
  DiscMethod method = DiscMethod::Exhaustive;
  std::int64_t disc_value = 0;
  std::int64_t disc_lower = 0;
  bool exact_scan = true;        // disc_value is the exact max over canonical edges
  std::optional<Coloring> witness_coloring;
  std::optional<std::uint64_t> witness_edge_mask;  // attaining edge, N <= 64
  std::int64_t edge_count = 0;
  bool edge_count_is_lower_bound = false;  // count_ap_sets() instead of enumeration
  std::int64_t trials = 0;
  std::int64_t restarts = 0;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const DiscReport& r);

// Per-coloring averaging bound over the family E0.
struct TwoNormBound {
  std::int64_t n = 0;
  std::int64_t total = 0;          // S = sum_E sum_a chi(E_a)^2
  std::int64_t family_size = 0;
  double derived_disc_lb = 0.0;    // sqrt(S / (2 N |E0|))
  SumEdge witness_edge;
  std::int64_t witness_offset = 0;
  std::int64_t witness_value = 0;  // chi(witness_edge + witness_offset)
};

nlohmann::json to_json(const TwoNormBound& b);

// S via autocorrelations; asserts 90000 S >= N^3 and that the returned
// witness exceeds sqrt(N) / 1200.
TwoNormBound two_norm_lower(const Coloring& chi, const FamilyE0& family, unsigned threads = 1);

// S by summing chi(E_a)^2 over every translate directly.
std::int64_t two_norm_total_direct(const Coloring& chi, const FamilyE0& family);

// Exact disc over canonical edges, N <= 24.
DiscReport exact_discrepancy(std::int64_t n);

// Single-flip hill climbing with restarts, N <= 64.
DiscReport local_search_upper(std::int64_t n, std::int64_t restarts, std::uint64_t seed);

// Best of `trials` uniform colorings. Exact scan for N <= 64; beyond that the
// report carries the bounds max(#plus, #minus) >= disc(H, chi) >= max over
// arithmetic progressions.
DiscReport random_coloring_upper(std::int64_t n, std::int64_t trials, std::uint64_t seed);

// max over all arithmetic progressions inside [N] of |chi(P)|.
std::int64_t max_ap_imbalance(const Coloring& chi);

}  // namespace apdisc
