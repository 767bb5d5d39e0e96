#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apdisc/hypergraph.hpp"
#include "apdisc/rational.hpp"

namespace apdisc {

// Smallest N for which certify() runs. Below it E2's delta1 range and the
// length formulas no longer behave as the three-case analysis needs.
inline constexpr std::int64_t kMinN = 576;

enum class CaseTag { Case1 = 1, Case2 = 2, Case3 = 3 };

struct Delta1Choice {
  std::int64_t delta1 = 1;
  std::int64_t a1 = 0;
};

// Smallest delta1 <= floor(sqrt N) with |delta1 alpha - a1| < N^{-1/2}, reduced.
Delta1Choice select_delta1(const Rational& alpha, std::int64_t n);

CaseTag classify_case(const Rational& alpha, std::int64_t delta1, std::int64_t a1,
                      std::int64_t n);

// Witness that some E in E0 has |1^_E(alpha)| >= N/300, with the Diophantine
// data that produced it.
struct Certificate {
  Rational alpha;
  std::int64_t n = 0;
  CaseTag case_tag = CaseTag::Case1;
  std::int64_t delta1 = 1;
  std::int64_t a1 = 0;
  // Case 2 and Case 3.
  std::optional<std::int64_t> delta2;
  std::optional<std::int64_t> a2;
  // Case 3 only. gamma is absent when delta1 = 1.
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> s;
  std::optional<std::int64_t> gamma;
  std::optional<std::int64_t> b;
  std::optional<Rational> d;
  std::optional<std::int64_t> mu;
  SumEdge edge;
  std::int64_t edge_size = 0;
  double certified_bound = 0.0;  // N/288 (cases 1, 3) or N/300 (case 2)
  double measured = 0.0;         // |1^_E(alpha)|
  double tolerance = 0.0;
};

// Absolute slack for measured-vs-bound comparisons; structural checks are exact.
double certify_tolerance(std::int64_t n);

Certificate certify(const Rational& alpha, std::int64_t n);

nlohmann::json to_json(const Certificate& c);

// --- Sweeps -----------------------------------------------------------------

// t/grid for t in [0, grid).
std::vector<Rational> grid_points(std::int64_t grid);
// Uniform random fractions p/q with q <= max_den.
std::vector<Rational> random_points(std::int64_t count, std::int64_t max_den, std::uint64_t seed);
// Points at and around the case boundaries: a/delta, a/delta +- 1/N,
// a/delta +- N^{-1/2} delta^{-1} and the dyadic level edges, each also nudged
// by a tiny rational.
std::vector<Rational> adversarial_points(std::int64_t n);

struct SweepRow {
  Rational alpha;
  bool ok = false;
  std::optional<Certificate> cert;
  std::string error;  // set when certify threw
};

// Certifies every point; a row is ok when certify succeeded and
// measured >= N/300 - tolerance.
std::vector<SweepRow> sweep(std::int64_t n, const std::vector<Rational>& points,
                            unsigned threads = 0);

}  // namespace apdisc
