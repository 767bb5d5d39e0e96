#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "apdisc/hypergraph.hpp"

namespace apdisc {

struct FamilyConfig {
  std::int64_t n = 1;
};

enum class SubFamily { E1 = 1, E2 = 2, E3 = 3 };

// Admissible second differences for (delta1, b, k): the residue class
// b + 4^k delta1 Z inside the open interval (2^k sqrt N, 2^{k+1} sqrt N + 4^k delta1).
struct MSet {
  std::int64_t delta1 = 1;
  std::int64_t b = 1;
  std::int64_t k = 0;
  std::vector<std::int64_t> members;
};

struct FamilyEdge {
  SumEdge edge;
  SubFamily sub = SubFamily::E1;
  std::int64_t delta1 = 0;
  std::int64_t k = -1;  // E3 only
  std::int64_t b = 0;   // E3 only
};

// The special family E0 = E1 u E2 u E3 on [N]. Edge lists keep construction
// order; the same quadruple never occurs twice within a sub-family.
struct FamilyE0 {
  std::int64_t n = 0;
  std::vector<SumEdge> e1;
  std::vector<SumEdge> e2;
  std::vector<FamilyEdge> e3;
  // Edges dropped because they would leave [0, N-1], with a note each.
  std::vector<std::string> clipped;

  std::size_t size() const noexcept { return e1.size() + e2.size() + e3.size(); }
  std::vector<SumEdge> all_edges() const;
  bool contains(const SumEdge& e, SubFamily sub) const;
};

// Lengths and level bounds, with sqrt(N) handled exactly.
std::int64_t k_bar(std::int64_t n, std::int64_t delta1);
std::int64_t e1_length(std::int64_t n, std::int64_t delta1);  // ceil(N / (6 delta1))
std::int64_t e2_length1(std::int64_t n, std::int64_t delta1);  // ceil(N / (12 delta1))
std::int64_t e2_length2(std::int64_t delta1);                  // ceil((delta1 - 1) / 12)
std::int64_t e3_length1(std::int64_t n, std::int64_t k);       // ceil(2^k sqrt N / 12)
std::int64_t e3_length2(std::int64_t n, std::int64_t k);       // ceil(2^-k sqrt N / 12)

// Exact membership test for M(b, k) given delta1.
bool in_m_set(std::int64_t n, std::int64_t delta1, std::int64_t b, std::int64_t k,
              std::int64_t x);

MSet build_m_set(std::int64_t n, std::int64_t delta1, std::int64_t b, std::int64_t k);

// From this N on, build_family asserts |E3| <= 6N, |E1 u E2| < N and
// |E0| <= 7N. Below it E1 alone has 24 edges.
inline constexpr std::int64_t kCountBoundMinN = 25;

FamilyE0 build_family(const FamilyConfig& cfg);

struct FamilyStats {
  std::int64_t n = 0;
  std::int64_t count_e1 = 0;
  std::int64_t count_e2 = 0;
  std::int64_t count_e3 = 0;
  std::int64_t max_element = 0;
  std::int64_t min_size_e2 = 0;  // 0 when E2 is empty
  std::int64_t min_size_e3 = 0;  // 0 when E3 is empty
  std::int64_t clipped = 0;
};

FamilyStats family_stats(const FamilyE0& f);

void to_json(nlohmann::json& j, const FamilyStats& s);
nlohmann::json to_json(const FamilyEdge& fe);

// One JSON record per line: {"sub":..,"d1":..,"l1":..,"d2":..,"l2":..,"delta1":..,"k":..,"b":..}
void write_family_jsonl(std::ostream& os, const FamilyE0& f);
// Columns: sub,d1,l1,d2,l2,delta1,k,b
void write_family_csv(std::ostream& os, const FamilyE0& f);

}  // namespace apdisc
