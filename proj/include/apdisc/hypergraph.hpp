#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <json.hpp>

namespace apdisc {

// {start + j * diff : 0 <= j < len}
struct APSpec {
  std::int64_t start = 0;
  std::int64_t diff = 1;
  std::int64_t len = 1;

  std::vector<std::int64_t> elements() const;
};

// E_{d1,l1,d2,l2} = {j1 d1 + j2 d2 : 0 <= j1 < l1, 0 <= j2 < l2}.
struct SumEdge {
  std::int64_t d1 = 1;
  std::int64_t l1 = 1;
  std::int64_t d2 = 1;
  std::int64_t l2 = 1;

  std::int64_t max_element() const noexcept { return (l1 - 1) * d1 + (l2 - 1) * d2; }
  std::int64_t grid_size() const noexcept { return l1 * l2; }

  friend auto operator<=>(const SumEdge&, const SumEdge&) = default;
};

void to_json(nlohmann::json& j, const SumEdge& e);
void from_json(const nlohmann::json& j, SumEdge& e);

std::vector<std::int64_t> edge_elements(const SumEdge& e);

struct Cardinality {
  std::int64_t value = 0;
  bool collision_free = false;
};

// |E|. Short-circuits to l1 * l2 when the injectivity condition
// l1 <= d2 / gcd(d1, d2) (or its mirror) holds, otherwise enumerates.
Cardinality edge_cardinality(const SumEdge& e);

// A +-1 coloring of [N] = {1..N}, read as 0 outside [N].
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::vector<std::int8_t> values);

  static Coloring all_plus(std::int64_t n);
  // chi(z) = (-1)^z
  static Coloring alternating(std::int64_t n);
  // Runs of `block` equal signs, alternating and starting with +1.
  static Coloring blocks(std::int64_t n, std::int64_t block);
  static Coloring random(std::int64_t n, std::mt19937_64& rng);
  // Bit z-1 of mask set means chi(z) = +1.
  static Coloring from_mask(std::int64_t n, std::uint64_t plus_mask);

  std::int64_t n() const noexcept { return static_cast<std::int64_t>(values_.size()); }
  int operator()(std::int64_t z) const noexcept {
    return (z >= 1 && z <= n()) ? values_[static_cast<std::size_t>(z - 1)] : 0;
  }
  void flip(std::int64_t z) { values_.at(static_cast<std::size_t>(z - 1)) *= -1; }
  std::span<const std::int8_t> values() const noexcept { return values_; }
  std::int64_t imbalance() const noexcept;
  std::uint64_t plus_mask() const;  // n <= 64

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<std::int8_t> values_;
};

void to_json(nlohmann::json& j, const Coloring& c);
void from_json(const nlohmann::json& j, Coloring& c);

// chi(a + E) = sum_{x in E} chi(a + x).
std::int64_t color_value(const Coloring& chi, const SumEdge& e, std::int64_t a);

struct TranslatedEdgeValue {
  SumEdge edge;
  std::int64_t offset = 0;
  std::int64_t value = 0;
};

// chi(a + E) for every offset a in [1 - max(E), N]; all other offsets give 0.
// Index i holds a = 1 - max(E) + i.
std::vector<std::int64_t> translate_values(const Coloring& chi, const SumEdge& e);

// --- Canonical hyperedges of H_2AP on [N] --------------------------------
//
// The distinct nonempty sets (A1 + A2) cap [N] with differences and lengths in
// [N], as bitmasks (bit z-1 <=> z in set). Only representatives whose end
// rows and columns of the (j1, j2) grid each reach into [N] are generated;
// every set has such a representative, which bounds offsets to O(N).

inline constexpr std::int64_t kDefaultEnumerationCap = 64;

std::vector<std::uint64_t> enumerate_canonical_edges(
    std::int64_t n, std::int64_t cap = kDefaultEnumerationCap);

// Number of distinct arithmetic progressions inside [N]; these are canonical
// edges (second summand {0}), so this is a lower bound on the canonical count.
std::int64_t count_ap_sets(std::int64_t n);

// max over canonical edges of |chi(E)|, with the attaining mask.
struct EdgeMax {
  std::int64_t value = 0;
  std::uint64_t mask = 0;
};
EdgeMax max_edge_imbalance(std::span<const std::uint64_t> masks, std::uint64_t plus_mask);

}  // namespace apdisc
