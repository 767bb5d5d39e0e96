#include <doctest.h>

#include <random>

#include "apdisc/error.hpp"
#include "apdisc/family.hpp"
#include "apdisc/solver.hpp"
#include "oracles.hpp"

using apdisc::Coloring;

TEST_CASE("exact discrepancy for the smallest N") {
  CHECK(apdisc::exact_discrepancy(1).disc_value == 1);
  CHECK(apdisc::exact_discrepancy(2).disc_value == 1);
}

TEST_CASE("exact discrepancy matches exhaustive coloring search") {
  for (std::int64_t n = 1; n <= 9; ++n) {
    const auto r = apdisc::exact_discrepancy(n);
    CHECK(r.disc_value == oracle::disc(n));
    REQUIRE(r.witness_coloring.has_value());
    const auto edges = oracle::canonical_edges(n);
    CHECK(oracle::coloring_disc(edges, n, r.witness_coloring->plus_mask()) == r.disc_value);
    CHECK(r.witness_coloring->values()[0] == 1);
  }
}

TEST_CASE("exact discrepancy table") {
  // Frozen from the search; N <= 12 also agrees with the exhaustive oracle.
  const std::int64_t table[] = {1, 1, 2, 2, 3, 3, 3, 3, 4, 4, 5, 4, 5, 5, 5, 5};
  for (std::int64_t n = 1; n <= 16; ++n) CHECK(apdisc::exact_discrepancy(n).disc_value == table[n - 1]);
}

TEST_CASE("truncated edges make the discrepancy non-monotone") {
  // (a + E) cap [11] need not be an edge on [12], so restricting colorings
  // gives no monotonicity.
  CHECK(oracle::disc(11) == 5);
  CHECK(oracle::disc(12) == 4);
  const auto e11 = oracle::canonical_edges(11);
  const auto e12 = oracle::canonical_edges(12);
  const std::uint64_t odd_run = 0b11111110101;  // {1,3,5,6,7,8,9,10,11}
  CHECK(e11.count(odd_run) == 1);
  CHECK(e12.count(odd_run) == 0);
}

TEST_CASE("exact discrepancy refuses large N") {
  try {
    apdisc::exact_discrepancy(25);
    FAIL("expected CapExceeded");
  } catch (const apdisc::Error& e) {
    CHECK(e.code() == apdisc::ErrorCode::CapExceeded);
  }
}

TEST_CASE("upper bounds never beat the exact value") {
  for (std::int64_t n = 1; n <= 12; ++n) {
    const auto exact = apdisc::exact_discrepancy(n).disc_value;
    const auto local = apdisc::local_search_upper(n, 3, 1);
    const auto random = apdisc::random_coloring_upper(n, 20, 1);
    CHECK(local.disc_value >= exact);
    CHECK(random.disc_value >= exact);
    const auto edges = oracle::canonical_edges(n);
    CHECK(oracle::coloring_disc(edges, n, local.witness_coloring->plus_mask()) == local.disc_value);
    CHECK(oracle::coloring_disc(edges, n, random.witness_coloring->plus_mask()) == random.disc_value);
  }
}

TEST_CASE("random colorings are deterministic for a fixed seed") {
  const auto a = apdisc::random_coloring_upper(20, 1, 42);
  const auto b = apdisc::random_coloring_upper(20, 1, 42);
  CHECK(apdisc::to_json(a) == apdisc::to_json(b));
  CHECK(apdisc::random_coloring_upper(1, 5, 3).disc_value == 1);
}

TEST_CASE("random colorings beyond the enumeration cap report bounds") {
  const auto r = apdisc::random_coloring_upper(100, 5, 9);
  CHECK_FALSE(r.exact_scan);
  CHECK(r.edge_count_is_lower_bound);
  CHECK(r.disc_lower <= r.disc_value);
  CHECK(r.disc_lower == apdisc::max_ap_imbalance(*r.witness_coloring));
  CHECK(r.disc_value == (100 + std::abs(r.witness_coloring->imbalance())) / 2);
}

TEST_CASE("max AP imbalance against direct enumeration") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto chi = Coloring::random(30, rng);
    std::int64_t best = 0;
    for (std::int64_t a = 1; a <= 30; ++a)
      for (std::int64_t d = 1; d <= 30; ++d) {
        std::int64_t s = 0;
        for (std::int64_t z = a; z <= 30; z += d) {
          s += chi(z);
          best = std::max(best, s < 0 ? -s : s);
        }
      }
    CHECK(apdisc::max_ap_imbalance(chi) == best);
  }
}

TEST_CASE("two-norm bound at N=576") {
  const auto f = apdisc::build_family({576});
  std::mt19937_64 rng(1);
  for (const auto& chi : {Coloring::all_plus(576), Coloring::random(576, rng)}) {
    const auto b = apdisc::two_norm_lower(chi, f);
    CHECK(b.total == apdisc::two_norm_total_direct(chi, f));
    CHECK(static_cast<double>(b.total) * 90000.0 >= 576.0 * 576.0 * 576.0);
    CHECK(std::abs(b.witness_value) >= b.derived_disc_lb);
    CHECK(apdisc::color_value(chi, b.witness_edge, b.witness_offset) == b.witness_value);
  }
}

TEST_CASE("two-norm total matches a brute-force translate sum") {
  const auto f = apdisc::build_family({40});
  std::mt19937_64 rng(6);
  const auto chi = Coloring::random(40, rng);
  std::int64_t ref = 0;
  for (const auto& e : f.all_edges()) ref += oracle::sum_sq(chi, e);
  CHECK(apdisc::two_norm_total_direct(chi, f) == ref);
}

TEST_CASE("two-norm rejects a family for another N") {
  const auto f = apdisc::build_family({600});
  try {
    apdisc::two_norm_lower(Coloring::all_plus(601), f);
    FAIL("expected FamilyMismatch");
  } catch (const apdisc::Error& e) {
    CHECK(e.code() == apdisc::ErrorCode::FamilyMismatch);
  }
}
