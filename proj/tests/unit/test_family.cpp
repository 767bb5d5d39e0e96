#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "apdisc/error.hpp"
#include "apdisc/family.hpp"
#include "apdisc/numtheory.hpp"

using apdisc::SubFamily;

namespace {

std::vector<std::int64_t> m_set_scan(std::int64_t n, std::int64_t delta1, std::int64_t b, std::int64_t k) {
  const long double root = std::sqrt(static_cast<long double>(n));
  const long double lo = std::ldexp(root, static_cast<int>(k));
  const std::int64_t step = (std::int64_t{1} << (2 * k)) * delta1;
  const long double hi = 2 * lo + static_cast<long double>(step);
  std::vector<std::int64_t> out;
  for (std::int64_t x = 1; x < hi + 1; ++x)
    if ((x - b) % step == 0 && x > lo && x < hi) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("M set examples at N=100") {
  auto m = apdisc::build_m_set(100, 1, 1, 0);
  std::vector<std::int64_t> expect(10);
  std::iota(expect.begin(), expect.end(), 11);
  CHECK(m.members == expect);
  m = apdisc::build_m_set(100, 10, 1, 0);
  CHECK(m.members == std::vector<std::int64_t>{11, 21});
}

TEST_CASE("M sets match a direct interval scan") {
  for (std::int64_t n : {100, 101, 576, 999, 1024, 5000}) {
    for (std::int64_t d1 = 1; d1 * d1 <= n; d1 += 3) {
      for (std::int64_t k = 0; k <= apdisc::k_bar(n, d1); ++k) {
        for (auto b : apdisc::totatives(d1)) {
          const auto m = apdisc::build_m_set(n, d1, b, k);
          CHECK(m.members == m_set_scan(n, d1, b, k));
          CHECK(static_cast<long double>(m.members.size()) <=
                3.0L * std::sqrt(static_cast<long double>(n)) / std::ldexp(1.0L, static_cast<int>(k)) / d1 + 1);
        }
      }
    }
  }
}

TEST_CASE("M set spacing and level sizes") {
  for (std::int64_t n : {100, 1000, 10000}) {
    for (std::int64_t d1 = 1; d1 * d1 <= n; ++d1) {
      for (std::int64_t k = 0; k <= apdisc::k_bar(n, d1); ++k) {
        const std::int64_t step = (std::int64_t{1} << (2 * k)) * d1;
        CHECK(step * step <= (std::int64_t{1} << (2 * k)) * n);  // step <= 2^k sqrt N
        std::size_t level = 0;
        for (auto b : apdisc::totatives(d1)) {
          const auto m = apdisc::build_m_set(n, d1, b, k);
          for (std::size_t i = 1; i < m.members.size(); ++i) CHECK(m.members[i] - m.members[i - 1] == step);
          level += m.members.size();
        }
        CHECK(static_cast<long double>(level) <=
              3.0L * std::sqrt(static_cast<long double>(n)) / std::ldexp(1.0L, static_cast<int>(k)));
      }
    }
  }
}

TEST_CASE("M set preconditions") {
  try {
    apdisc::build_m_set(100, 1, 1, 4);
    FAIL("expected BadK");
  } catch (const apdisc::Error& e) {
    CHECK(e.code() == apdisc::ErrorCode::BadK);
  }
  CHECK_THROWS_AS(apdisc::build_m_set(100, 6, 2, 0), apdisc::Error);
  CHECK_THROWS_AS(apdisc::build_m_set(100, 11, 1, 0), apdisc::Error);
}

TEST_CASE("length formulas") {
  for (std::int64_t n = 1; n <= 3000; n += 13) {
    for (std::int64_t d1 = 1; d1 * d1 <= n; ++d1) {
      const auto kb = apdisc::k_bar(n, d1);
      CHECK((std::int64_t{1} << (2 * kb)) * d1 * d1 <= n);
      CHECK((std::int64_t{1} << (2 * kb + 2)) * d1 * d1 > n);
      CHECK(apdisc::e1_length(n, d1) == (n + 6 * d1 - 1) / (6 * d1));
      CHECK(apdisc::e2_length1(n, d1) == (n + 12 * d1 - 1) / (12 * d1));
    }
    for (std::int64_t k = 0; k <= 5; ++k) {
      const std::int64_t p = std::int64_t{1} << (2 * k);
      const auto l1 = apdisc::e3_length1(n, k);
      CHECK(144 * l1 * l1 >= p * n);
      CHECK(144 * (l1 - 1) * (l1 - 1) < p * n);
      const auto l2 = apdisc::e3_length2(n, k);
      CHECK(144 * p * l2 * l2 >= n);
      CHECK(144 * p * (l2 - 1) * (l2 - 1) < n);
    }
  }
  CHECK(apdisc::e2_length2(25) == 2);
  CHECK(apdisc::e2_length2(13) == 1);
}

TEST_CASE("family at N=100") {
  const auto f = apdisc::build_family({100});
  CHECK(f.e1.size() == 24);
  CHECK(f.e2.empty());
  CHECK(f.e3.size() == 126);
  CHECK(f.e3.size() <= 600);
  CHECK(f.clipped.empty());
  CHECK(f.contains({1, 17, 1, 1}, SubFamily::E1));
  CHECK(f.contains({1, 1, 11, 1}, SubFamily::E3));
  CHECK_FALSE(f.contains({1, 17, 1, 1}, SubFamily::E3));
  for (const auto& fe : f.e3) CHECK(f.contains(fe.edge, SubFamily::E3));

  const auto s = apdisc::family_stats(f);
  CHECK(s.count_e1 == 24);
  CHECK(s.count_e2 == 0);
  CHECK(s.count_e3 == 126);
  CHECK(s.max_element == 16);
}

TEST_CASE("family at N=1 keeps its degenerate edges inside [0, N-1]") {
  const auto f = apdisc::build_family({1});
  CHECK(f.e1.size() == 24);
  CHECK(f.clipped.empty());
  for (const auto& e : f.all_edges()) CHECK(e.max_element() == 0);
}

TEST_CASE("family edges follow their definitions") {
  for (std::int64_t n : {600, 1024, 2000}) {
    const auto f = apdisc::build_family({n});
    const auto root = apdisc::floor_sqrt(n);
    for (const auto& e : f.e2) {
      CHECK(e.d1 >= 25);
      CHECK(e.d1 <= root);
      CHECK(e.d2 < e.d1);
      CHECK(e.l1 == apdisc::e2_length1(n, e.d1));
      CHECK(e.l2 == apdisc::e2_length2(e.d1));
    }
    for (const auto& fe : f.e3) {
      CHECK(std::gcd(fe.edge.d1, fe.edge.d2) == 1);
      CHECK(apdisc::in_m_set(n, fe.delta1, fe.b, fe.k, fe.edge.d2));
      CHECK(fe.edge.l1 == apdisc::e3_length1(n, fe.k));
      CHECK(fe.edge.l2 == apdisc::e3_length2(n, fe.k));
    }
    for (const auto& e : f.all_edges()) CHECK(e.max_element() <= n - 1);
  }
}

TEST_CASE("family counts stay within their bounds") {
  for (std::int64_t n = apdisc::kCountBoundMinN; n <= 3000; n += 37) {
    const auto f = apdisc::build_family({n});
    const auto e12 = static_cast<std::int64_t>(f.e1.size() + f.e2.size());
    CHECK(static_cast<std::int64_t>(f.e3.size()) <= 6 * n);
    CHECK(e12 < n);
    CHECK(static_cast<std::int64_t>(f.size()) <= 7 * n);
  }
}

TEST_CASE("family export formats") {
  const auto f = apdisc::build_family({100});
  std::ostringstream csv, jsonl;
  apdisc::write_family_csv(csv, f);
  apdisc::write_family_jsonl(jsonl, f);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "sub,d1,l1,d2,l2,delta1,k,b");
  int rows = 0, e1_rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.rfind("1,", 0) == 0) ++e1_rows;
  }
  CHECK(rows == 150);
  CHECK(e1_rows == 24);
  std::istringstream jl(jsonl.str());
  std::getline(jl, line);
  const auto first = nlohmann::json::parse(line);
  CHECK(first.at("sub") == 1);
  CHECK(first.at("d1") == 1);
  CHECK(first.at("l1") == 17);
}
