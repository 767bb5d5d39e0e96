#include "apdisc/family.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <type_traits>

#include "apdisc/error.hpp"
#include "apdisc/numtheory.hpp"

namespace apdisc {
namespace {

constexpr std::int64_t kE1MaxDelta = 24;

std::int64_t pow4(std::int64_t k) { return std::int64_t{1} << (2 * k); }

bool fits(const SumEdge& e, std::int64_t n) { return e.max_element() <= n - 1; }

}  // namespace

std::int64_t k_bar(std::int64_t n, std::int64_t delta1) {
  APDISC_ENSURE(delta1 >= 1 && delta1 * delta1 <= n, ErrorCode::PreconditionViolation,
                "family", "k_bar needs 1 <= delta1 <= sqrt(N)");
  // Largest k with 2^k delta1 <= sqrt(N).
  std::int64_t k = 0;
  while (static_cast<i128>(pow4(k + 1)) * delta1 * delta1 <= n) ++k;
  return k;
}

std::int64_t e1_length(std::int64_t n, std::int64_t delta1) { return ceil_div(n, 6 * delta1); }
std::int64_t e2_length1(std::int64_t n, std::int64_t delta1) { return ceil_div(n, 12 * delta1); }
std::int64_t e2_length2(std::int64_t delta1) { return ceil_div(delta1 - 1, 12); }

std::int64_t e3_length1(std::int64_t n, std::int64_t k) { return ceil_sqrt_div(pow4(k) * n, 12); }

std::int64_t e3_length2(std::int64_t n, std::int64_t k) {
  return ceil_sqrt_div(n, 12 * (std::int64_t{1} << k));
}

bool in_m_set(std::int64_t n, std::int64_t delta1, std::int64_t b, std::int64_t k,
              std::int64_t x) {
  const std::int64_t step = pow4(k) * delta1;
  if (((x - b) % step + step) % step != 0) return false;
  // 2^k sqrt N < x
  if (x <= 0 || static_cast<i128>(x) * x <= static_cast<i128>(pow4(k)) * n) return false;
  // x < 2^{k+1} sqrt N + 4^k delta1
  const std::int64_t y = x - step;
  return y < 0 || static_cast<i128>(y) * y < static_cast<i128>(pow4(k + 1)) * n;
}

MSet build_m_set(std::int64_t n, std::int64_t delta1, std::int64_t b, std::int64_t k) {
  APDISC_ENSURE(delta1 >= 1 && delta1 * delta1 <= n, ErrorCode::PreconditionViolation,
                "family", "delta1 must lie in [1, sqrt(N)]");
  APDISC_ENSURE(b >= 1 && b <= delta1 && std::gcd(b, delta1) == 1,
                ErrorCode::PreconditionViolation, "family",
                "b must be a totative of delta1");
  APDISC_ENSURE(k >= 0 && k <= k_bar(n, delta1), ErrorCode::BadK, "family",
                "k=" + std::to_string(k) + " outside [0, k_bar]");

  MSet out{delta1, b, k, {}};
  const std::int64_t step = pow4(k) * delta1;
  const std::int64_t lowest = floor_sqrt(pow4(k) * n) + 1;  // smallest x > 2^k sqrt N
  std::int64_t x = b + ceil_div(lowest - b, step) * step;
  for (; in_m_set(n, delta1, b, k, x); x += step) out.members.push_back(x);
  return out;
}

std::vector<SumEdge> FamilyE0::all_edges() const {
  std::vector<SumEdge> out;
  out.reserve(size());
  out.insert(out.end(), e1.begin(), e1.end());
  out.insert(out.end(), e2.begin(), e2.end());
  for (const auto& fe : e3) out.push_back(fe.edge);
  return out;
}

bool FamilyE0::contains(const SumEdge& e, SubFamily sub) const {
  switch (sub) {
    case SubFamily::E1: return std::binary_search(e1.begin(), e1.end(), e);
    case SubFamily::E2: return std::binary_search(e2.begin(), e2.end(), e);
    case SubFamily::E3:
      return std::binary_search(e3.begin(), e3.end(), e,
                                [](const auto& lhs, const auto& rhs) {
                                  if constexpr (std::is_same_v<std::decay_t<decltype(lhs)>, SumEdge>)
                                    return lhs < rhs.edge;
                                  else
                                    return lhs.edge < rhs;
                                });
  }
  return false;
}

FamilyE0 build_family(const FamilyConfig& cfg) {
  const std::int64_t n = cfg.n;
  APDISC_ENSURE(n >= 1, ErrorCode::PreconditionViolation, "family", "N must be >= 1");
  FamilyE0 f;
  f.n = n;
  const std::int64_t root = floor_sqrt(n);

  for (std::int64_t d1 = 1; d1 <= kE1MaxDelta; ++d1) {
    SumEdge e{d1, e1_length(n, d1), 1, 1};
    if (fits(e, n)) {
      f.e1.push_back(e);
    } else {
      f.clipped.push_back("E1 delta1=" + std::to_string(d1) + " max element " +
                          std::to_string(e.max_element()) + " > N-1");
    }
  }

  for (std::int64_t d1 = kE1MaxDelta + 1; d1 <= root; ++d1) {
    const std::int64_t l1 = e2_length1(n, d1);
    const std::int64_t l2 = e2_length2(d1);
    for (std::int64_t d2 = 1; d2 < d1; ++d2) f.e2.push_back({d1, l1, d2, l2});
  }

  for (std::int64_t d1 = 1; d1 <= root; ++d1) {
    std::vector<FamilyEdge> level;
    const auto units = totatives(d1);
    const std::int64_t kmax = k_bar(n, d1);
    for (std::int64_t k = 0; k <= kmax; ++k) {
      const std::int64_t l1 = e3_length1(n, k);
      const std::int64_t l2 = e3_length2(n, k);
      for (auto b : units)
        for (auto d2 : build_m_set(n, d1, b, k).members)
          level.push_back({{d1, l1, d2, l2}, SubFamily::E3, d1, k, b});
    }
    // Sort by edge; ties keep the smallest level k.
    std::stable_sort(level.begin(), level.end(),
                     [](const FamilyEdge& a, const FamilyEdge& b) { return a.edge < b.edge; });
    level.erase(std::unique(level.begin(), level.end(),
                            [](const FamilyEdge& a, const FamilyEdge& b) { return a.edge == b.edge; }),
                level.end());
    f.e3.insert(f.e3.end(), level.begin(), level.end());
  }

  for (const auto& e : f.e2)
    APDISC_ENSURE(fits(e, n), ErrorCode::ContainmentViolation, "family",
                  "E2 edge leaves [0, N-1]");
  for (const auto& fe : f.e3)
    APDISC_ENSURE(fits(fe.edge, n), ErrorCode::ContainmentViolation, "family",
                  "E3 edge leaves [0, N-1]");
  if (n >= kCountBoundMinN) {
    const auto e12 = static_cast<std::int64_t>(f.e1.size() + f.e2.size());
    const auto e3 = static_cast<std::int64_t>(f.e3.size());
    APDISC_ENSURE(e3 <= 6 * n, ErrorCode::InternalInvariantViolation, "family", "|E3| > 6N");
    APDISC_ENSURE(e12 < n, ErrorCode::InternalInvariantViolation, "family", "|E1 u E2| >= N");
    APDISC_ENSURE(e12 + e3 <= 7 * n, ErrorCode::InternalInvariantViolation, "family", "|E0| > 7N");
  }
  return f;
}

FamilyStats family_stats(const FamilyE0& f) {
  FamilyStats s;
  s.n = f.n;
  s.count_e1 = static_cast<std::int64_t>(f.e1.size());
  s.count_e2 = static_cast<std::int64_t>(f.e2.size());
  s.count_e3 = static_cast<std::int64_t>(f.e3.size());
  s.clipped = static_cast<std::int64_t>(f.clipped.size());
  for (const auto& e : f.all_edges()) s.max_element = std::max(s.max_element, e.max_element());
  for (const auto& e : f.e2) {
    const auto c = edge_cardinality(e).value;
    s.min_size_e2 = s.min_size_e2 == 0 ? c : std::min(s.min_size_e2, c);
  }
  for (const auto& fe : f.e3) {
    const auto c = edge_cardinality(fe.edge).value;
    s.min_size_e3 = s.min_size_e3 == 0 ? c : std::min(s.min_size_e3, c);
  }
  return s;
}

void to_json(nlohmann::json& j, const FamilyStats& s) {
  j = nlohmann::json{{"n", s.n},
                     {"count_e1", s.count_e1},
                     {"count_e2", s.count_e2},
                     {"count_e3", s.count_e3},
                     {"count_e0", s.count_e1 + s.count_e2 + s.count_e3},
                     {"max_element", s.max_element},
                     {"min_size_e2", s.min_size_e2},
                     {"min_size_e3", s.min_size_e3},
                     {"clipped", s.clipped}};
}

nlohmann::json to_json(const FamilyEdge& fe) {
  return nlohmann::json{{"sub", static_cast<int>(fe.sub)},
                        {"d1", fe.edge.d1},
                        {"l1", fe.edge.l1},
                        {"d2", fe.edge.d2},
                        {"l2", fe.edge.l2},
                        {"delta1", fe.delta1},
                        {"k", fe.k},
                        {"b", fe.b}};
}

namespace {

template <typename Fn>
void for_each_record(const FamilyE0& f, Fn&& fn) {
  for (const auto& e : f.e1) fn(FamilyEdge{e, SubFamily::E1, e.d1, -1, 0});
  for (const auto& e : f.e2) fn(FamilyEdge{e, SubFamily::E2, e.d1, -1, 0});
  for (const auto& fe : f.e3) fn(fe);
}

}  // namespace

void write_family_jsonl(std::ostream& os, const FamilyE0& f) {
  for_each_record(f, [&](const FamilyEdge& fe) { os << to_json(fe).dump() << '\n'; });
}

void write_family_csv(std::ostream& os, const FamilyE0& f) {
  os << "sub,d1,l1,d2,l2,delta1,k,b\n";
  for_each_record(f, [&](const FamilyEdge& fe) {
    os << static_cast<int>(fe.sub) << ',' << fe.edge.d1 << ',' << fe.edge.l1 << ','
       << fe.edge.d2 << ',' << fe.edge.l2 << ',' << fe.delta1 << ',' << fe.k << ',' << fe.b
       << '\n';
  });
}

}  // namespace apdisc
