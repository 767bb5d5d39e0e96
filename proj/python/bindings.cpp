#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "apdisc/certifier.hpp"
#include "apdisc/error.hpp"
#include "apdisc/family.hpp"
#include "apdisc/fourier.hpp"
#include "apdisc/hypergraph.hpp"
#include "apdisc/numtheory.hpp"
#include "apdisc/solver.hpp"

namespace py = pybind11;

namespace {

apdisc::SumEdge to_edge(const std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>& t) {
  const auto [d1, l1, d2, l2] = t;
  APDISC_ENSURE(d1 >= 1 && l1 >= 1 && d2 >= 1 && l2 >= 1, apdisc::ErrorCode::PreconditionViolation,
                "hypergraph", "edge parameters must be positive");
  return {d1, l1, d2, l2};
}

apdisc::Coloring to_coloring(const std::vector<int>& values) {
  std::vector<std::int8_t> v(values.begin(), values.end());
  return apdisc::Coloring(std::move(v));
}

}  // namespace

PYBIND11_MODULE(_apdisc, m) {
  m.doc() = "Discrepancy of sums of two arithmetic progressions";

  static py::exception<apdisc::Error> error(m, "ApdiscError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const apdisc::Error& e) {
      const std::string msg = std::string(apdisc::to_string(e.code())) + " [" + e.module() + "]: " + e.what();
      py::set_error(error, msg.c_str());
    }
  });

  m.attr("MIN_N") = apdisc::kMinN;

  m.def("gcd", &apdisc::gcd, py::arg("x"), py::arg("y"));
  m.def(
      "mod_inverse_pair",
      [](std::int64_t a, std::int64_t delta) {
        const auto r = apdisc::mod_inverse_pair(a, delta);
        return std::make_pair(r.k, r.k_neg);
      },
      py::arg("a"), py::arg("delta"));
  m.def(
      "dirichlet_approx",
      [](const std::string& alpha, std::int64_t k) {
        const auto w = apdisc::dirichlet_approx(apdisc::Rational::parse(alpha), k);
        return std::make_tuple(w.delta, w.a, w.err.to_string());
      },
      py::arg("alpha"), py::arg("k"));

  m.def(
      "edge_elements", [](const std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>& e) {
        return apdisc::edge_elements(to_edge(e));
      },
      py::arg("edge"));
  m.def(
      "edge_cardinality",
      [](const std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>& e) {
        const auto c = apdisc::edge_cardinality(to_edge(e));
        return std::make_pair(c.value, c.collision_free);
      },
      py::arg("edge"));
  m.def(
      "indicator_fourier",
      [](const std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>& e, const std::string& alpha) {
        return apdisc::indicator_fourier(to_edge(e), apdisc::Rational::parse(alpha));
      },
      py::arg("edge"), py::arg("alpha"));

  m.def(
      "family_stats_json", [](std::int64_t n) {
        return nlohmann::json(apdisc::family_stats(apdisc::build_family({n}))).dump();
      },
      py::arg("n"));
  m.def(
      "certify_json",
      [](const std::string& alpha, std::int64_t n) {
        return apdisc::to_json(apdisc::certify(apdisc::Rational::parse(alpha), n)).dump();
      },
      py::arg("alpha"), py::arg("n"));
  m.def(
      "two_norm_json",
      [](const std::vector<int>& values) {
        const auto chi = to_coloring(values);
        const auto f = apdisc::build_family({chi.n()});
        return apdisc::to_json(apdisc::two_norm_lower(chi, f)).dump();
      },
      py::arg("values"));
  m.def(
      "disc_json",
      [](std::int64_t n, const std::string& method, std::int64_t budget, std::uint64_t seed) {
        if (method == "exact") return apdisc::to_json(apdisc::exact_discrepancy(n)).dump();
        if (method == "local") return apdisc::to_json(apdisc::local_search_upper(n, budget, seed)).dump();
        if (method == "random") return apdisc::to_json(apdisc::random_coloring_upper(n, budget, seed)).dump();
        throw apdisc::Error(apdisc::ErrorCode::PreconditionViolation, "solver", "unknown method " + method);
      },
      py::arg("n"), py::arg("method") = "exact", py::arg("budget") = 10, py::arg("seed") = 1);
}
