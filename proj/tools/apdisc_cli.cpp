#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apdisc/certifier.hpp"
#include "apdisc/error.hpp"
#include "apdisc/family.hpp"
#include "apdisc/fourier.hpp"
#include "apdisc/hypergraph.hpp"
#include "apdisc/numtheory.hpp"
#include "apdisc/solver.hpp"

namespace {

using apdisc::Error;
using apdisc::ErrorCode;
using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20240601;

// Raised when a run completes but one of its asserted checks failed.
struct CheckFailed {
  json record;
};

std::string num(double x) { return json(x).dump(); }

std::filesystem::path resolve_out(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("APDISC_OUT_DIR"); dir != nullptr && *dir != '\0')
      p = std::filesystem::path(dir) / p;
  }
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  return p;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(resolve_out(path));
      if (!*file_) throw Error(ErrorCode::PreconditionViolation, "cli", "cannot open output " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

json failure_record(std::string_view module, std::string_view code, const std::string& what) {
  return {{"status", "failure"}, {"module", module}, {"code", code}, {"invariant", what}};
}

bool is_usage_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::PreconditionViolation:
    case ErrorCode::BelowMinN:
    case ErrorCode::CapExceeded:
    case ErrorCode::GridTooCoarse:
    case ErrorCode::BadK:
    case ErrorCode::NotCoprime:
    case ErrorCode::DegenerateModulus:
      return true;
    default:
      return false;
  }
}

struct Common {
  std::int64_t n = 0;
  std::string format;  // empty until resolved per subcommand
  std::string out;
  unsigned threads = 0;
  std::uint64_t seed = kDefaultSeed;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
  cmd->add_option("--format", c.format, "Output format (default " + default_format + ")")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", c.out, "Output file (relative paths go under $APDISC_OUT_DIR)");
  cmd->add_option("--threads", c.threads, "Worker threads, 0 = all cores");
  cmd->add_option("--seed", c.seed, "RNG seed");
}

// --- family ------------------------------------------------------------------

void run_family(const Common& c, const std::string& family_out) {
  const auto f = apdisc::build_family({c.n});
  Output out(c.out);
  if (c.format == "csv") {
    apdisc::write_family_csv(out.os(), f);
  } else {
    apdisc::write_family_jsonl(out.os(), f);
  }
  if (!family_out.empty()) {
    std::ofstream fo(resolve_out(family_out));
    if (!fo) throw Error(ErrorCode::PreconditionViolation, "cli", "cannot open " + family_out);
    apdisc::write_family_jsonl(fo, f);
  }
  json stats = apdisc::family_stats(f);
  stats["clipped_notes"] = f.clipped;
  std::cerr << stats.dump() << '\n';
}

// --- certify / sweep -----------------------------------------------------------

void run_certify(const Common& c, const std::string& alpha) {
  const auto cert = apdisc::certify(apdisc::Rational::parse(alpha), c.n);
  Output out(c.out);
  if (c.format == "csv") {
    out.os() << "alpha,case,delta1,delta2,k,measured,bound,ok\n";
    out.os() << cert.alpha << ',' << static_cast<int>(cert.case_tag) << ',' << cert.delta1 << ','
             << (cert.delta2 ? std::to_string(*cert.delta2) : "") << ','
             << (cert.k ? std::to_string(*cert.k) : "") << ',' << num(cert.measured) << ','
             << num(cert.certified_bound) << ",1\n";
  } else {
    out.os() << apdisc::to_json(cert).dump() << '\n';
  }
}

void run_sweep(const Common& c, std::int64_t grid, std::int64_t random, std::int64_t max_den,
               bool adversarial) {
  std::vector<apdisc::Rational> points;
  if (grid > 0) points = apdisc::grid_points(grid);
  if (random > 0) {
    auto r = apdisc::random_points(random, max_den, c.seed);
    points.insert(points.end(), r.begin(), r.end());
  }
  if (adversarial) {
    auto a = apdisc::adversarial_points(c.n);
    points.insert(points.end(), a.begin(), a.end());
  }
  if (points.empty()) throw Error(ErrorCode::PreconditionViolation, "cli", "sweep has no points");
  const auto rows = apdisc::sweep(c.n, points, c.threads);

  Output out(c.out);
  std::int64_t failures = 0;
  json first_failure;
  if (c.format == "csv") out.os() << "alpha,case,delta1,delta2,k,measured,bound,ok\n";
  for (const auto& row : rows) {
    if (!row.ok) {
      if (failures++ == 0)
        first_failure = failure_record("certifier", "InternalInvariantViolation",
                                       "alpha=" + row.alpha.to_string() + ": " +
                                           (row.error.empty() ? "measured below N/300" : row.error));
    }
    if (c.format == "csv") {
      auto& os = out.os();
      os << row.alpha << ',';
      if (row.cert) {
        const auto& ct = *row.cert;
        os << static_cast<int>(ct.case_tag) << ',' << ct.delta1 << ','
           << (ct.delta2 ? std::to_string(*ct.delta2) : "") << ','
           << (ct.k ? std::to_string(*ct.k) : "") << ',' << num(ct.measured) << ','
           << num(ct.certified_bound) << ',';
      } else {
        os << ",,,,,,";
      }
      os << (row.ok ? 1 : 0) << '\n';
    } else {
      json j{{"alpha", row.alpha.to_string()}, {"ok", row.ok}};
      if (row.cert) j["certificate"] = apdisc::to_json(*row.cert);
      if (!row.error.empty()) j["error"] = row.error;
      out.os() << j.dump() << '\n';
    }
  }
  if (failures > 0) {
    first_failure["failed_points"] = failures;
    first_failure["total_points"] = rows.size();
    throw CheckFailed{first_failure};
  }
}

// --- disc / twonorm ------------------------------------------------------------

void run_disc(const Common& c, const std::string& method, std::int64_t trials, std::int64_t restarts) {
  apdisc::DiscReport r;
  if (method == "exact") {
    r = apdisc::exact_discrepancy(c.n);
  } else if (method == "local") {
    r = apdisc::local_search_upper(c.n, restarts, c.seed);
  } else {
    r = apdisc::random_coloring_upper(c.n, trials, c.seed);
  }
  Output out(c.out);
  out.os() << apdisc::to_json(r).dump() << '\n';
}

struct NamedColoring {
  std::string id;
  apdisc::Coloring chi;
};

std::vector<NamedColoring> parse_colorings(const std::string& spec, std::int64_t n,
                                           std::uint64_t seed) {
  std::vector<NamedColoring> out;
  std::mt19937_64 rng(seed);
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "ones") {
      out.push_back({"ones", apdisc::Coloring::all_plus(n)});
    } else if (item == "alt") {
      out.push_back({"alt", apdisc::Coloring::alternating(n)});
    } else if (item == "blocks") {
      out.push_back({"blocks", apdisc::Coloring::blocks(n, (n + 1) / 2)});
    } else if (item.rfind("random:", 0) == 0) {
      std::int64_t k = 0;
      try {
        k = std::stoll(item.substr(7));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "cli", "bad coloring spec '" + item + "'");
      }
      for (std::int64_t i = 0; i < k; ++i)
        out.push_back({"random-" + std::to_string(i), apdisc::Coloring::random(n, rng)});
    } else {
      throw Error(ErrorCode::ParseError, "cli", "unknown coloring '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "cli", "no colorings requested");
  return out;
}

void run_twonorm(const Common& c, const std::string& colorings) {
  const auto family = apdisc::build_family({c.n});
  const auto list = parse_colorings(colorings, c.n, c.seed);
  const double bound = std::pow(static_cast<double>(c.n), 3) / 90000.0;
  Output out(c.out);
  if (c.format == "csv") out.os() << "coloring_id,S,bound,max_abs,ok\n";
  std::int64_t failures = 0;
  json first_failure;
  for (const auto& [id, chi] : list) {
    json j{{"coloring_id", id}, {"bound", bound}};
    bool ok = true;
    try {
      const auto b = apdisc::two_norm_lower(chi, family, c.threads);
      j.update(apdisc::to_json(b));
      j["S"] = b.total;
      j["max_abs"] = std::abs(b.witness_value);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InternalInvariantViolation) throw;
      ok = false;
      if (failures++ == 0)
        first_failure = failure_record(e.module(), apdisc::to_string(e.code()), id + ": " + e.what());
      j["S"] = apdisc::two_norm_total_direct(chi, family);
      j["max_abs"] = nullptr;
    }
    j["ok"] = ok;
    if (c.format == "csv") {
      out.os() << id << ',' << j["S"].dump() << ',' << num(bound) << ','
               << (j["max_abs"].is_null() ? "" : j["max_abs"].dump()) << ',' << (ok ? 1 : 0) << '\n';
    } else {
      out.os() << j.dump() << '\n';
    }
  }
  if (failures > 0) throw CheckFailed{first_failure};
}

// --- spectrum --------------------------------------------------------------------

void run_spectrum(const Common& c, const std::string& edge_text, std::int64_t grid) {
  apdisc::SumEdge e;
  try {
    e = json::parse(edge_text).get<apdisc::SumEdge>();
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ParseError, "cli", std::string("bad --edge: ") + ex.what());
  }
  const auto spec = apdisc::indicator_spectrum(e, {grid});
  Output out(c.out);
  if (c.format == "csv") out.os() << "alpha_num,alpha_den,magnitude\n";
  for (const auto& p : spec) {
    const double mag = std::abs(p.value);
    if (c.format == "csv") {
      out.os() << p.alpha.num() << ',' << p.alpha.den() << ',' << num(mag) << '\n';
    } else {
      out.os() << json{{"alpha_num", p.alpha.num()}, {"alpha_den", p.alpha.den()}, {"magnitude", mag}}.dump()
               << '\n';
    }
  }
}

// --- verify-lemmas -----------------------------------------------------------------

void run_verify(const Common& c, std::int64_t grid, std::int64_t pairs, std::int64_t oracle_edges) {
  Output out(c.out);
  std::int64_t failures = 0;
  json first_failure;
  auto emit = [&](const std::string& check, bool ok, json detail) {
    detail["check"] = check;
    detail["ok"] = ok;
    out.os() << detail.dump() << '\n';
    if (!ok && failures++ == 0)
      first_failure = failure_record(detail.value("module", "cli"), "InternalInvariantViolation",
                                     check + " failed");
  };
  std::mt19937_64 rng(c.seed);
  const std::int64_t n = c.n;

  {
    const auto f = apdisc::build_family({n});
    const auto e12 = static_cast<std::int64_t>(f.e1.size() + f.e2.size());
    const auto e3 = static_cast<std::int64_t>(f.e3.size());
    const bool ok = e3 <= 6 * n && e12 < n && e12 + e3 <= 7 * n;
    emit("family_counts", ok, {{"module", "family"}, {"e1_e2", e12}, {"e3", e3}, {"n", n}});
  }

  {
    // Random edges inside [0, N-1] against random colorings.
    double worst = 0.0;
    for (std::int64_t i = 0; i < pairs; ++i) {
      const auto chi = apdisc::Coloring::random(n, rng);
      apdisc::SumEdge e;
      do {
        e = {static_cast<std::int64_t>(rng() % 8) + 1, static_cast<std::int64_t>(rng() % 8) + 1,
             static_cast<std::int64_t>(rng() % 8) + 1, static_cast<std::int64_t>(rng() % 8) + 1};
      } while (e.max_element() > n - 1);
      const std::int64_t m = 2 * (n + e.max_element()) + 1;
      worst = std::max(worst, apdisc::parseval_check(chi, e, {m}));
    }
    emit("parseval", worst <= 1e-8, {{"module", "fourier"}, {"pairs", pairs}, {"max_rel_error", worst}});
  }

  {
    std::int64_t mismatches = 0;
    for (std::int64_t i = 0; i < oracle_edges; ++i) {
      const apdisc::SumEdge e{static_cast<std::int64_t>(rng() % 100) + 1, static_cast<std::int64_t>(rng() % 100) + 1,
                              static_cast<std::int64_t>(rng() % 100) + 1, static_cast<std::int64_t>(rng() % 100) + 1};
      const auto card = apdisc::edge_cardinality(e);
      if (card.value != static_cast<std::int64_t>(apdisc::edge_elements(e).size())) ++mismatches;
      const std::int64_t g = apdisc::gcd(e.d1, e.d2);
      if (e.l1 <= e.d2 / g && card.value != e.grid_size()) ++mismatches;
    }
    emit("injectivity_oracle", mismatches == 0,
         {{"module", "hypergraph"}, {"edges", oracle_edges}, {"mismatches", mismatches}});
  }

  if (n >= apdisc::kMinN) {
    auto points = apdisc::grid_points(grid);
    const auto adv = apdisc::adversarial_points(n);
    points.insert(points.end(), adv.begin(), adv.end());
    const auto rows = apdisc::sweep(n, points, c.threads);
    std::int64_t bad = 0;
    for (const auto& r : rows) bad += r.ok ? 0 : 1;
    emit("certify_sweep", bad == 0,
         {{"module", "certifier"}, {"points", rows.size()}, {"failures", bad}});
  } else {
    out.os() << json{{"check", "certify_sweep"}, {"skipped", true}, {"reason", "N below 576"}}.dump() << '\n';
  }
  if (failures > 0) throw CheckFailed{first_failure};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrepancy tools for sums of two arithmetic progressions"};
  app.require_subcommand(1);

  Common common;
  auto n_option = [&](CLI::App* cmd) {
    cmd->add_option("--n", common.n, "Ground set size N")->required()->check(CLI::PositiveNumber);
  };

  std::string family_out;
  auto* family = app.add_subcommand("family", "Build the special family and export its edges");
  n_option(family);
  add_common(family, common, "json");
  family->add_option("--family-out", family_out, "Also write the family as JSON lines");

  std::string alpha;
  auto* certify = app.add_subcommand("certify", "Certify one frequency");
  n_option(certify);
  add_common(certify, common, "json");
  certify->add_option("--alpha", alpha, "Frequency as an exact fraction p/q")->required();

  std::int64_t grid = 0;
  std::int64_t random = 0;
  std::int64_t max_den = 1000000;
  bool adversarial = false;
  auto* sweep = app.add_subcommand("sweep", "Certify a grid of frequencies");
  n_option(sweep);
  add_common(sweep, common, "csv");
  sweep->add_option("--grid", grid, "Uniform grid size")->check(CLI::NonNegativeNumber);
  sweep->add_option("--random", random, "Extra random rationals")->check(CLI::NonNegativeNumber);
  sweep->add_option("--max-den", max_den, "Largest random denominator")->check(CLI::PositiveNumber);
  sweep->add_flag("--adversarial", adversarial, "Add case-boundary points");

  std::string method = "random";
  std::int64_t trials = 100;
  std::int64_t restarts = 20;
  auto* disc = app.add_subcommand("disc", "Discrepancy of the canonical hypergraph");
  n_option(disc);
  add_common(disc, common, "json");
  disc->add_option("--method", method, "Solver")->check(CLI::IsMember({"exact", "local", "random"}));
  disc->add_option("--trials", trials, "Random colorings")->check(CLI::PositiveNumber);
  disc->add_option("--restarts", restarts, "Local search restarts")->check(CLI::PositiveNumber);

  std::string colorings = "random:100,ones,alt,blocks";
  auto* twonorm = app.add_subcommand("twonorm", "Averaging lower bound per coloring");
  n_option(twonorm);
  add_common(twonorm, common, "csv");
  twonorm->add_option("--colorings", colorings, "Comma list of random:K, ones, alt, blocks");

  std::string edge_text;
  std::int64_t spectrum_grid = 0;
  auto* spectrum = app.add_subcommand("spectrum", "Indicator transform magnitudes on a grid");
  add_common(spectrum, common, "csv");
  spectrum->add_option("--edge", edge_text, R"(Edge as JSON, e.g. {"d1":2,"l1":3,"d2":3,"l2":2})")->required();
  spectrum->add_option("--grid", spectrum_grid, "Grid size m")->required()->check(CLI::PositiveNumber);

  std::int64_t verify_grid = 10000;
  std::int64_t pairs = 20;
  std::int64_t oracle_edges = 1000;
  auto* verify = app.add_subcommand("verify-lemmas", "Run the structural checks at one N");
  n_option(verify);
  add_common(verify, common, "json");
  verify->add_option("--grid", verify_grid, "Sweep grid size")->check(CLI::PositiveNumber);
  verify->add_option("--pairs", pairs, "Transform identity samples")->check(CLI::PositiveNumber);
  verify->add_option("--oracle-edges", oracle_edges, "Cardinality oracle samples")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (common.format.empty()) {
    const bool csv = sweep->parsed() || twonorm->parsed() || spectrum->parsed();
    common.format = csv ? "csv" : "json";
  }

  try {
    if (family->parsed()) run_family(common, family_out);
    if (certify->parsed()) run_certify(common, alpha);
    if (sweep->parsed()) run_sweep(common, grid, random, max_den, adversarial);
    if (disc->parsed()) run_disc(common, method, trials, restarts);
    if (twonorm->parsed()) run_twonorm(common, colorings);
    if (spectrum->parsed()) run_spectrum(common, edge_text, spectrum_grid);
    if (verify->parsed()) run_verify(common, verify_grid, pairs, oracle_edges);
  } catch (const CheckFailed& f) {
    std::cout.flush();
    std::cerr << f.record.dump() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cout.flush();
    std::cerr << failure_record(e.module(), apdisc::to_string(e.code()), e.what()).dump() << '\n';
    return is_usage_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << failure_record("cli", "Exception", e.what()).dump() << '\n';
    return 1;
  }
  return 0;
}
