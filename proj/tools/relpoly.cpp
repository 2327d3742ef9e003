#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "relpoly/connected.hpp"
#include "relpoly/constructor.hpp"
#include "relpoly/graph.hpp"
#include "relpoly/json_io.hpp"
#include "relpoly/limit_set.hpp"
#include "relpoly/poly.hpp"
#include "relpoly/roots.hpp"
#include "relpoly/verify.hpp"

using namespace relpoly;

namespace {

enum ExitCode {
  exit_ok = 0,
  exit_contract = 1,
  exit_bad_flags = 2,
  exit_unknown_command = 3,
  exit_io = 4,
  exit_format = 5,
  exit_compute = 6,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FlagError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

long working_precision() {
  const char* env = std::getenv("RELPOLY_PRECISION_BITS");
  if (!env || !*env) return default_precision_bits;
  char* end = nullptr;
  const long bits = std::strtol(env, &end, 10);
  if (*end != '\0' || bits < 64 || bits > 1 << 20)
    throw FlagError("RELPOLY_PRECISION_BITS must be an integer in [64, 1048576]");
  return bits;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

void emit(const Json& j, const std::string& path) { write_text(path, j.dump(2) + "\n"); }

const std::vector<std::string> family_names = {"path",      "cycle",    "complete", "biclique", "star",
                                               "path-apex", "petersen", "gab",      "pnv-km",   "empty"};

struct GraphSource {
  std::string file;
  std::string family;
  std::size_t n = 0;
  std::size_t m = 0;
  unsigned long a = 0;
  unsigned long b = 0;

  bool from_file() const { return !file.empty(); }
};

void add_graph_flags(CLI::App* cmd, GraphSource& src) {
  auto* g = cmd->add_option("--graph", src.file, "edge-list file");
  auto* f = cmd->add_option("--family", src.family, "named family")->check(CLI::IsMember(family_names));
  g->excludes(f);
  cmd->add_option("--m", src.m, "second size parameter (biclique, pnv-km)");
  cmd->add_option("--a", src.a, "a for gab");
  cmd->add_option("--b", src.b, "b for gab");
}

Graph family_graph(const GraphSource& s, std::size_t n) {
  const std::string& f = s.family;
  if (f == "path") return make_path(n);
  if (f == "cycle") return make_cycle(n);
  if (f == "complete") return make_complete(n);
  if (f == "biclique") return make_complete_bipartite(n, s.m ? s.m : n);
  if (f == "star") return make_star(n);
  if (f == "path-apex") return apex_join(make_path(n));
  if (f == "petersen") return make_petersen();
  if (f == "gab") return rational_nrel_root(s.a, s.b).graph;
  if (f == "pnv-km") return lex_product(apex_join(make_path(n)), make_complete(s.m ? s.m : 1));
  if (f == "empty") return make_empty(n);
  throw FlagError("unknown family " + f);
}

Graph load_graph(const GraphSource& s, std::size_t n) {
  if (s.from_file()) return parse_graph(read_file(s.file), s.file);
  if (s.family.empty()) throw FlagError("one of --graph or --family is required");
  if (n == 0 && s.family != "petersen" && s.family != "gab") throw FlagError("--family " + s.family + " needs --n >= 1");
  return family_graph(s, n);
}

// C-polynomial by closed form where one exists, else by enumeration.
IntPoly cpoly_for(const GraphSource& s, const Graph& g, std::size_t n) {
  if (!s.from_file()) {
    const std::string& f = s.family;
    if (f == "path") return path_cpoly(n);
    if (f == "cycle" && n >= 3) return nrel_to_cpoly(cycle_cform(n));
    if (f == "complete") return complete_cpoly(n);
    if (f == "biclique" && (s.m == 0 || s.m == n)) return nrel_to_cpoly(knn_nrel(n));
    if (f == "path-apex") return apex_join_cpoly(path_cpoly(n), n);
    if (f == "pnv-km") {
      const std::size_t m = s.m ? s.m : 1;
      return lex_product_cpoly(apex_join_cpoly(path_cpoly(n), n), n + 1, complete_cpoly(m), m);
    }
  }
  return connected_set_polynomial(g);
}

std::vector<std::size_t> n_range(std::size_t n, std::size_t n_min, std::size_t n_max) {
  if (n_max == 0) return {n};
  if (n_min == 0) n_min = 1;
  if (n_min > n_max) throw FlagError("--n-min exceeds --n-max");
  std::vector<std::size_t> out;
  for (std::size_t k = n_min; k <= n_max; ++k) out.push_back(k);
  return out;
}

ComplexD parse_point(double re, double im) { return {re, im}; }

// poly ----------------------------------------------------------------------

struct PolyArgs {
  GraphSource src;
  std::string out;
};

int run_poly(const PolyArgs& a) {
  const Graph g = load_graph(a.src, a.src.n);
  const IntPoly c = cpoly_for(a.src, g, a.src.n);
  const CForm f = cpoly_to_nrel(c, g.order());
  Json j{{"graph", g.label()}, {"order", g.order()}, {"size", g.size()}};
  j["cpoly"] = c;
  j["cform"] = f;
  j["nrel_expanded"] = cform_expand(f);
  emit(j, a.out);
  return exit_ok;
}

// roots ---------------------------------------------------------------------

struct RootsArgs {
  GraphSource src;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  bool nrel = false;
  double tolerance = 1e-12;
  std::string out;
};

int run_roots(const RootsArgs& a, long bits) {
  RootOptions opts;
  opts.precision_bits = bits;
  opts.tolerance = a.tolerance;
  std::vector<RootRow> rows;
  for (std::size_t n : n_range(a.src.n, a.n_min, a.n_max)) {
    const Graph g = load_graph(a.src, n);
    IntPoly p = cpoly_for(a.src, g, n);
    if (a.nrel) p = cform_expand(cpoly_to_nrel(p, g.order()));
    const RootSet rs = find_roots(p, opts);
    const std::string label = g.label().empty() ? "G" : g.label();
    for (std::size_t i = 0; i < rs.size(); ++i) rows.push_back({rs.roots[i], rs.residuals[i], label});
  }
  std::ostringstream ss;
  write_roots_csv(ss, rows);
  write_text(a.out, ss.str());
  return exit_ok;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::string check = "all";
  std::size_t exhaustive_max = 5;
  std::size_t random_count = 200;
  std::size_t random_min = 6;
  std::size_t random_max = 8;
  double density = 0.3;
  std::uint64_t seed = 1;
  std::size_t family_max = 8;
  std::size_t grid = 9;
  std::uint64_t trials = 100000;
  std::uint64_t mc_seed = 2024;
  unsigned shards = 1;
  std::string out;
};

struct McConfig {
  Graph graph;
  Rational p;
};

std::vector<McConfig> mc_grid() {
  std::vector<McConfig> out;
  const Graph graphs[] = {make_complete(2), make_path(4), make_cycle(5), make_complete(4), make_petersen()};
  const Rational ps[] = {Rational(1, 5), Rational(1, 2), Rational(3, 4), Rational(9, 10)};
  for (const auto& g : graphs)
    for (const auto& p : ps) out.push_back({g, p});
  return out;
}

int run_verify(const VerifyArgs& a, long bits) {
  CorpusSpec spec;
  spec.paths = {1, a.family_max};
  spec.cycles = {3, a.family_max};
  spec.stars = {1, a.family_max};
  spec.complete = {1, a.family_max};
  spec.bicliques = {1, std::min<std::size_t>(a.family_max, 5)};
  spec.exhaustive = {1, a.exhaustive_max};
  spec.random = {a.random_count, {a.random_min, a.random_max}, a.density, a.seed};
  spec.petersen = true;
  const auto corpus = build_corpus(spec);
  const bool all = a.check == "all";
  bool ok = true;
  Json j{{"corpus_size", corpus.size()}};

  if (all || a.check == "observation1") {
    Json failures = Json::array();
    for (const auto& g : corpus) {
      const auto rep = check_observation1(g);
      if (!rep.all_hold()) failures.push_back(Json{{"report", rep}, {"edge_list", serialize_graph(g)}});
    }
    ok = ok && failures.empty();
    j["observation1"] = {{"checked", corpus.size()}, {"failures", failures}};
  }
  if (all || a.check == "positivity") {
    Json failures = Json::array();
    for (const auto& g : corpus) {
      const auto rep = check_positivity_01(g, a.grid);
      if (!rep.all_positive) failures.push_back(Json{{"report", rep}, {"edge_list", serialize_graph(g)}});
    }
    ok = ok && failures.empty();
    j["positivity"] = {{"checked", corpus.size()}, {"grid", a.grid}, {"failures", failures}};
  }
  if (all || a.check == "theorem2") {
    RootOptions opts;
    opts.precision_bits = bits;
    const auto rep = corpus_theorem2(corpus, opts);
    ok = ok && rep.passed();
    j["theorem2"] = rep;
  }
  if (all || a.check == "montecarlo") {
    Json reports = Json::array();
    std::size_t outliers = 0;
    for (const auto& cfg : mc_grid()) {
      const auto rep = monte_carlo_nrel(cfg.graph, cfg.p, a.trials, a.mc_seed, a.shards);
      if (!(std::abs(rep.z_score) <= 3)) ++outliers;
      Json e = rep;
      e["graph"] = cfg.graph.label();
      e["p"] = rational_string(cfg.p);
      reports.push_back(std::move(e));
    }
    ok = ok && outliers <= 1;
    j["montecarlo"] = {{"configurations", reports.size()}, {"outliers_above_3", outliers}, {"reports", reports}};
  }
  j["passed"] = ok;
  emit(j, a.out);
  return ok ? exit_ok : exit_contract;
}

// limit-curve ---------------------------------------------------------------

struct LimitArgs {
  std::size_t samples = 200;
  std::size_t off_curve = 200;
  double offset = 0.05;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  std::vector<std::size_t> n_values{25, 50, 100, 200};
  double r_min = 0.2;
  double r_max = 3.0;
  bool skip_convergence = false;
  unsigned threads = 1;
  std::string csv;
  std::string out;
};

int run_limit_curve(const LimitArgs& a, long bits) {
  const ExpFamily fam = pnv_family();
  BkwOptions bopts;
  bopts.tolerance = a.tolerance;
  bool ok = true;
  Json j;
  struct Piece {
    CurvePiece piece;
    const char* name;
    std::vector<std::size_t> dominant;
  };
  const Piece pieces[] = {{CurvePiece::line, "line", {0, 1}},
                          {CurvePiece::shifted_circle, "shifted-circle", {0, 2}},
                          {CurvePiece::unit_circle, "unit-circle", {1, 2}}};
  Json on = Json::array();
  for (const auto& p : pieces) {
    std::size_t good = 0;
    Json bad = Json::array();
    for (const auto& z : sample_curve_piece(p.piece, a.samples)) {
      const auto v = bkw_classify(fam, z, bopts);
      if (v.classification == LimitCase::case_i && v.dominant == p.dominant) {
        ++good;
      } else {
        bad.push_back(Json{{"z", complex_json(z)}, {"verdict", v}});
      }
    }
    ok = ok && bad.empty();
    on.push_back({{"piece", p.name}, {"samples", a.samples}, {"case_i", good}, {"mismatches", bad}});
  }
  j["on_curve"] = on;
  {
    std::size_t good = 0;
    Json bad = Json::array();
    for (const auto& z : sample_off_curve(a.off_curve, a.offset, 3.0, a.seed)) {
      const auto v = bkw_classify(fam, z, bopts);
      if (v.classification == LimitCase::not_a_limit) {
        ++good;
      } else {
        bad.push_back(Json{{"z", complex_json(z)}, {"verdict", v}});
      }
    }
    ok = ok && bad.empty();
    j["off_curve"] = {{"samples", a.off_curve}, {"min_distance", decimal(a.offset)}, {"not_a_limit", good},
                      {"mismatches", bad}};
  }
  if (!a.skip_convergence) {
    ConvergenceOptions copts;
    copts.roots.precision_bits = bits;
    copts.threads = a.threads;
    const auto rep = convergence_report(a.n_values, Region::annulus({-1, 0}, a.r_min, a.r_max), copts);
    j["convergence"] = rep;
    ok = ok && rep.max_non_increasing();
    if (!a.csv.empty()) {
      std::ostringstream ss;
      write_convergence_csv(ss, rep);
      write_text(a.csv, ss.str());
    }
  }
  j["passed"] = ok;
  emit(j, a.out);
  return ok ? exit_ok : exit_contract;
}

// target --------------------------------------------------------------------

struct TargetArgs {
  double re = 0;
  double im = 0;
  double eps = 0.1;
  bool nrel = false;
  SearchLimits limits;
  std::string materialize;
  std::string out;
};

int run_target(TargetArgs a, long bits) {
  a.limits.precision_bits = bits;
  const ComplexD t = parse_point(a.re, a.im);
  const RootCertificate cert = a.nrel ? target_nrel_root(t, a.eps, a.limits) : target_connected_root(t, a.eps, a.limits);
  Json j = cert;
  if (!a.materialize.empty()) {
    if (cert.order() > 5000) throw FlagError("certificate graph too large to materialize (order > 5000)");
    write_text(a.materialize, serialize_graph(materialize(cert)));
  }
  emit(j, a.out);
  const bool ok = cert.error < a.eps && cert.residual.to_double() <= 1e-9;
  return ok ? exit_ok : exit_contract;
}

// union-experiment ----------------------------------------------------------

struct UnionArgs {
  std::string family = "k3-k2";
  std::size_t k = 3;
  std::size_t k_max = 0;
  std::size_t n_min = 1;
  std::size_t n_max = 20;
  std::string out;
};

int run_union(const UnionArgs& a, long bits) {
  RootOptions opts;
  opts.precision_bits = bits;
  if (a.family == "k3-k2") {
    Json rows = Json::array();
    bool ok = true;
    const std::size_t lo = a.k_max ? 0 : a.k;
    const std::size_t hi = a.k_max ? a.k_max : a.k;
    for (std::size_t k = lo; k <= hi; ++k) {
      const auto r = real_rooted_disconnected(k);
      const auto cert = has_nonreal_root(r.cpoly, opts);
      const bool agree = (cert.verdict == NonrealVerdict::all_real) == r.all_real &&
                         cert.verdict != NonrealVerdict::inconclusive;
      ok = ok && agree;
      Json e = r;
      e["k"] = k;
      e["numeric_verdict"] = cert;
      e["agrees"] = agree;
      rows.push_back(std::move(e));
    }
    emit(Json{{"family", "K3|kK2"}, {"rows", rows}, {"passed", ok}}, a.out);
    return ok ? exit_ok : exit_contract;
  }
  if (a.n_min == 0 || a.n_min > a.n_max) throw FlagError("need 1 <= --n-min <= --n-max");
  std::vector<RootRow> rows;
  for (std::size_t n = a.n_min; n <= a.n_max; ++n) {
    const RootSet rs = find_roots(path_union_complete_cpoly(n), opts);
    const std::string label = "P" + std::to_string(n) + "|K" + std::to_string(n);
    for (std::size_t i = 0; i < rs.size(); ++i) rows.push_back({rs.roots[i], rs.residuals[i], label});
  }
  std::ostringstream ss;
  write_roots_csv(ss, rows);
  write_text(a.out, ss.str());
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Node reliability and connected set polynomial toolkit"};
  app.require_subcommand(1);

  std::function<int(long)> action;

  PolyArgs poly;
  auto* c_poly = app.add_subcommand("poly", "C-polynomial and C-form of a graph");
  add_graph_flags(c_poly, poly.src);
  c_poly->add_option("--n", poly.src.n, "family size");
  c_poly->add_option("--out", poly.out, "output JSON (default stdout)");
  c_poly->callback([&] { action = [&](long) { return run_poly(poly); }; });

  RootsArgs roots;
  auto* c_roots = app.add_subcommand("roots", "root CSV for a graph or family range");
  add_graph_flags(c_roots, roots.src);
  c_roots->add_option("--n", roots.src.n, "family size");
  c_roots->add_option("--n-min", roots.n_min, "first family size");
  c_roots->add_option("--n-max", roots.n_max, "last family size");
  c_roots->add_flag("--nrel", roots.nrel, "roots of the expanded node reliability polynomial");
  c_roots->add_option("--tolerance", roots.tolerance, "relative residual contract")->check(CLI::PositiveNumber);
  c_roots->add_option("--out", roots.out, "output CSV (default stdout)");
  c_roots->callback([&] { action = [&](long bits) { return run_roots(roots, bits); }; });

  VerifyArgs ver;
  auto* c_verify = app.add_subcommand("verify", "corpus checks");
  c_verify->add_option("--check", ver.check, "which check")
      ->check(CLI::IsMember({"all", "observation1", "positivity", "theorem2", "montecarlo"}));
  c_verify->add_option("--exhaustive-max", ver.exhaustive_max, "all labeled connected graphs up to this order")
      ->check(CLI::Range(0, 6));
  c_verify->add_option("--random-count", ver.random_count, "random connected graphs");
  c_verify->add_option("--random-min", ver.random_min, "smallest random order")->check(CLI::Range(1, 12));
  c_verify->add_option("--random-max", ver.random_max, "largest random order")->check(CLI::Range(1, 12));
  c_verify->add_option("--density", ver.density, "extra edge probability")->check(CLI::Range(0.0, 1.0));
  c_verify->add_option("--seed", ver.seed, "corpus seed");
  c_verify->add_option("--family-max", ver.family_max, "largest path/cycle/star/complete order")->check(CLI::Range(1, 12));
  c_verify->add_option("--grid", ver.grid, "positivity grid size");
  c_verify->add_option("--trials", ver.trials, "Monte Carlo trials per configuration");
  c_verify->add_option("--mc-seed", ver.mc_seed, "Monte Carlo seed");
  c_verify->add_option("--shards", ver.shards, "Monte Carlo shards")->check(CLI::Range(1, 256));
  c_verify->add_option("--out", ver.out, "output JSON (default stdout)");
  c_verify->callback([&] {
    if (ver.random_min > ver.random_max) throw CLI::ValidationError("--random-min", "exceeds --random-max");
    action = [&](long bits) { return run_verify(ver, bits); };
  });

  std::size_t cycle_n = 0;
  std::string cycle_out;
  auto* c_cycle = app.add_subcommand("cycle-root", "real root certificate for C_{2n+1}");
  c_cycle->add_option("--n", cycle_n, "n >= 2")->required()->check(CLI::Range(2, 200));
  c_cycle->add_option("--out", cycle_out, "output JSON (default stdout)");
  c_cycle->callback([&] {
    action = [&](long) {
      emit(Json(cycle_root_certificate(cycle_n)), cycle_out);
      return static_cast<int>(exit_ok);
    };
  });

  LimitArgs lim;
  auto* c_limit = app.add_subcommand("limit-curve", "limit curve classification and convergence");
  c_limit->add_option("--samples", lim.samples, "points per curve piece");
  c_limit->add_option("--off-curve", lim.off_curve, "points off the curve");
  c_limit->add_option("--offset", lim.offset, "minimum distance of off-curve points")->check(CLI::PositiveNumber);
  c_limit->add_option("--seed", lim.seed, "off-curve sampling seed");
  c_limit->add_option("--tolerance", lim.tolerance, "modulus tie tolerance")->check(CLI::PositiveNumber);
  c_limit->add_option("--n", lim.n_values, "family sizes for the convergence report")->delimiter(',');
  c_limit->add_option("--r-min", lim.r_min, "annulus inner radius about -1");
  c_limit->add_option("--r-max", lim.r_max, "annulus outer radius about -1");
  c_limit->add_flag("--skip-convergence", lim.skip_convergence, "classification only");
  c_limit->add_option("--threads", lim.threads, "root solves in parallel")->check(CLI::Range(1, 256));
  c_limit->add_option("--csv", lim.csv, "convergence CSV (n,re,im,distance)");
  c_limit->add_option("--out", lim.out, "output JSON (default stdout)");
  c_limit->callback([&] { action = [&](long bits) { return run_limit_curve(lim, bits); }; });

  TargetArgs tgt;
  auto* c_target = app.add_subcommand("target", "root certificate near a complex target");
  c_target->add_option("--re", tgt.re, "real part")->required();
  c_target->add_option("--im", tgt.im, "imaginary part")->required();
  c_target->add_option("--eps", tgt.eps, "allowed error")->required()->check(CLI::PositiveNumber);
  c_target->add_flag("--nrel", tgt.nrel, "target a node reliability root");
  c_target->add_option("--n-max", tgt.limits.n_max, "exhaustive scan limit");
  c_target->add_option("--m-max", tgt.limits.m_max, "largest clique factor in the scan")->check(CLI::Range(1, 4096));
  c_target->add_option("--n-far", tgt.limits.n_far, "continuation limit");
  c_target->add_option("--materialize", tgt.materialize, "write the certificate graph as an edge list");
  c_target->add_option("--out", tgt.out, "output JSON (default stdout)");
  c_target->callback([&] { action = [&](long bits) { return run_target(tgt, bits); }; });

  unsigned long ra = 0, rb = 0;
  std::string rout;
  auto* c_rat = app.add_subcommand("rational-root", "graph with node reliability root a/b");
  c_rat->add_option("--a", ra, "numerator")->required();
  c_rat->add_option("--b", rb, "denominator")->required();
  c_rat->add_option("--out", rout, "output JSON (default stdout)");
  c_rat->callback([&] {
    action = [&](long) {
      const auto r = rational_nrel_root(ra, rb);
      emit(Json(r), rout);
      return static_cast<int>(r.exact_zero ? exit_ok : exit_contract);
    };
  });

  UnionArgs uni;
  auto* c_union = app.add_subcommand("union-experiment", "disconnected families");
  c_union->add_option("--family", uni.family, "k3-k2 or path-complete")
      ->check(CLI::IsMember({"k3-k2", "path-complete"}));
  c_union->add_option("--k", uni.k, "copies of K2");
  c_union->add_option("--k-max", uni.k_max, "run k = 0..k-max");
  c_union->add_option("--n-min", uni.n_min, "first n for path-complete");
  c_union->add_option("--n-max", uni.n_max, "last n for path-complete");
  c_union->add_option("--out", uni.out, "output (JSON or CSV, default stdout)");
  c_union->callback([&] { action = [&](long bits) { return run_union(uni, bits); }; });

  if (argc >= 2 && argv[1][0] != '-') {
    bool known = false;
    for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == argv[1];
    if (!known) {
      std::cerr << "unknown subcommand: " << argv[1] << "\n";
      return exit_unknown_command;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_bad_flags;
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_bad_flags;
  }

  try {
    const long bits = working_precision();
    return action(bits);
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_bad_flags;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_format;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_bad_flags;
  } catch (const std::logic_error& e) {
    std::cerr << "contract violated: " << e.what() << "\n";
    return exit_contract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_compute;
  }
}
