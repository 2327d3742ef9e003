#include "relpoly/json_io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace relpoly {

std::string decimal(const Real& x, int digits) { return x.to_string(digits); }

std::string decimal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string rational_string(const Rational& q) { return q.get_str(); }

Json complex_json(const ComplexR& z, int digits) {
  return Json{{"re", decimal(z.re, digits)}, {"im", decimal(z.im, digits)}};
}

Json complex_json(const ComplexD& z) { return Json{{"re", decimal(z.re)}, {"im", decimal(z.im)}}; }

namespace {

Json bigints(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(c.get_str());
  return a;
}

std::string verdict_name(NonrealVerdict v) {
  switch (v) {
    case NonrealVerdict::nonreal:
      return "nonreal";
    case NonrealVerdict::all_real:
      return "all-real";
    case NonrealVerdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

BigInt parse_bigint(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("integer must be a string or number");
  BigInt v;
  if (v.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("bad integer: " + j.get<std::string>());
  return v;
}

}  // namespace

void to_json(Json& j, const Graph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j = Json{{"label", g.label()}, {"order", g.order()}, {"size", g.size()}, {"edges", edges}};
}

void to_json(Json& j, const IntPoly& p) { j = Json{{"coeffs", bigints(p.coeffs())}}; }

void to_json(Json& j, const CForm& f) { j = Json{{"n", f.order}, {"c", bigints(f.c)}}; }

void to_json(Json& j, const GraphStats& s) {
  j = Json{{"order", s.order}, {"size", s.size}, {"triangles", s.triangles}, {"cut_nodes", s.cut_nodes},
           {"degrees", s.degrees}};
}

void to_json(Json& j, const RootSet& r) {
  Json roots = Json::array();
  for (std::size_t i = 0; i < r.roots.size(); ++i) {
    Json z = complex_json(r.roots[i]);
    z["residual"] = decimal(r.residuals[i]);
    roots.push_back(std::move(z));
  }
  Json clusters = Json::array();
  for (const auto& c : r.clusters) clusters.push_back({{"members", c.members}, {"center", complex_json(c.center)}});
  j = Json{{"precision_bits", r.precision_bits},
           {"tolerance", decimal(r.tolerance)},
           {"zero_multiplicity", r.zero_multiplicity},
           {"roots", roots},
           {"clusters", clusters}};
}

void to_json(Json& j, const NonrealCertificate& c) {
  j = Json{{"verdict", verdict_name(c.verdict)},
           {"degree", c.degree},
           {"exact_real_count", c.exact_real_count},
           {"numeric_real_count", c.numeric_real_count}};
  j["witness"] = c.witness ? complex_json(*c.witness) : Json(nullptr);
  if (!c.diagnostic.empty()) j["diagnostic"] = c.diagnostic;
}

void to_json(Json& j, const NewtonCheck& c) {
  j = Json{{"lhs", rational_string(c.lhs)},
           {"rhs", rational_string(c.rhs)},
           {"identity", rational_string(c.identity)},
           {"violated", c.violated},
           {"identity_holds", c.identity_holds}};
}

void to_json(Json& j, const CycleRootCertificate& c) {
  auto sign = [](const Rational& v) { return v < 0 ? "-" : (v > 0 ? "+" : "0"); };
  j = Json{{"n", c.n},
           {"cycle_order", c.cycle_order},
           {"lo", rational_string(c.lo)},
           {"hi", rational_string(c.hi)},
           {"value_lo", rational_string(c.value_lo)},
           {"value_hi", rational_string(c.value_hi)},
           {"signs", std::string(sign(c.value_lo)) + sign(c.value_hi)},
           {"isolated", {{"lo", rational_string(c.isolated.lo)}, {"hi", rational_string(c.isolated.hi)}}}};
}

void to_json(Json& j, const LimitVerdict& v) {
  Json terms = Json::array();
  for (const auto& t : v.terms) {
    Json e{{"modulus", decimal(t.modulus)}, {"alpha1", complex_json(t.alpha1)}};
    if (t.alpha2) e["alpha2"] = complex_json(*t.alpha2);
    terms.push_back(std::move(e));
  }
  j = Json{{"classification", to_string(v.classification)}, {"dominant", v.dominant}, {"terms", terms}};
}

void to_json(Json& j, const ConvergenceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"roots", row.roots.size()},
                    {"max_distance", decimal(row.max_distance)},
                    {"mean_distance", decimal(row.mean_distance)}});
  }
  j = Json{{"rows", rows}, {"max_non_increasing", r.max_non_increasing()}};
}

void to_json(Json& j, const RootCertificate& c) {
  j = Json{{"label", c.label},
           {"kind", c.nrel ? "node-reliability" : "connected-set"},
           {"n", c.n},
           {"m", c.m},
           {"order", c.order()},
           {"target", complex_json(c.target)},
           {"eps", decimal(c.eps)},
           {"achieved", complex_json(c.achieved)},
           {"error", decimal(c.error)},
           {"connected_root", complex_json(c.connected_root)},
           {"w", complex_json(c.w)},
           {"residual", decimal(c.residual, 6)},
           {"branch", c.branch},
           {"arg_offset", decimal(c.arg_offset)},
           {"phase", c.phase}};
  if (c.nrel) j["connected_window"] = decimal(c.connected_eps);
}

void to_json(Json& j, const RationalRoot& r) {
  j = Json{{"graph", r.graph}, {"root", rational_string(r.root)}, {"nrel", r.nrel}, {"exact_zero", r.exact_zero}};
}

void to_json(Json& j, const RealRootedUnion& r) {
  j = Json{{"graph", r.graph},
           {"cpoly", r.cpoly},
           {"discriminant", r.discriminant.get_str()},
           {"all_real", r.all_real}};
}

void to_json(Json& j, const Observation1Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"identity", c.name},
                      {"expected", c.expected.get_str()},
                      {"actual", c.actual.get_str()},
                      {"applicable", c.applicable},
                      {"holds", c.holds}});
  }
  j = Json{{"label", r.label}, {"checks", checks}, {"all_hold", r.all_hold()}};
}

void to_json(Json& j, const PositivityReport& r) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < r.points.size(); ++i)
    pts.push_back({{"p", rational_string(r.points[i])}, {"value", rational_string(r.values[i])}});
  j = Json{{"label", r.label}, {"points", pts}, {"all_positive", r.all_positive}};
}

void to_json(Json& j, const Theorem2Report& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"graph", f.graph},
                        {"edge_list", serialize_graph(f.graph)},
                        {"newton", f.newton},
                        {"cpoly_verdict", verdict_name(f.cpoly_verdict)},
                        {"nrel_verdict", verdict_name(f.nrel_verdict)},
                        {"diagnostic", f.diagnostic}});
  }
  j = Json{{"checked", r.checked}, {"skipped", r.skipped}, {"passed", r.passed()}, {"failures", failures}};
}

void to_json(Json& j, const McReport& r) {
  j = Json{{"trials", r.trials},
           {"seed", r.seed},
           {"shards", r.shards},
           {"generator", r.generator},
           {"successes", r.successes},
           {"estimate", decimal(r.estimate)},
           {"standard_error", decimal(r.standard_error)},
           {"exact", rational_string(r.exact)},
           {"z_score", decimal(r.z_score)}};
}

IntPoly intpoly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw std::invalid_argument("polynomial JSON needs a \"coeffs\" array");
  std::vector<BigInt> c;
  for (const auto& e : j["coeffs"]) c.push_back(parse_bigint(e));
  return IntPoly(std::move(c));
}

CForm cform_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("c") || !j["c"].is_array() || !j["n"].is_number_unsigned())
    throw std::invalid_argument("C-form JSON needs \"n\" and a \"c\" array");
  std::vector<BigInt> c;
  for (const auto& e : j["c"]) c.push_back(parse_bigint(e));
  return CForm(j["n"].get<std::size_t>(), std::move(c));
}

void write_roots_csv(std::ostream& out, const std::vector<RootRow>& rows, int digits) {
  out << "re,im,residual,source\n";
  for (const auto& r : rows) {
    out << decimal(r.root.re, digits) << ',' << decimal(r.root.im, digits) << ',' << decimal(r.residual) << ','
        << r.source << '\n';
  }
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& r) {
  out << "n,re,im,distance\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.roots.size(); ++i) {
      out << row.n << ',' << decimal(row.roots[i].re) << ',' << decimal(row.roots[i].im) << ','
          << decimal(row.distances[i]) << '\n';
    }
  }
}

}  // namespace relpoly
