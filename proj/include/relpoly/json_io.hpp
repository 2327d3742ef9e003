#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "relpoly/constructor.hpp"
#include "relpoly/graph.hpp"
#include "relpoly/limit_set.hpp"
#include "relpoly/poly.hpp"
#include "relpoly/roots.hpp"
#include "relpoly/verify.hpp"

namespace relpoly {

using Json = nlohmann::ordered_json;

/// Significant digits for multiprecision values written as decimal strings.
inline constexpr int output_digits = 30;

std::string decimal(const Real& x, int digits = output_digits);
/// Shortest round-trip form of a double.
std::string decimal(double x);
std::string rational_string(const Rational& q);

Json complex_json(const ComplexR& z, int digits = output_digits);
Json complex_json(const ComplexD& z);

void to_json(Json& j, const Graph& g);
void to_json(Json& j, const IntPoly& p);
void to_json(Json& j, const CForm& f);
void to_json(Json& j, const GraphStats& s);
void to_json(Json& j, const RootSet& r);
void to_json(Json& j, const NonrealCertificate& c);
void to_json(Json& j, const NewtonCheck& c);
void to_json(Json& j, const CycleRootCertificate& c);
void to_json(Json& j, const LimitVerdict& v);
void to_json(Json& j, const ConvergenceReport& r);
void to_json(Json& j, const RootCertificate& c);
void to_json(Json& j, const RationalRoot& r);
void to_json(Json& j, const RealRootedUnion& r);
void to_json(Json& j, const Observation1Report& r);
void to_json(Json& j, const PositivityReport& r);
void to_json(Json& j, const Theorem2Report& r);
void to_json(Json& j, const McReport& r);

/// {"coeffs": ["a0", "a1", ...]}; throws std::invalid_argument on bad input.
IntPoly intpoly_from_json(const Json& j);
/// {"n": order, "c": ["c1", ..., "cn"]}
CForm cform_from_json(const Json& j);

struct RootRow {
  ComplexR root;
  double residual = 0;
  std::string source;
};

/// Header re,im,residual,source.
void write_roots_csv(std::ostream& out, const std::vector<RootRow>& rows, int digits = 20);
/// Header n,re,im,distance.
void write_convergence_csv(std::ostream& out, const ConvergenceReport& r);

}  // namespace relpoly
