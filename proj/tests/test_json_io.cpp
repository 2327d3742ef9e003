#include <doctest.h>

#include <sstream>

#include "relpoly/json_io.hpp"

using namespace relpoly;

TEST_SUITE("json_io") {

TEST_CASE("decimal strings") {
  CHECK(decimal(0.1) == "0.1");
  CHECK(decimal(-2.0) == "-2");
  CHECK(decimal(std::nan("")) == "nan");
  CHECK(rational_string(make_rational(-6, 4)) == "-3/2");
  CHECK(decimal(Real(1.0, 256) / Real(3.0, 256), 10).rfind("3.333333333", 0) == 0);
}

TEST_CASE("polynomial round trip") {
  const IntPoly p = path_cpoly(40);
  const Json j = p;
  CHECK(j["coeffs"].size() == 41);
  CHECK(j["coeffs"][1] == "40");
  CHECK(intpoly_from_json(Json::parse(j.dump())) == p);
  const CForm f = nrel_cform(make_cycle(5));
  CHECK(cform_from_json(Json(f)) == f);
  CHECK(intpoly_from_json(Json::parse(R"({"coeffs": [0, "-3", 1]})")) == IntPoly{0, -3, 1});

  CHECK_THROWS_AS(intpoly_from_json(Json::parse("[1, 2]")), std::invalid_argument);
  CHECK_THROWS_AS(intpoly_from_json(Json::parse(R"({"coeffs": ["x1"]})")), std::invalid_argument);
  CHECK_THROWS_AS(cform_from_json(Json::parse(R"({"n": 3, "c": [1]})")), std::invalid_argument);
}

TEST_CASE("graph and certificate JSON") {
  const Json g = make_path(3);
  CHECK(g["label"] == "P3");
  CHECK(g["edges"].size() == 2);

  const Json c = cycle_root_certificate(2);
  CHECK(c["value_lo"] == "-1043");
  CHECK(c["value_hi"] == "1128");
  CHECK(c["signs"] == "-+");

  const Json r = rational_nrel_root(3, 2);
  CHECK(r["root"] == "3/2");
  CHECK(r["exact_zero"] == true);
}

TEST_CASE("csv writers") {
  std::ostringstream out;
  write_roots_csv(out, {{to_real(ComplexD{-1.5, 0.5}, 128), 1e-20, "K3"}}, 5);
  const std::string s = out.str();
  CHECK(s.rfind("re,im,residual,source\n", 0) == 0);
  CHECK(s.find(",K3\n") != std::string::npos);

  ConvergenceReport rep;
  rep.rows.push_back({25, {{0.5, 1}}, {0.01}, 0.01, 0.01});
  std::ostringstream conv;
  write_convergence_csv(conv, rep);
  CHECK(conv.str() == "n,re,im,distance\n25,0.5,1,0.01\n");
}

}
