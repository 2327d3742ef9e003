#include <doctest.h>

#include <cmath>

#include "relpoly/limit_set.hpp"
#include "relpoly/poly.hpp"

using namespace relpoly;

namespace {

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_SUITE("limit_set") {

TEST_CASE("path-apex family") {
  const ExpFamily fam = pnv_family();
  CHECK(fam.term_count() == 3);
  CHECK(fam.evaluate(1) == IntPoly{0, 2, -3, 0, 1});
  for (std::size_t n = 1; n <= 30; ++n) CHECK(fam.evaluate(n) == family_fn(n));
}

TEST_CASE("family validation") {
  const IntPoly x = IntPoly::monomial(1);
  CHECK_THROWS_AS(ExpFamily({{IntPoly{}, x}}, {}), FamilyError);
  CHECK_THROWS_AS(ExpFamily({{x, IntPoly{}}}, {}), FamilyError);
  // lambda and -lambda differ by a unimodular constant
  CHECK_THROWS_AS(ExpFamily({{x, IntPoly{1, 1}}, {x, IntPoly{-1, -1}}}, {}), FamilyError);
  CHECK_THROWS_AS(ExpFamily({{x, IntPoly{1, 1}}, {x, IntPoly{1, 1}}}, {}), FamilyError);
  CHECK_NOTHROW(ExpFamily({{x, IntPoly{1, 1}}, {x, IntPoly{2, 2}}}, {}));
  std::vector<SimpleTerm> many;
  for (long i = 1; i <= 9; ++i) many.push_back({x, IntPoly{i, 1}});
  CHECK_THROWS_AS(ExpFamily(many, {}), FamilyError);
}

TEST_CASE("classification examples") {
  const ExpFamily fam = pnv_family();
  const auto line = bkw_classify(fam, ComplexD{-0.5, 2});
  CHECK(line.classification == LimitCase::case_i);
  CHECK(sorted(line.dominant) == std::vector<std::size_t>{0, 1});

  const auto off = bkw_classify(fam, ComplexD{1, 1});
  CHECK(off.classification == LimitCase::not_a_limit);
  CHECK(off.dominant == std::vector<std::size_t>{0});
  CHECK(off.terms[0].modulus == doctest::Approx(std::sqrt(5.0)));

  const auto zero = bkw_classify(fam, ComplexD{0, 0});
  CHECK(zero.classification == LimitCase::case_i);
  CHECK(sorted(zero.dominant) == std::vector<std::size_t>{0, 2});

  // |z+1| > |z|, |1|, and alpha1 = z (z-1)^2 vanishes at z = 1
  CHECK(bkw_classify(fam, ComplexD{1, 0}).classification == LimitCase::case_ii);

  const auto near = bkw_classify(fam, ComplexD{-0.5 + 1e-7, 2});
  CHECK(near.classification == LimitCase::boundary_tolerance);
}

TEST_CASE("curve distance") {
  CHECK(pnv_curve_distance({-0.5, 3}) == doctest::Approx(0).epsilon(1e-15));
  CHECK(pnv_curve_distance({-0.5, std::sqrt(3.0) / 2}) < 1e-15);
  CHECK(pnv_curve_distance({0, 0}) < 1e-15);
  CHECK(pnv_curve_distance({-0.5, 0.5}) == doctest::Approx(1 - std::sqrt(0.5)).epsilon(1e-12));
  CHECK(pnv_curve_distance({2, 0}) == doctest::Approx(2).epsilon(1e-12));
  CHECK(pnv_curve_distance({-1, 0}) < 1e-15);
  CHECK(pnv_curve_distance({-2, 0}) == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("sampled curve pieces are case i with the right pair") {
  const ExpFamily fam = pnv_family();
  const std::pair<CurvePiece, std::vector<std::size_t>> pieces[] = {
      {CurvePiece::line, {0, 1}}, {CurvePiece::shifted_circle, {0, 2}}, {CurvePiece::unit_circle, {1, 2}}};
  for (const auto& [piece, pair] : pieces) {
    const auto pts = sample_curve_piece(piece, 200);
    CHECK(pts.size() == 200);
    for (const auto& z : pts) {
      CHECK(curve_piece_distance(piece, z) < 1e-12);
      const auto v = bkw_classify(fam, z);
      CHECK(v.classification == LimitCase::case_i);
      CHECK(sorted(v.dominant) == pair);
    }
  }
}

TEST_CASE("sampled off-curve points are not limits") {
  const ExpFamily fam = pnv_family();
  const auto pts = sample_off_curve(200, 0.05);
  CHECK(pts.size() == 200);
  const auto again = sample_off_curve(20, 0.05, 3.0, 9), first = sample_off_curve(20, 0.05, 3.0, 9);
  for (std::size_t i = 0; i < first.size(); ++i) CHECK((first[i].re == again[i].re && first[i].im == again[i].im));
  for (const auto& z : pts) {
    CHECK(std::hypot(z.re, z.im) <= 3.0);
    CHECK(pnv_curve_distance(z) >= 0.05);
    CHECK(bkw_classify(fam, z).classification == LimitCase::not_a_limit);
  }
}

TEST_CASE("convergence toward the curve") {
  const std::vector<std::size_t> ns{25, 50, 100};
  const auto rep = convergence_report(ns, Region::annulus({-1, 0}, 0.2, 3));
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.max_non_increasing());
  CHECK(rep.rows[2].max_distance < rep.rows[0].max_distance);
  for (const auto& row : rep.rows) {
    CHECK(row.roots.size() == row.distances.size());
    for (const auto& z : row.roots) CHECK(std::hypot(z.re - 1, z.im) > 1e-6);
  }

  CHECK(convergence_report(ns, Region::box(1, 0, 0, 1)).rows.empty());
  const std::vector<std::size_t> bad{50, 25};
  CHECK_THROWS_AS(convergence_report(bad, Region::box(-2, 2, -2, 2)), std::invalid_argument);
}

}
