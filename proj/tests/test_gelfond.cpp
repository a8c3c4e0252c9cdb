#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "adw/gelfond.hpp"
#include "doctest.h"

using namespace adw;

TEST_CASE("progression points") {
  ProgressionPoints add = ProgressionPoints::make(
      ProgressionCase::additive(Rat(1)), PointSpec::named("ln2"), 5);
  Ival second = add.point(2).enclose(128);
  CHECK(second.certainly_gt_rat(Rat(16931, 10000)));
  CHECK(second.certainly_le_rat(Rat(16932, 10000)));

  ProgressionPoints mul = ProgressionPoints::make(
      ProgressionCase::multiplicative(Rat(2), 4), PointSpec::rational(Rat(1)),
      5);
  CHECK(*mul.point(4).exact == Rat(8));

  CHECK_THROWS_AS(ProgressionPoints::make(ProgressionCase::multiplicative(
                                              Rat(2), 4),
                                          PointSpec::rational(Rat(0)), 5),
                  ConfigError);
  CHECK_THROWS_AS(ProgressionPoints::make(
                      ProgressionCase{ProgressionCase::Tag::Multiplicative,
                                      Rat(-1)},
                      PointSpec::rational(Rat(1)), 5),
                  ConfigError);
}

TEST_CASE("criterion search: exact vanishing at rational points") {
  // seed 0, gamma 1: Q = (T-1)(T-2)(T-3) vanishes at xi_2..xi_4
  ProgressionPoints pts = ProgressionPoints::make(
      ProgressionCase::additive(Rat(1)), PointSpec::rational(Rat(0)), 4);
  FeasibilityRecord rec =
      criterion_search(pts, 3, 1, Rat(11), Rat(3), /*exhaustive=*/false);
  CHECK(rec.certainty == SearchCertainty::CertifiedFound);
  REQUIRE(rec.Q.has_value());
  CHECK(rec.reverified);
  // the found polynomial really is small at the three points
  for (int i = 2; i <= 4; ++i) {
    Rat v = rec.Q->eval(*pts.point(i).exact);
    CHECK(rat_abs(v) * rat_pow(Rat(11), 3) <= Rat(1));
  }
}

TEST_CASE("criterion search: huge exponent with transcendental seed") {
  ProgressionPoints pts = ProgressionPoints::make(
      ProgressionCase::additive(Rat(1)), PointSpec::named("ln2"), 5);
  FeasibilityRecord rec =
      criterion_search(pts, 4, 1, Rat(2), Rat(50), /*exhaustive=*/true);
  CHECK(rec.certainty == SearchCertainty::CertifiedAbsent);
  CHECK(!rec.Q.has_value());
}

TEST_CASE("exhaustive and reduction search agree on tiny instances") {
  ProgressionPoints pts = ProgressionPoints::make(
      ProgressionCase::additive(Rat(1)), PointSpec::named("ln2"), 4);
  for (const char* e : {"1/4", "1", "3"}) {
    Rat expo = rat_from_string(e);
    FeasibilityRecord ex = criterion_search(pts, 3, 1, Rat(3), expo, true);
    FeasibilityRecord red = criterion_search(pts, 3, 1, Rat(3), expo, false);
    if (ex.certainty == SearchCertainty::CertifiedAbsent)
      CHECK(red.certainty != SearchCertainty::CertifiedFound);
    if (red.certainty == SearchCertainty::CertifiedFound)
      CHECK(ex.certainty == SearchCertainty::CertifiedFound);
  }
}

TEST_CASE("dirichlet witness: rational seed trivially found") {
  // seed 0, gamma 1: (T-1)(T-2)(T-3)(T-4) vanishes at the four points and
  // has sup-norm 50, so it lies in the Y = 50 search region
  ProgressionPoints pts = ProgressionPoints::make(
      ProgressionCase::additive(Rat(1)), PointSpec::rational(Rat(0)), 5);
  FeasibilityRecord rec = dirichlet_witness(pts, 4, 1, Rat(50), Rat(1, 10));
  CHECK(rec.certainty == SearchCertainty::CertifiedFound);
}

TEST_CASE("found certificates transfer to looser parameters") {
  // same absolute threshold tau = Y^{-e} = (Y^2)^{-e/2}: feasibility at Y
  // implies feasibility at Y^2 with halved exponent
  ProgressionPoints pts = ProgressionPoints::make(
      ProgressionCase::additive(Rat(1)), PointSpec::rational(Rat(0)), 4);
  FeasibilityRecord at_y = criterion_search(pts, 3, 1, Rat(11), Rat(2), false);
  REQUIRE(at_y.certainty == SearchCertainty::CertifiedFound);
  FeasibilityRecord at_y2 =
      criterion_search(pts, 3, 1, Rat(121), Rat(1), false);
  CHECK(at_y2.certainty == SearchCertainty::CertifiedFound);
}

TEST_CASE("phi minimum scan: rational seed admits a dual point") {
  // rational points violate the degree hypotheses: lambda^phi_1 <= 1 for
  // large X because the scaled evaluation functional is a dual point
  ProgressionPoints pts = ProgressionPoints::make(
      ProgressionCase::additive(Rat(1)), PointSpec::rational(Rat(2)), 5);
  auto entries = phi_minimum_scan(pts, 4, 1, 4, {Rat(16), Rat(256)},
                                  MinimaMethod::Exhaustive);
  REQUIRE(entries.size() == 2);
  for (const auto& e : entries) {
    CHECK(e.lambda1.lo <= Rat(1));
    // witness soundness: some nonzero entry
    bool nz = false;
    for (const Int& v : e.witness) nz = nz || v != 0;
    CHECK(nz);
  }
}

TEST_CASE("phi minimum scan: transcendental seed series is recorded") {
  ProgressionPoints pts = ProgressionPoints::make(
      ProgressionCase::additive(Rat(1)), PointSpec::named("ln2"), 9);
  auto entries = phi_minimum_scan(pts, 8, 2, 8, {Rat(16), Rat(32)},
                                  MinimaMethod::Reduced);
  REQUIRE(entries.size() == 2);
  for (const auto& e : entries) {
    CHECK(e.lambda1.lo <= e.lambda1.hi);
    CHECK(e.lambda1.lo > 0);
  }
}

TEST_CASE("input validation") {
  ProgressionPoints pts = ProgressionPoints::make(
      ProgressionCase::additive(Rat(1)), PointSpec::named("ln2"), 5);
  CHECK_THROWS_AS(criterion_search(pts, 4, 5, Rat(10), Rat(1)), ConfigError);
  CHECK_THROWS_AS(criterion_search(pts, 4, 1, Rat(1, 2), Rat(1)), ConfigError);
  CHECK_THROWS_AS(criterion_search(pts, 4, 1, Rat(10), Rat(-1)), ConfigError);
  CHECK_THROWS_AS(criterion_search(pts, 5, 1, Rat(10), Rat(1)), ConfigError);
}
