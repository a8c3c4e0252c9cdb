#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "adw/places.hpp"
#include "adw/pointspec.hpp"
#include "doctest.h"

using namespace adw;

TEST_CASE("normalized absolute values at single places") {
  CHECK(abs_at_place(Rat(12), Place::at_prime(2)) == Rat(1, 4));
  CHECK(abs_at_place(Rat(1), Place::at_prime(7)) == Rat(1));
  CHECK(abs_at_place(Rat(1), Place::real()) == Rat(1));
  CHECK(abs_at_place(rat_from_string("-3/2"), Place::real()) == Rat(3, 2));
  CHECK(abs_at_place(rat_from_string("-3/2"), Place::at_prime(2)) == Rat(2));
  CHECK(abs_at_place(Rat(0), Place::real()) == Rat(0));
}

TEST_CASE("product formula on the examples") {
  CHECK(product_over_places(Rat(6)) == Rat(1));
  CHECK(product_over_places(Rat(1)) == Rat(1));
  CHECK(product_over_places(rat_from_string("-5/7")) == Rat(1));
  CHECK_THROWS_AS(product_over_places(Rat(0)), ConfigError);
}

TEST_CASE("product formula on random rationals") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    long num = static_cast<long>(rng() % 2000001) - 1000000;
    long den = static_cast<long>(rng() % 999999) + 1;
    if (num == 0) num = 17;
    CHECK(product_over_places(make_rat(Int(num), Int(den))) == Rat(1));
  }
}

TEST_CASE("multiplicativity |ab|_v = |a|_v |b|_v at prime places") {
  std::mt19937_64 rng(7);
  std::vector<Place> places{Place::at_prime(2), Place::at_prime(3),
                            Place::at_prime(5), Place::real()};
  for (int i = 0; i < 200; ++i) {
    long an = static_cast<long>(rng() % 20001) - 10000;
    long bd = static_cast<long>(rng() % 9999) + 1;
    long bn = static_cast<long>(rng() % 20001) - 10000;
    long ad = static_cast<long>(rng() % 9999) + 1;
    if (an == 0) an = 3;
    if (bn == 0) bn = -5;
    Rat a = make_rat(Int(an), Int(ad)), b = make_rat(Int(bn), Int(bd));
    for (const Place& v : places)
      CHECK(abs_at_place(a * b, v) == abs_at_place(a, v) * abs_at_place(b, v));
  }
}

TEST_CASE("point spec parse round trip and enclosures") {
  PointSpec p = PointSpec::parse("rat:3/2");
  CHECK(p.str() == "rat:3/2");
  CHECK(*p.exact() == Rat(3, 2));

  PointSpec a = PointSpec::parse("alg:[-2,0,1]@root1");
  CHECK(a.str() == "alg:[-2,0,1]@root1");
  Ival root = a.enclosure(128);
  // second real root of T^2 - 2, ascending: +sqrt(2)
  CHECK(root.certainly_gt_rat(Rat(14142, 10001)));
  CHECK(root.certainly_le_rat(Rat(14143, 10000)));

  PointSpec l = PointSpec::parse("const:ln2");
  Ival ln2 = l.enclosure(128);
  CHECK(ln2.certainly_gt_rat(Rat(693147, 1000001)));
  CHECK(ln2.certainly_le_rat(Rat(693148, 1000000)));

  CHECK_THROWS_AS(PointSpec::parse("const:phi"), ConfigError);
  // reducible minimal polynomial rejected
  CHECK_THROWS_AS(PointSpec::parse("alg:[1,2,1]@root0"), ConfigError);
}

TEST_CASE("eval_poly_at_point enclosures") {
  // (T^2 - 2) at sqrt(2): encloses 0 tightly
  RatPoly p({Rat(-2), Rat(0), Rat(1)});
  PointSpec sqrt2 = PointSpec::parse("alg:[-2,0,1]@root1");
  Ival v = eval_poly_at_point(p, sqrt2, 64);
  CHECK(v.contains_zero());
  CHECK(v.width_rat() <= rat_pow(Rat(1, 2), 60));

  // T at 1/2 is exactly [1/2, 1/2]
  RatPoly t({Rat(0), Rat(1)});
  Ival half = eval_poly_at_point(t, PointSpec::rational(Rat(1, 2)), 64);
  CHECK(half.contains_rat(Rat(1, 2)));
  CHECK(half.width_rat() <= rat_pow(Rat(1, 2), 60));

  // T + 1 at ln 2 encloses 1.6931...
  RatPoly t1({Rat(1), Rat(1)});
  Ival w = eval_poly_at_point(t1, PointSpec::named("ln2"), 128);
  CHECK(w.certainly_gt_rat(Rat(16931, 10000)));
  CHECK(w.certainly_le_rat(Rat(16932, 10000)));

  // interval soundness on random rational points
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    std::vector<Rat> coeffs;
    for (int k = 0; k < 5; ++k)
      coeffs.push_back(Rat(static_cast<long>(rng() % 41) - 20));
    RatPoly q(std::move(coeffs));
    if (q.is_zero()) continue;
    Rat x = make_rat(Int(static_cast<long>(rng() % 201) - 100),
                     Int(static_cast<long>(rng() % 30) + 1));
    Ival got = eval_poly_at_point(q, PointSpec::rational(x), 64);
    CHECK(got.contains_rat(q.eval(x)));
  }
}

TEST_CASE("refinement shrinks enclosures monotonically") {
  PointSpec l = PointSpec::named("ln2");
  RatPoly p({Rat(1), Rat(2), Rat(1)});
  Ival coarse = eval_poly_at_point(p, l, 32);
  Ival fine = eval_poly_at_point(p, l, 256);
  CHECK(fine.width_rat() <= coarse.width_rat());
  CHECK(coarse.lo_rat() <= fine.lo_rat());
  CHECK(fine.hi_rat() <= coarse.hi_rat());
}
