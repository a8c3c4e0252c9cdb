#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "adw/invariant_form.hpp"
#include "doctest.h"

using namespace adw;

namespace {
Rat binom(int n, int k) {
  Rat out(1);
  for (int i = 0; i < k; ++i) out *= Rat(n - i) / Rat(i + 1);
  return out;
}

RatPoly random_poly(std::mt19937_64& rng, int max_deg) {
  std::vector<Rat> c;
  for (int k = 0; k <= max_deg; ++k)
    c.push_back(make_rat(Int(static_cast<long>(rng() % 21) - 10),
                         Int(static_cast<long>(rng() % 4) + 1)));
  return RatPoly(std::move(c));
}
}  // namespace

TEST_CASE("relation coefficients: additive binomial closed form") {
  auto a = relation_coefficients(2, ProgressionCase::additive(Rat(1)));
  REQUIRE(a.size() == 4);
  CHECK(a[0] == Rat(-1));
  CHECK(a[1] == Rat(3));
  CHECK(a[2] == Rat(-3));
  CHECK(a[3] == Rat(1));
  // independence of gamma, and the sign-binomial shape, for several gammas
  for (const char* g : {"1", "1/2", "-3", "5", "2/7"}) {
    for (int n = 1; n <= 5; ++n) {
      auto coeffs =
          relation_coefficients(n, ProgressionCase::additive(rat_from_string(g)));
      for (int i = 0; i <= n + 1; ++i) {
        Rat expect = binom(n + 1, i);
        if ((n + 1 - i) % 2 == 1) expect = -expect;
        CHECK(coeffs[i] == expect);
      }
    }
  }
}

TEST_CASE("relation coefficients: multiplicative example") {
  auto a = relation_coefficients(1, ProgressionCase::multiplicative(Rat(2), 1));
  REQUIRE(a.size() == 3);
  CHECK(a[0] == Rat(2));
  CHECK(a[1] == Rat(-3));
  CHECK(a[2] == Rat(1));
}

TEST_CASE("annihilation of the monomial basis") {
  for (int n = 1; n <= 6; ++n) {
    for (auto c : {ProgressionCase::additive(Rat(1, 2)),
                   ProgressionCase::multiplicative(Rat(3, 2), n)}) {
      auto a = relation_coefficients(n, c);
      for (int k = 0; k <= n; ++k) {
        Rat sum(0);
        for (int i = 0; i <= n + 1; ++i) sum += a[i] * rat_pow(c.node(i), k);
        CHECK(sum == Rat(0));
      }
    }
  }
}

TEST_CASE("mirror identity rho^{n+1-i} a_{n+1-i} = a_0 a_i") {
  for (int n = 1; n <= 6; ++n) {
    for (auto c : {ProgressionCase::additive(Rat(-3)),
                   ProgressionCase::multiplicative(Rat(2), n)}) {
      InvariantForm f = build_form(n, c);
      for (int i = 0; i <= n + 1; ++i)
        CHECK(rat_pow(f.rho, n + 1 - i) * f.a[n + 1 - i] == f.a[0] * f.a[i]);
    }
  }
}

TEST_CASE("coefficient tables of the worked examples") {
  InvariantForm add = build_form(2, ProgressionCase::additive(Rat(1)));
  CHECK(add.g_at(0, 0) == Rat(1));
  CHECK(add.g_at(1, 1) == Rat(1));
  CHECK(add.g_at(2, 2) == Rat(1));
  CHECK(add.g_at(0, 1) == Rat(-3));
  CHECK(add.g_at(1, 2) == Rat(-3));
  CHECK(add.g_at(0, 2) == Rat(3));

  InvariantForm mul = build_form(1, ProgressionCase::multiplicative(Rat(2), 1));
  CHECK(mul.rho == Rat(2));
  CHECK(mul.g_at(0, 0) == Rat(2));
  CHECK(mul.g_at(0, 1) == Rat(-3));
  CHECK(mul.g_at(1, 1) == Rat(1));

  // diagonal g_ii = rho^{n-i}
  for (int n = 1; n <= 5; ++n) {
    InvariantForm f = build_form(n, ProgressionCase::multiplicative(Rat(3, 2), n));
    for (int i = 0; i <= n; ++i) CHECK(f.g_at(i, i) == rat_pow(f.rho, n - i));
  }
}

TEST_CASE("evaluate_form worked examples") {
  InvariantForm add = build_form(2, ProgressionCase::additive(Rat(1)));
  RatPoly one({Rat(1)});
  CHECK(evaluate_form(add, one, one, Rat(0)) == Rat(0));

  InvariantForm mul = build_form(1, ProgressionCase::multiplicative(Rat(2), 1));
  RatPoly t({Rat(0), Rat(1)});
  CHECK(evaluate_form(mul, one, t, Rat(1)) == Rat(-2));

  RatPoly zero;
  CHECK(evaluate_form(mul, zero, t, Rat(1)) == Rat(0));
}

TEST_CASE("translate_poly basics") {
  RatPoly t2({Rat(0), Rat(0), Rat(1)});
  CHECK(translate_poly(t2, Rat(1), ProgressionCase::additive(Rat(1))) ==
        RatPoly({Rat(1), Rat(2), Rat(1)}));
  RatPoly t1({Rat(1), Rat(1)});
  CHECK(translate_poly(t1, Rat(2), ProgressionCase::multiplicative(Rat(2), 1)) ==
        RatPoly({Rat(1), Rat(2)}));
  CHECK_THROWS_AS(
      translate_poly(t1, Rat(0), ProgressionCase::multiplicative(Rat(2), 1)),
      ConfigError);
}

TEST_CASE("invariance identity, exact, random") {
  std::mt19937_64 rng(101);
  for (int n : {1, 2, 3, 4}) {
    ProgressionCase add = ProgressionCase::additive(Rat(1, 2));
    InvariantForm fa = build_form(n, add);
    ProgressionCase mul = ProgressionCase::multiplicative(Rat(2), n);
    InvariantForm fm = build_form(n, mul);
    for (int trial = 0; trial < 50; ++trial) {
      RatPoly p = random_poly(rng, n);
      RatPoly q = random_poly(rng, n);
      Rat x = make_rat(Int(static_cast<long>(rng() % 13) - 6),
                       Int(static_cast<long>(rng() % 3) + 1));
      CHECK(evaluate_form(fa, translate_poly(p, x, add),
                          translate_poly(q, x, add), Rat(0)) ==
            evaluate_form(fa, p, q, Rat(0)));
      if (x == 0) x = Rat(3);
      CHECK(evaluate_form(fm, translate_poly(p, x, mul),
                          translate_poly(q, x, mul), Rat(1)) ==
            rat_pow(x, n) * evaluate_form(fm, p, q, Rat(1)));
    }
  }
}

TEST_CASE("non-degeneracy: monomial Gram determinant is nonzero") {
  for (int n = 1; n <= 5; ++n) {
    InvariantForm fa = build_form(n, ProgressionCase::additive(Rat(1)));
    CHECK(determinant(gram_matrix(fa, Rat(0))) != Rat(0));
    InvariantForm fm = build_form(n, ProgressionCase::multiplicative(Rat(2), n));
    CHECK(determinant(gram_matrix(fm, Rat(1))) != Rat(0));
  }
}

TEST_CASE("degenerate progressions rejected") {
  CHECK_THROWS_AS(ProgressionCase::additive(Rat(0)), ConfigError);
  // gamma = -1 has gamma^2 = 1
  CHECK_THROWS_AS(ProgressionCase::multiplicative(Rat(-1), 2), ConfigError);
  CHECK_THROWS_AS(ProgressionCase::multiplicative(Rat(1), 1), ConfigError);
  // gamma = -1 is fine when 2n < 2 never happens (n >= 1), stays rejected
  CHECK_THROWS_AS(relation_coefficients(3, ProgressionCase{
                      ProgressionCase::Tag::Multiplicative, Rat(-1)}),
                  ConfigError);
}
