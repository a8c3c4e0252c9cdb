#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "adw/linalg.hpp"
#include "adw/poly.hpp"
#include "doctest.h"

using namespace adw;

TEST_CASE("polynomial arithmetic basics") {
  RatPoly p({Rat(1), Rat(2), Rat(1)});  // 1 + 2T + T^2
  CHECK(p.degree() == 2);
  CHECK(p.eval(Rat(3)) == Rat(16));
  CHECK(p.derivative() == RatPoly({Rat(2), Rat(2)}));
  CHECK((p * RatPoly({Rat(0), Rat(1)})).degree() == 3);
  CHECK(p.translate_additive(Rat(1)) == RatPoly({Rat(4), Rat(4), Rat(1)}));
  CHECK(p.scale_argument(Rat(2)) == RatPoly({Rat(1), Rat(4), Rat(4)}));
  CHECK(p.compose_linear(Rat(2), Rat(1)) ==
        RatPoly({Rat(4), Rat(8), Rat(4)}));
}

TEST_CASE("translation group laws on random polynomials") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    std::vector<Rat> c;
    for (int k = 0; k < 6; ++k)
      c.push_back(make_rat(Int(static_cast<long>(rng() % 21) - 10),
                           Int(static_cast<long>(rng() % 5) + 1)));
    RatPoly p(std::move(c));
    Rat x(static_cast<long>(rng() % 11) - 5);
    Rat y(static_cast<long>(rng() % 11) - 5);
    CHECK(p.translate_additive(x).translate_additive(y) ==
          p.translate_additive(x + y));
  }
}

TEST_CASE("division, gcd, primitive parts") {
  RatPoly p({Rat(-2), Rat(0), Rat(1)});
  RatPoly q({Rat(1), Rat(1)});
  auto [quot, rem] = divmod(p, q);
  CHECK(quot * q + rem == p);
  CHECK(rem.degree() < q.degree());
  CHECK(!divide_exact(p, q).has_value());

  IntPoly a = IntPoly::from_longs({-1, 0, 1});     // (T-1)(T+1)
  IntPoly b = IntPoly::from_longs({1, 2, 1});      // (T+1)^2
  CHECK(poly_gcd(a, b) == IntPoly::from_longs({1, 1}));

  RatPoly scaled({Rat(10), Rat(15)});
  auto [prim, scale] = to_primitive(scaled);
  CHECK(prim == IntPoly::from_longs({2, 3}));
  CHECK(scale == Rat(5));
}

TEST_CASE("bareiss rank and determinant") {
  RatMat m(3, 3);
  long vals[3][3] = {{2, 1, 0}, {1, 1, 1}, {0, 1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = Rat(vals[i][j]);
  CHECK(rank(m) == 2);
  CHECK(determinant(m) == Rat(0));

  m.at(2, 2) = Rat(3);
  CHECK(rank(m) == 3);
  CHECK(determinant(m) == Rat(2 * (1 * 3 - 1 * 1) - 1 * (1 * 3 - 0)));

  RatMat frac(2, 2);
  frac.at(0, 0) = Rat(1, 2);
  frac.at(0, 1) = Rat(1, 3);
  frac.at(1, 0) = Rat(1, 5);
  frac.at(1, 1) = Rat(1, 7);
  CHECK(determinant(frac) == Rat(1, 14) - Rat(1, 15));
}

TEST_CASE("kernel, solve, inverse") {
  RatMat m(2, 3);
  m.at(0, 0) = Rat(1);
  m.at(0, 1) = Rat(2);
  m.at(0, 2) = Rat(3);
  m.at(1, 0) = Rat(2);
  m.at(1, 1) = Rat(4);
  m.at(1, 2) = Rat(6);
  auto ker = right_kernel(m);
  CHECK(ker.size() == 2);
  for (const auto& v : ker) {
    Rat dot(0);
    for (int j = 0; j < 3; ++j) dot += m.at(0, j) * v[j];
    CHECK(dot == Rat(0));
  }

  RatMat s(2, 2);
  s.at(0, 0) = Rat(2);
  s.at(0, 1) = Rat(1);
  s.at(1, 0) = Rat(1);
  s.at(1, 1) = Rat(1);
  auto x = solve(s, {Rat(3), Rat(2)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(1));
  CHECK((*x)[1] == Rat(1));
  auto inv = inverse(s);
  REQUIRE(inv.has_value());
  CHECK((*inv * s) == RatMat::identity(2));
}

TEST_CASE("integer kernel is saturated") {
  IntMat m(1, 3);
  m.at(0, 0) = 2;
  m.at(0, 1) = 4;
  m.at(0, 2) = 6;
  auto ker = right_kernel_integer(m);
  CHECK(ker.size() == 2);
  // (1, 1, -1) is in the kernel and must be an integer combination
  // of the basis (saturation)
  RatMat stacked(2, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) stacked.at(i, j) = Rat(ker[i][j]);
  // solve c * stacked = (1, 1, -1)
  RatMat sys(3, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) sys.at(j, i) = Rat(ker[i][j]);
  // least effort: brute force small combinations
  bool found = false;
  for (long a = -3; a <= 3 && !found; ++a)
    for (long b = -3; b <= 3 && !found; ++b) {
      bool match = true;
      long target[3] = {1, 1, -1};
      for (int j = 0; j < 3; ++j)
        if (Int(a) * ker[0][j] + Int(b) * ker[1][j] != target[j]) match = false;
      found = match;
    }
  CHECK(found);
}

TEST_CASE("modular solve with prime powers") {
  IntMat m(2, 2);
  m.at(0, 0) = 3;
  m.at(0, 1) = 1;
  m.at(1, 0) = 1;
  m.at(1, 1) = 2;
  // det = 5, invertible mod 4
  auto t = solve_mod_prime_power(m, {Int(2), Int(3)}, Int(2), 2);
  REQUIRE(t.has_value());
  CHECK((m.at(0, 0) * (*t)[0] + m.at(0, 1) * (*t)[1] - 2) % 4 == 0);
  CHECK((m.at(1, 0) * (*t)[0] + m.at(1, 1) * (*t)[1] - 3) % 4 == 0);

  // singular mod p rejected
  IntMat bad(2, 2);
  bad.at(0, 0) = 2;
  bad.at(0, 1) = 2;
  bad.at(1, 0) = 2;
  bad.at(1, 1) = 2;
  CHECK(!solve_mod_prime_power(bad, {Int(1), Int(0)}, Int(2), 2).has_value());
}

TEST_CASE("maximal minors") {
  RatMat m(2, 3);
  long vals[2][3] = {{1, 0, 1}, {0, 1, 1}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = Rat(vals[i][j]);
  auto minors = maximal_minors(m);
  REQUIRE(minors.size() == 3);
  CHECK(minors[0] == Rat(1));   // cols {0,1}
  CHECK(minors[1] == Rat(1));   // cols {0,2}
  CHECK(minors[2] == Rat(-1));  // cols {1,2}
}

TEST_CASE("random unimodular transforms have determinant +-1") {
  std::mt19937_64 rng(3);
  auto next = [&rng]() { return static_cast<long>(rng() % 1000) - 500; };
  for (int i = 0; i < 10; ++i) {
    IntMat u = random_unimodular(4, 25, next);
    Int d = determinant(u);
    CHECK((d == 1 || d == -1));
  }
}
