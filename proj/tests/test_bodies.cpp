#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "adw/bodies.hpp"
#include "adw/invariant_form.hpp"
#include "doctest.h"

using namespace adw;

namespace {
BodySpec cube_spec(int n, const Rat& x) {
  BodySpec s;
  s.n = n;
  s.which = BodyKind::C;
  s.X = x;
  s.Y = Rat(1);
  return s;
}

BodySpec c_spec(int n, const std::vector<Rat>& pts, const Rat& x, const Rat& y,
                std::vector<int> mults = {}) {
  BodySpec s;
  s.n = n;
  s.which = BodyKind::C;
  s.X = x;
  s.Y = y;
  for (const Rat& p : pts) s.points.push_back(PointHandle::from_rat(p));
  s.mults = mults.empty() ? std::vector<int>(pts.size(), 1) : std::move(mults);
  return s;
}
}  // namespace

TEST_CASE("membership worked examples") {
  BodySpec spec = c_spec(1, {Rat(0)}, Rat(1), Rat(1));
  CHECK(body_membership(IntPoly::from_longs({1}), spec) == Verdict::Yes);
  CHECK(body_membership(IntPoly::from_longs({0, 1}), spec) == Verdict::Yes);
  CHECK(body_membership(IntPoly::from_longs({0, 2}), spec) == Verdict::No);
  CHECK(body_membership(IntPoly::from_longs({0, 2}), spec, Rat(2)) ==
        Verdict::Yes);
  // degree too large is an immediate no
  CHECK(body_membership(IntPoly::from_longs({0, 0, 1}), spec) == Verdict::No);
}

TEST_CASE("unit sup-ball minima are all one") {
  BodySpec spec = cube_spec(3, Rat(1));
  MinimaReport rep = successive_minima(spec, MinimaMethod::Exhaustive);
  REQUIRE(rep.lambda.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(rep.lambda[i].contains(Rat(1)));
    CHECK(rep.lambda[i].exact());
  }
}

TEST_CASE("one point constraint at n = 1, exhaustive oracle") {
  // |a|, |b| <= lambda, |a + b/2| <= lambda / 2
  BodySpec spec = c_spec(1, {Rat(1, 2)}, Rat(1), Rat(2));
  MinimaReport rep = successive_minima(spec, MinimaMethod::Exhaustive);
  CHECK(rep.lambda[0].contains(Rat(1)));
  CHECK(rep.lambda[1].contains(Rat(1)));
  // the witness for lambda_1 must vanish-ish at 1/2: (0, 1), (1, -1), ...
  RatPoly w{std::vector<Rat>(rep.witnesses[0].begin(), rep.witnesses[0].end())};
  CHECK(rat_abs(w.eval(Rat(1, 2))) * Rat(2) <= Rat(1));
}

TEST_CASE("volume of boxes and slabs") {
  VolumeReport cube = body_volume(cube_spec(2, Rat(3)));
  CHECK(cube.exact);
  CHECK(cube.volume.contains(Rat(216)));

  BodySpec spec = c_spec(1, {Rat(0)}, Rat(2), Rat(1));
  VolumeReport v = body_volume(spec);
  CHECK(v.exact);
  CHECK(v.volume.contains(Rat(8)));

  // slab wider than the box changes nothing
  BodySpec loose = c_spec(1, {Rat(0)}, Rat(1), Rat(1));
  CHECK(body_volume(loose).volume.contains(Rat(4)));
}

TEST_CASE("volume: oblique slab cut") {
  // n=1, point 1: |a + b| <= 1/2, box |a|,|b| <= 1.
  // Area of {|x|,|y| <= 1, |x+y| <= 1/2} = 4 - 2*(3/2)^2/2 ... compute:
  // complement corners are two triangles with legs 3/2: area 2*(9/8) = 9/4.
  BodySpec spec = c_spec(1, {Rat(1)}, Rat(1), Rat(2));
  VolumeReport v = body_volume(spec);
  CHECK(v.exact);
  CHECK(v.volume.contains(Rat(4) - Rat(9, 4)));
}

TEST_CASE("minkowski second theorem on random small specs") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    Rat x(1 + static_cast<long>(rng() % 2));
    Rat y(1 + static_cast<long>(rng() % 3));
    Rat pt = make_rat(Int(static_cast<long>(rng() % 5) - 2),
                      Int(static_cast<long>(rng() % 3) + 1));
    BodySpec spec = c_spec(n, {pt}, x, y);
    MinimaReport rep = successive_minima(spec, MinimaMethod::Exhaustive);
    VolumeReport vol = body_volume(spec);
    Rat prod(1);
    for (const auto& l : rep.lambda) prod *= l.hi;
    CHECK(prod * vol.volume.hi <= rat_pow(Rat(2), n + 1));
  }
}

TEST_CASE("reduced tier brackets enclose the exhaustive values") {
  BodySpec spec = c_spec(2, {Rat(1, 3)}, Rat(2), Rat(3));
  MinimaReport ex = successive_minima(spec, MinimaMethod::Exhaustive);
  MinimaReport red = successive_minima(spec, MinimaMethod::Reduced);
  REQUIRE(red.lambda.size() == 3);
  CHECK(red.slack.has_value());
  for (int i = 0; i < 3; ++i) {
    CHECK(red.lambda[i].lo <= ex.lambda[i].hi);
    CHECK(red.lambda[i].hi >= ex.lambda[i].lo);
  }
  // witness soundness: every witness certifies its upper end
  for (int i = 0; i < 3; ++i) {
    IntPoly w{std::vector<Int>(red.witnesses[i].begin(), red.witnesses[i].end())};
    CHECK(body_membership(w, spec, red.lambda[i].hi) != Verdict::No);
  }
}

TEST_CASE("dual of the unit cube: cross-polytope minima and Mahler products") {
  BodySpec spec = cube_spec(2, Rat(1));
  MinimaReport primal = successive_minima(spec, MinimaMethod::Exhaustive);
  DualMinimaReport dual =
      dual_minima(spec, DualPairing{}, MinimaMethod::Exhaustive);
  REQUIRE(dual.minima.lambda.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(dual.minima.lambda[i].contains(Rat(1)));
    // Mahler: lambda_i * lambda*_{n+2-i} >= 1
    Rat prod = primal.lambda[i].lo * dual.minima.lambda[2 - i].lo;
    CHECK(prod >= Rat(1));
    CHECK(primal.lambda[i].hi * dual.minima.lambda[2 - i].hi <= Rat(10));
  }
}

TEST_CASE("mahler duality lower bound on slab bodies") {
  for (int n : {1, 2}) {
    BodySpec spec = c_spec(n, {Rat(1, 2)}, Rat(2), Rat(2));
    MinimaReport primal = successive_minima(spec, MinimaMethod::Exhaustive);
    DualMinimaReport dual =
        dual_minima(spec, DualPairing{}, MinimaMethod::Exhaustive);
    for (int i = 0; i <= n; ++i) {
      Rat prod = primal.lambda[i].lo * dual.minima.lambda[n - i].lo;
      CHECK(prod >= Rat(1) - Rat(1, 1000000));
    }
  }
}

TEST_CASE("invariant-form pairing reparametrizes witnesses") {
  // additive progression 0, 1, 2, 3 with n = 2, t = 1: C sees xi_1 = 0
  int n = 2;
  InvariantForm f = build_form(n, ProgressionCase::additive(Rat(1)));
  RatMat gram = gram_matrix(f, Rat(0));  // base xi_1 = 0
  BodySpec spec = c_spec(n, {Rat(0)}, Rat(2), Rat(2));
  DualPairing pairing{DualPairing::Kind::InvariantForm, gram};
  DualMinimaReport dual = dual_minima(spec, pairing, MinimaMethod::Exhaustive);
  // witness polynomials are G^{-1} z; their pairing values against any
  // member of C are bounded by the gauge
  REQUIRE(dual.witnesses.size() == static_cast<size_t>(n + 1));
  for (const auto& w : dual.witnesses) {
    std::vector<Rat> gz = gram.apply(w.q);
    for (size_t k = 0; k < w.z.size(); ++k) CHECK(gz[k] == Rat(w.z[k]));
  }
}

TEST_CASE("rescale folds the real factor into X and Y") {
  BodySpec cbar;
  cbar.n = 2;
  cbar.which = BodyKind::Cbar;
  cbar.X = Rat(4);
  cbar.Y = Rat(2);
  cbar.points = {PointHandle::from_rat(Rat(1)), PointHandle::from_rat(Rat(2)),
                 PointHandle::from_rat(Rat(3))};
  cbar.mults = {1, 1, 1};
  PlaceScaling rho;
  rho.real_factor = Rat(2);
  RescaleOutcome out = rescale_body(cbar, rho, MinimaMethod::Exhaustive);
  CHECK(out.rescaled.X == Rat(2));
  CHECK(out.rescaled.Y == Rat(4));
  for (const auto& r : out.ratio) CHECK(r.contains(Rat(1)));

  // identity scaling: bracket trivially [1, 1]
  PlaceScaling id;
  RescaleOutcome same = rescale_body(cbar, id, MinimaMethod::Exhaustive);
  for (const auto& r : same.ratio) CHECK(r.contains(Rat(1)));
}

TEST_CASE("rescale with a finite-place factor") {
  BodySpec spec = cube_spec(1, Rat(4));
  PlaceScaling rho;
  rho.real_factor = Rat(1);
  rho.prime_exponents = {{Int(3), 1}};  // lattice shrinks to 3Z^2
  CHECK(rho.content() == Rat(1, 3));
  RescaleOutcome out = rescale_body(spec, rho, MinimaMethod::Exhaustive);
  for (const auto& r : out.ratio) CHECK(r.contains(Rat(1)));
}

TEST_CASE("construct_member: no targets returns a witness") {
  BodySpec spec = cube_spec(2, Rat(1));
  MinimaReport rep = successive_minima(spec, MinimaMethod::Exhaustive);
  ConstructedMember m = construct_member(spec, rep, LocalTargets{});
  CHECK(!m.poly.is_zero());
}

TEST_CASE("construct_member: congruence forcing mod p^2") {
  // target T^3 + 2 (mod 4) inside a roomy cube body
  BodySpec spec = cube_spec(3, Rat(64));
  MinimaReport rep = successive_minima(spec, MinimaMethod::Reduced);
  LocalTargets targets;
  targets.real_scale = Rat(40);
  LocalTargets::PrimeTarget pt;
  pt.p = 2;
  pt.k = 2;
  pt.target = IntPoly::from_longs({2, 0, 0, 1});
  targets.primes.push_back(pt);
  ConstructedMember m = construct_member(spec, rep, targets);
  CHECK((m.poly.coeff(0) - 2) % 4 == 0);
  CHECK(m.poly.coeff(1) % 4 == 0);
  CHECK(m.poly.coeff(2) % 4 == 0);
  CHECK((m.poly.coeff(3) - 1) % 4 == 0);
}

TEST_CASE("construct_member: infeasible real budget is reported") {
  BodySpec spec = cube_spec(2, Rat(1));
  MinimaReport rep = successive_minima(spec, MinimaMethod::Exhaustive);
  LocalTargets targets;
  targets.real_scale = Rat(1, 1000);
  targets.real_target = IvalPoly::from_int(IntPoly::from_longs({0, 1}), 128);
  LocalTargets::PrimeTarget pt;
  pt.p = 2;
  pt.k = 2;
  pt.target = IntPoly::from_longs({2, 0, 1});
  targets.primes.push_back(pt);
  CHECK_THROWS_AS(construct_member(spec, rep, targets), InfeasibleError);
}

TEST_CASE("transcendental points: membership with certified intervals") {
  BodySpec spec;
  spec.n = 2;
  spec.which = BodyKind::C;
  spec.X = Rat(4);
  spec.Y = Rat(2);
  spec.points = {PointHandle::from_spec(PointSpec::named("ln2"))};
  spec.mults = {1};
  // P = 2T - 1 has |P(ln2)| = |2 ln2 - 1| ~ 0.386 <= 1/2
  CHECK(body_membership(IntPoly::from_longs({-1, 2}), spec) == Verdict::Yes);
  // P = 1: |P(ln2)| = 1 > 1/2
  CHECK(body_membership(IntPoly::from_longs({1}), spec) == Verdict::No);
}

TEST_CASE("degenerate coincident points are rejected") {
  BodySpec spec = c_spec(2, {Rat(1), Rat(1)}, Rat(2), Rat(2));
  CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("duality orthogonality: interior point pairs to exactly zero") {
  // P strictly inside C and y in C^phi have |<P, y>| < 1 at the real place
  // and <= 1 at every finite place, so the product formula forces 0.
  BodySpec spec = c_spec(2, {Rat(1, 2)}, Rat(2), Rat(2));
  MinimaReport primal = successive_minima(spec, MinimaMethod::Exhaustive);
  DualMinimaReport dual =
      dual_minima(spec, DualPairing{}, MinimaMethod::Exhaustive);
  REQUIRE(primal.lambda[0].hi > 0);
  for (size_t pi = 0; pi < primal.witnesses.size(); ++pi) {
    if (!(primal.lambda[pi].hi < 1)) continue;  // strict interior only
    for (const auto& w : dual.witnesses) {
      if (!(w.gauge.hi < 1)) continue;
      Int dot(0);
      for (size_t k = 0; k < w.z.size(); ++k)
        dot += primal.witnesses[pi][k] * w.z[k];
      CHECK(dot == 0);
    }
  }
  // strictly-inside scaled pair built by hand: P = witness, y = witness
  // both dilated into the interior via the gauge values
  IntPoly p{std::vector<Int>(primal.witnesses[0].begin(),
                             primal.witnesses[0].end())};
  CHECK(body_membership(p, spec, primal.lambda[0].hi) != Verdict::No);
}
