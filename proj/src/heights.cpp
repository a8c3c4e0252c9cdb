#include "adw/heights.hpp"

#include "adw/factor.hpp"
#include "adw/places.hpp"

namespace adw {

Rat height_vector(std::span<const Rat> x) {
  bool all_zero = true;
  for (const Rat& v : x)
    if (v != 0) all_zero = false;
  if (all_zero) throw ConfigError("height of the zero vector");
  // clear denominators, divide by the gcd, take the max absolute value
  Int den(1);
  for (const Rat& v : x)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  Int g(0), m(0);
  for (const Rat& v : x) {
    Int z = Rat(v * Rat(den)).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    Int a = abs(z);
    if (a > m) m = a;
  }
  return make_rat(m, g);
}

Rat height_vector_places_oracle(std::span<const Rat> x) {
  Rat real_part(0);
  for (const Rat& v : x) real_part = rat_max(real_part, rat_abs(v));
  if (real_part == 0) throw ConfigError("height of the zero vector");
  // collect the primes where some coordinate has |.|_p != 1
  std::vector<Int> primes;
  for (const Rat& v : x) {
    if (v == 0) continue;
    for (const Int& p : support_primes(v)) {
      bool seen = false;
      for (const Int& q : primes)
        if (q == p) seen = true;
      if (!seen) primes.push_back(p);
    }
  }
  Rat h = real_part;
  for (const Int& p : primes) {
    Rat maxp(0);
    Place v = Place::at_prime(p);
    for (const Rat& c : x)
      if (c != 0) maxp = rat_max(maxp, abs_at_place(c, v));
    h *= maxp;
  }
  return h;
}

Rat height_polynomial(const RatPoly& p) {
  if (p.is_zero()) throw ConfigError("height of the zero polynomial");
  return height_vector(std::span<const Rat>(p.c.data(), p.c.size()));
}

Rat height_polynomial(const IntPoly& p) { return height_polynomial(p.to_rat()); }

MatrixHeight height_matrix(const RatMat& m) {
  if (m.rows < 1 || m.rows > m.cols)
    throw ConfigError("height_matrix expects 1 <= rows <= cols");
  std::vector<Rat> minors = maximal_minors(m);
  bool all_zero = true;
  for (const Rat& v : minors)
    if (v != 0) all_zero = false;
  if (all_zero) return {Rat(0), true};
  return {height_vector(minors), false};
}

Rat height_subspace(const SubspaceBasis& basis) {
  if (basis.rows.empty()) throw ConfigError("height of the zero subspace");
  RatMat m(static_cast<int>(basis.rows.size()), basis.ambient_dim);
  for (size_t i = 0; i < basis.rows.size(); ++i) {
    if (static_cast<int>(basis.rows[i].size()) != basis.ambient_dim)
      throw ConfigError("subspace basis row of wrong length");
    for (int j = 0; j < basis.ambient_dim; ++j)
      m.at(static_cast<int>(i), j) = basis.rows[i][j];
  }
  if (rank(m) != m.rows) throw ConfigError("subspace basis is dependent");
  return height_matrix(m).value;
}

Int height_algebraic(const IntPoly& minimal_poly) {
  if (minimal_poly.degree() < 1)
    throw ConfigError("height of a constant minimal polynomial");
  if (minimal_poly.content() != 1)
    throw ConfigError("minimal polynomial must be primitive");
  if (!is_irreducible(minimal_poly))
    throw ConfigError("minimal polynomial is reducible");
  return minimal_poly.sup_norm();
}

Ival projective_distance(std::span<const Ival> xi, std::span<const Rat> z) {
  if (xi.size() != z.size() || xi.empty())
    throw ConfigError("projective distance needs equal nonzero lengths");
  mpfr_prec_t prec = xi.front().prec();
  Ival num = Ival::exact_zero(prec);
  for (size_t j = 0; j < xi.size(); ++j)
    for (size_t k = j + 1; k < xi.size(); ++k) {
      Ival cross = xi[j].mul_rat(z[k]) - xi[k].mul_rat(z[j]);
      num = num.max(cross.abs());
    }
  Ival nx = Ival::exact_zero(prec);
  for (const Ival& v : xi) nx = nx.max(v.abs());
  Rat nz(0);
  for (const Rat& v : z) nz = rat_max(nz, rat_abs(v));
  if (nz == 0 || !nx.certainly_nonzero())
    throw ConfigError("projective distance of a (possibly) zero vector");
  return num / (nx.mul_rat(nz));
}

}  // namespace adw
