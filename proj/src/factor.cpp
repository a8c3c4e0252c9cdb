#include "adw/factor.hpp"

#include <algorithm>
#include <random>

#include "adw/places.hpp"

namespace adw {

namespace {

// --- arithmetic on monic-friendly polynomials over Z/p (p odd prime) ---

using ZpPoly = std::vector<Int>;  // constant first, entries in [0, p)

void zp_normalize(ZpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int zp_deg(const ZpPoly& f) { return static_cast<int>(f.size()) - 1; }

ZpPoly zp_from_int(const IntPoly& p, const Int& mod) {
  ZpPoly f(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) {
    f[i] = p.c[i] % mod;
    if (f[i] < 0) f[i] += mod;
  }
  zp_normalize(f);
  return f;
}

ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, const Int& p) {
  if (a.empty() || b.empty()) return {};
  ZpPoly out(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  zp_normalize(out);
  return out;
}

Int zp_inv(const Int& a, const Int& p) {
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
    throw ConfigError("non-invertible element mod p");
  return inv;
}

ZpPoly zp_scale(const ZpPoly& a, const Int& s, const Int& p) {
  ZpPoly out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = (a[i] * s) % p;
  zp_normalize(out);
  return out;
}

ZpPoly zp_monic(const ZpPoly& a, const Int& p) {
  if (a.empty()) return a;
  return zp_scale(a, zp_inv(a.back(), p), p);
}

// remainder of a mod b
ZpPoly zp_rem(ZpPoly a, const ZpPoly& b, const Int& p) {
  if (b.empty()) throw ConfigError("mod-p division by zero");
  Int lead_inv = zp_inv(b.back(), p);
  while (zp_deg(a) >= zp_deg(b)) {
    Int f = (a.back() * lead_inv) % p;
    int shift = zp_deg(a) - zp_deg(b);
    for (size_t i = 0; i < b.size(); ++i) {
      size_t k = i + shift;
      a[k] = (a[k] - f * b[i]) % p;
      if (a[k] < 0) a[k] += p;
    }
    zp_normalize(a);
    if (a.empty()) break;
  }
  return a;
}

ZpPoly zp_divexact(const ZpPoly& a, const ZpPoly& b, const Int& p) {
  if (zp_deg(a) < zp_deg(b)) {
    if (!a.empty()) throw ConfigError("mod-p exact division failed");
    return {};
  }
  ZpPoly rem = a, quot(static_cast<size_t>(zp_deg(a) - zp_deg(b) + 1), Int(0));
  Int lead_inv = zp_inv(b.back(), p);
  while (zp_deg(rem) >= zp_deg(b)) {
    Int f = (rem.back() * lead_inv) % p;
    int shift = zp_deg(rem) - zp_deg(b);
    quot[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) {
      size_t k = i + shift;
      rem[k] = (rem[k] - f * b[i]) % p;
      if (rem[k] < 0) rem[k] += p;
    }
    zp_normalize(rem);
    if (rem.empty()) break;
  }
  if (!rem.empty()) throw ConfigError("mod-p exact division failed");
  zp_normalize(quot);
  return quot;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, const Int& p) {
  while (!b.empty()) {
    ZpPoly r = zp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : zp_monic(a, p);
}

ZpPoly zp_derivative(const ZpPoly& f, const Int& p) {
  if (f.size() <= 1) return {};
  ZpPoly d(f.size() - 1);
  for (size_t k = 1; k < f.size(); ++k) d[k - 1] = (f[k] * Int(static_cast<long>(k))) % p;
  zp_normalize(d);
  return d;
}

ZpPoly zp_powmod(const ZpPoly& base, const Int& e, const ZpPoly& mod, const Int& p) {
  ZpPoly acc = {Int(1)};
  ZpPoly b = zp_rem(base, mod, p);
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = zp_rem(zp_mul(acc, b, p), mod, p);
    b = zp_rem(zp_mul(b, b, p), mod, p);
    k >>= 1;
  }
  return acc;
}

// Cantor-Zassenhaus: factor a monic squarefree polynomial mod odd p.
void zp_equal_degree(const ZpPoly& f, int d, const Int& p, std::mt19937_64& rng,
                     std::vector<ZpPoly>& out) {
  if (zp_deg(f) == d) {
    out.push_back(f);
    return;
  }
  Int q;
  mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), d);
  Int e = (q - 1) / 2;
  for (;;) {
    ZpPoly r(zp_deg(f));
    for (auto& coef : r) {
      unsigned long v = static_cast<unsigned long>(rng());
      coef = Int(v) % p;
    }
    zp_normalize(r);
    if (r.empty()) continue;
    ZpPoly g = zp_gcd(f, r, p);
    if (zp_deg(g) > 0 && zp_deg(g) < zp_deg(f)) {
      zp_equal_degree(g, d, p, rng, out);
      zp_equal_degree(zp_divexact(f, g, p), d, p, rng, out);
      return;
    }
    ZpPoly h = zp_powmod(r, e, f, p);
    if (h.empty()) continue;
    h[0] = (h[0] - 1) % p;
    if (h[0] < 0) h[0] += p;
    zp_normalize(h);
    if (h.empty()) continue;
    g = zp_gcd(f, h, p);
    if (zp_deg(g) > 0 && zp_deg(g) < zp_deg(f)) {
      zp_equal_degree(g, d, p, rng, out);
      zp_equal_degree(zp_divexact(f, g, p), d, p, rng, out);
      return;
    }
  }
}

std::vector<ZpPoly> zp_factor_squarefree(const ZpPoly& monic, const Int& p,
                                         std::mt19937_64& rng) {
  std::vector<ZpPoly> out;
  ZpPoly f = monic;
  ZpPoly x = {Int(0), Int(1)};
  ZpPoly h = x;
  int d = 0;
  while (zp_deg(f) >= 1) {
    ++d;
    if (2 * d > zp_deg(f)) {
      out.push_back(f);
      break;
    }
    h = zp_powmod(h, p, f, p);  // h = T^{p^d} mod f
    ZpPoly hx = h;
    if (hx.size() < 2) hx.resize(2, Int(0));
    hx[1] = (hx[1] - 1) % p;
    if (hx[1] < 0) hx[1] += p;
    zp_normalize(hx);
    ZpPoly g = zp_gcd(f, hx, p);
    if (zp_deg(g) > 0) {
      zp_equal_degree(g, d, p, rng, out);
      f = zp_divexact(f, g, p);
      h = zp_rem(h, f, p);
    }
  }
  return out;
}

// --- Hensel lifting ---

struct Bezout {
  ZpPoly s, t;  // s*g + t*h = 1 mod p
};

Bezout zp_bezout(const ZpPoly& g, const ZpPoly& h, const Int& p) {
  // extended Euclid over Z/p
  ZpPoly r0 = g, r1 = h;
  ZpPoly s0 = {Int(1)}, s1 = {};
  ZpPoly t0 = {}, t1 = {Int(1)};
  auto sub_mul = [&p](const ZpPoly& a, const ZpPoly& q, const ZpPoly& b) {
    ZpPoly prod = zp_mul(q, b, p);
    ZpPoly out(std::max(a.size(), prod.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (size_t i = 0; i < prod.size(); ++i) {
      out[i] = (out[i] - prod[i]) % p;
      if (out[i] < 0) out[i] += p;
    }
    zp_normalize(out);
    return out;
  };
  while (!r1.empty()) {
    // quotient of r0 by r1
    ZpPoly q(std::max<int>(zp_deg(r0) - zp_deg(r1) + 1, 0), Int(0));
    ZpPoly rem = r0;
    Int lead_inv = zp_inv(r1.back(), p);
    while (zp_deg(rem) >= zp_deg(r1) && !rem.empty()) {
      Int f = (rem.back() * lead_inv) % p;
      int shift = zp_deg(rem) - zp_deg(r1);
      q[shift] = f;
      for (size_t i = 0; i < r1.size(); ++i) {
        size_t k = i + shift;
        rem[k] = (rem[k] - f * r1[i]) % p;
        if (rem[k] < 0) rem[k] += p;
      }
      zp_normalize(rem);
    }
    ZpPoly s2 = sub_mul(s0, q, s1);
    ZpPoly t2 = sub_mul(t0, q, t1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (zp_deg(r0) != 0) throw ConfigError("bezout of non-coprime polynomials");
  Int inv = zp_inv(r0[0], p);
  return {zp_scale(s0, inv, p), zp_scale(t0, inv, p)};
}

IntPoly mod_sym(const IntPoly& f, const Int& m) {
  std::vector<Int> out(f.c.size());
  Int half = m / 2;
  for (size_t i = 0; i < f.c.size(); ++i) {
    Int v = f.c[i] % m;
    if (v < 0) v += m;
    if (v > half) v -= m;
    out[i] = v;
  }
  return IntPoly(std::move(out));
}

IntPoly mod_pos(const IntPoly& f, const Int& m) {
  std::vector<Int> out(f.c.size());
  for (size_t i = 0; i < f.c.size(); ++i) {
    Int v = f.c[i] % m;
    if (v < 0) v += m;
    out[i] = v;
  }
  return IntPoly(std::move(out));
}

IntPoly zp_to_int(const ZpPoly& f) {
  return IntPoly(std::vector<Int>(f.begin(), f.end()));
}

// Lift f = g*h from mod m to mod m^2 (g stays monic-normalized per lc(g)=1).
// Requires s*g + t*h = 1 mod m.
void hensel_step(const IntPoly& f, IntPoly& g, IntPoly& h, IntPoly& s,
                 IntPoly& t, const Int& m) {
  Int m2 = m * m;
  auto mul = [&](const IntPoly& a, const IntPoly& b) {
    return mod_pos(a * b, m2);
  };
  IntPoly e = mod_pos(f - g * h, m2);
  // q, r = divmod(s*e, h) computed mod m^2; lc(h) is a unit mod p (monic).
  auto divmod_mod = [&](const IntPoly& num, const IntPoly& den) {
    IntPoly rem = mod_pos(num, m2), quot;
    std::vector<Int> q(std::max<int>(rem.degree() - den.degree() + 1, 0), Int(0));
    Int lead_inv;
    if (mpz_invert(lead_inv.get_mpz_t(), den.leading().get_mpz_t(),
                   m2.get_mpz_t()) == 0)
      throw ConfigError("hensel: leading coefficient not a unit");
    while (!rem.is_zero() && rem.degree() >= den.degree()) {
      Int fac = (rem.leading() * lead_inv) % m2;
      int shift = rem.degree() - den.degree();
      q[shift] = fac;
      IntPoly sub = IntPoly::monomial(shift, fac) * den;
      rem = mod_pos(rem - sub, m2);
    }
    return std::pair{IntPoly(std::move(q)), rem};
  };
  auto [q, r] = divmod_mod(mul(s, e), h);
  IntPoly g1 = mod_pos(g + mul(t, e) + mul(q, g), m2);
  IntPoly h1 = mod_pos(h + r, m2);
  // update Bezout: b = s*g1 + t*h1 - 1
  IntPoly b = mod_pos(mul(s, g1) + mul(t, h1) - IntPoly::from_longs({1}), m2);
  auto [c, d] = divmod_mod(mul(s, b), h1);
  IntPoly s1 = mod_pos(s - d, m2);
  IntPoly t1 = mod_pos(t - mul(t, b) - mul(c, g1), m2);
  g = g1;
  h = h1;
  s = s1;
  t = t1;
}

// Lift the full factor list from mod p to mod p^(2^j) >= target.
std::vector<IntPoly> hensel_tree(const IntPoly& f, const std::vector<ZpPoly>& fac,
                                 const Int& p, const Int& target,
                                 Int& reached) {
  if (fac.size() == 1) {
    reached = p;
    while (reached < target) reached = reached * reached;
    // leaf: return the monic normalization of f modulo `reached`
    Int lc_inv;
    IntPoly fm = mod_pos(f, reached);
    if (mpz_invert(lc_inv.get_mpz_t(), fm.leading().get_mpz_t(),
                   reached.get_mpz_t()) == 0)
      throw ConfigError("hensel leaf: leading coefficient not a unit");
    return {mod_pos(fm * lc_inv, reached)};
  }
  size_t half = fac.size() / 2;
  ZpPoly gp = {Int(1)}, hp = {Int(1)};
  for (size_t i = 0; i < half; ++i) gp = zp_mul(gp, fac[i], p);
  for (size_t i = half; i < fac.size(); ++i) hp = zp_mul(hp, fac[i], p);
  // normalize so that g*h = f mod p including the leading coefficient:
  // fold lc(f) into g.
  Int lc = f.leading() % p;
  if (lc < 0) lc += p;
  gp = zp_scale(gp, lc, p);
  Bezout bez = zp_bezout(gp, hp, p);
  IntPoly g = zp_to_int(gp), h = zp_to_int(hp);
  IntPoly s = zp_to_int(bez.s), t = zp_to_int(bez.t);
  Int m = p;
  while (m < target) {
    hensel_step(f, g, h, s, t, m);
    m = m * m;
  }
  // recurse on both halves: g carries lc(f), h is monic
  Int sub_reached;
  std::vector<ZpPoly> left(fac.begin(), fac.begin() + half);
  std::vector<ZpPoly> right(fac.begin() + half, fac.end());
  std::vector<IntPoly> out = hensel_tree(g, left, p, m, sub_reached);
  std::vector<IntPoly> hr = hensel_tree(h, right, p, m, sub_reached);
  out.insert(out.end(), hr.begin(), hr.end());
  reached = m;
  return out;
}

// Squarefree part factorization driver: factor a primitive squarefree
// polynomial of degree >= 1 into irreducible factors over Z.
std::vector<IntPoly> factor_squarefree_primitive(const IntPoly& f0) {
  if (f0.degree() == 1) return {f0};
  IntPoly f = f0;
  std::mt19937_64 rng(0x5eedf00dULL);
  // choose an odd prime p with lc(f) a unit and f squarefree mod p
  Int p(3);
  for (;;) {
    if (f.leading() % p != 0) {
      ZpPoly fp = zp_from_int(f, p);
      if (zp_deg(fp) == f.degree()) {
        ZpPoly d = zp_derivative(fp, p);
        if (!d.empty() && zp_deg(zp_gcd(fp, d, p)) == 0) break;
      }
    }
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  ZpPoly fp = zp_monic(zp_from_int(f, p), p);
  std::vector<ZpPoly> modular = zp_factor_squarefree(fp, p, rng);
  std::sort(modular.begin(), modular.end(),
            [](const ZpPoly& a, const ZpPoly& b) { return a.size() < b.size(); });
  if (modular.size() == 1) return {f};

  // Landau-Mignotte style bound: any factor of f (times lc) has
  // coefficients bounded by 2^n * (n+1) * ||f||_inf * |lc|.
  Int bound = f.sup_norm() * abs(f.leading()) * Int(f.degree() + 1);
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), f.degree() + 1);
  Int target = 2 * bound + 1;
  Int pk;
  std::vector<IntPoly> lifted = hensel_tree(f, modular, p, target, pk);

  // subset recombination
  std::vector<IntPoly> result;
  std::vector<int> live(lifted.size());
  for (size_t i = 0; i < lifted.size(); ++i) live[i] = static_cast<int>(i);
  IntPoly rest = f;
  size_t take = 1;
  while (2 * take <= live.size()) {
    bool found = false;
    std::vector<int> idx(take);
    for (size_t i = 0; i < take; ++i) idx[i] = static_cast<int>(i);
    for (;;) {
      IntPoly prod = IntPoly::from_longs({1});
      for (int i : idx) prod = mod_pos(prod * lifted[live[i]], pk);
      prod = mod_sym(prod * rest.leading(), pk);
      IntPoly cand = prod.primitive_part();
      auto quot = divide_exact(rest, cand);
      if (quot && cand.degree() >= 1) {
        result.push_back(cand);
        rest = quot->primitive_part();
        std::vector<int> remaining;
        for (size_t i = 0, k = 0; i < live.size(); ++i) {
          if (k < idx.size() && static_cast<int>(i) == idx[k]) {
            ++k;
            continue;
          }
          remaining.push_back(live[i]);
        }
        live = remaining;
        found = true;
        break;
      }
      // next combination
      int pos = static_cast<int>(take) - 1;
      while (pos >= 0 &&
             idx[pos] == static_cast<int>(live.size() - take + pos))
        --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (size_t i = pos + 1; i < take; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!found) ++take;
  }
  if (rest.degree() >= 1) result.push_back(rest);
  return result;
}

}  // namespace

Factorization factor_int_poly(const IntPoly& p) {
  if (p.is_zero()) throw ConfigError("factorization of the zero polynomial");
  Factorization out;
  Int content = p.content();
  if (sgn(p.leading()) < 0) content = -content;
  out.content = content;
  IntPoly f = p.primitive_part();
  if (f.degree() < 1) return out;

  // Factor the squarefree part (f / gcd(f, f')), then recover each
  // multiplicity by repeated exact division of f itself.
  IntPoly g = poly_gcd(f, f.derivative());
  IntPoly squarefree =
      g.degree() == 0 ? f : divide_exact(f, g)->primitive_part();
  for (const IntPoly& irr : factor_squarefree_primitive(squarefree)) {
    unsigned m = 0;
    IntPoly rest = f;
    for (;;) {
      auto q = divide_exact(rest, irr);
      if (!q) break;
      rest = *q;
      ++m;
    }
    out.factors.push_back({irr, m});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const IntFactor& a, const IntFactor& b) {
              if (a.poly.degree() != b.poly.degree())
                return a.poly.degree() < b.poly.degree();
              return a.poly.c < b.poly.c;
            });
  return out;
}

bool is_irreducible(const IntPoly& p) {
  if (p.degree() < 1) return false;
  Factorization f = factor_int_poly(p);
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1 &&
         f.factors[0].poly.degree() == p.degree();
}

}  // namespace adw
