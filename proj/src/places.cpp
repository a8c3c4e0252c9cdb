#include "adw/places.hpp"

#include <algorithm>
#include <map>

namespace adw {

Place Place::at_prime(const Int& p) {
  if (!is_prime(p)) throw ConfigError("not a prime: " + p.get_str());
  Place v;
  v.kind = Kind::Prime;
  v.prime = p;
  return v;
}

std::string Place::describe() const {
  return is_real() ? "real" : "prime(" + prime.get_str() + ")";
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

long ord_at_prime(const Rat& a, const Int& p) {
  if (a == 0) throw ConfigError("ord_p of zero");
  long ord = 0;
  Int num = a.get_num(), den = a.get_den();
  Int q, r;
  for (;;) {
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    if (r != 0) break;
    num = q;
    ++ord;
  }
  for (;;) {
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    if (r != 0) break;
    den = q;
    --ord;
  }
  return ord;
}

Rat abs_at_place(const Rat& a, const Place& v) {
  if (a == 0) return Rat(0);
  if (v.is_real()) return rat_abs(a);
  long ord = ord_at_prime(a, v.prime);
  return rat_pow(Rat(v.prime), -ord);
}

namespace {

// Pollard rho with Brent cycle detection; inputs are composite and odd.
Int pollard_rho(const Int& n, unsigned long seed) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(seed);
  for (;;) {
    Int c = rng.get_z_range(n - 3) + 1;
    Int x = rng.get_z_range(n - 2) + 2;
    Int y = x, d = 1, diff;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      diff = x - y;
      if (diff == 0) break;  // cycle without factor; retry with new c
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  // Strip small primes first; fall back to rho for the hard cofactor.
  Int m = n;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L}) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      out[Int(p)] += 1;
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    }
  }
  if (m == 1) return;
  if (is_prime(m)) {
    out[m] += 1;
    return;
  }
  Int d = pollard_rho(m, 0x9e3779b9UL);
  factor_into(d, out);
  factor_into(m / d, out);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n) {
  Int m = abs(n);
  if (m == 0) throw ConfigError("factor of zero");
  std::map<Int, unsigned> acc;
  factor_into(m, acc);
  return {acc.begin(), acc.end()};
}

std::vector<Int> support_primes(const Rat& a) {
  if (a == 0) throw ConfigError("support of zero");
  std::map<Int, unsigned> acc;
  if (abs(a.get_num()) != 1) factor_into(abs(a.get_num()), acc);
  if (a.get_den() != 1) factor_into(a.get_den(), acc);
  std::vector<Int> primes;
  primes.reserve(acc.size());
  for (auto& [p, e] : acc) primes.push_back(p);
  return primes;
}

Rat product_over_places(const Rat& a) {
  if (a == 0) throw ConfigError("product formula needs a nonzero input");
  Rat prod = abs_at_place(a, Place::real());
  for (const Int& p : support_primes(a))
    prod *= abs_at_place(a, Place::at_prime(p));
  return prod;
}

}  // namespace adw
