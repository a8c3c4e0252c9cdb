#pragma once

#include <vector>

#include "adw/rational.hpp"

namespace adw {

// A place of Q: the real absolute value or one p-adic absolute value per
// prime p.  The degree fields d and d_v are carried so signatures survive a
// future number-field extension; over Q both are always 1 and the
// normalization exponent d_v/d is 1.
struct Place {
  enum class Kind { Real, Prime };
  Kind kind = Kind::Real;
  Int prime = 0;       // set when kind == Prime
  int local_degree = 1;  // d_v
  int global_degree = 1; // d

  static Place real() { return Place{}; }
  static Place at_prime(const Int& p);

  bool is_real() const { return kind == Kind::Real; }
  std::string describe() const;
};

// ord_p of a nonzero rational (negative when p divides the denominator).
long ord_at_prime(const Rat& a, const Int& p);

// |a|_v under the product-formula normalization: p^{-ord_p(a)} at a prime
// place, plain absolute value at the real place.  |0|_v = 0.
Rat abs_at_place(const Rat& a, const Place& v);

// Primes dividing numerator or denominator (the places where |a|_v != 1).
std::vector<Int> support_primes(const Rat& a);

// prod_v |a|_v over the real place and all primes in the support.
// Rejects a = 0; the product formula says the result is exactly 1.
Rat product_over_places(const Rat& a);

// Deterministic Miller-Rabin backed primality test (exact for our sizes).
bool is_prime(const Int& n);

// Factor |n| >= 1 into (prime, exponent) pairs, ascending by prime.
std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n);

}  // namespace adw
