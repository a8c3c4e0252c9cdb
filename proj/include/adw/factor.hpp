#pragma once

#include <vector>

#include "adw/poly.hpp"

namespace adw {

// Factorization of integer polynomials over Z (content split off first),
// via squarefree decomposition, Cantor-Zassenhaus mod p, Hensel lifting and
// subset recombination.  Sized for the desk scale of this project
// (degrees up to ~24, small coefficients); completely exact.

struct IntFactor {
  IntPoly poly;       // primitive, positive leading coefficient, irreducible
  unsigned multiplicity = 1;
};

// Irreducible factorization of a nonzero polynomial; the content (with sign)
// is returned separately.  Factors are sorted by degree then lexicographic.
struct Factorization {
  Int content = 1;
  std::vector<IntFactor> factors;
};

Factorization factor_int_poly(const IntPoly& p);

// True iff p is irreducible over Q (degree >= 1 required).
bool is_irreducible(const IntPoly& p);

}  // namespace adw
