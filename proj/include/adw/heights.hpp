#pragma once

#include <span>
#include <vector>

#include "adw/interval.hpp"
#include "adw/linalg.hpp"
#include "adw/poly.hpp"

namespace adw {

// Multiplicative heights over Q: products over all places of the max-norm.
// Over Q every height collapses to a gcd/primitive-part closed form; the
// place-by-place product is kept as an independent cross-check oracle.

// H(x) = prod_v max_i |x_i|_v for a nonzero rational vector.
Rat height_vector(std::span<const Rat> x);
// Independent place-by-place evaluation of the same quantity.
Rat height_vector_places_oracle(std::span<const Rat> x);

Rat height_polynomial(const RatPoly& p);
Rat height_polynomial(const IntPoly& p);

// Height of an m x n matrix (m <= n) via maximal minors.  Rank-deficient
// input yields value 0 with the flag set (meaningful in the Hankel module).
struct MatrixHeight {
  Rat value;
  bool rank_deficient = false;
};
MatrixHeight height_matrix(const RatMat& m);

struct SubspaceBasis {
  int ambient_dim = 0;            // n+1
  std::vector<std::vector<Rat>> rows;  // independent basis vectors
};
Rat height_subspace(const SubspaceBasis& basis);

// H(alpha) = max |coefficient| of the irreducible primitive minimal
// polynomial over Z; rejects reducible input (checked by factorization).
Int height_algebraic(const IntPoly& minimal_poly);

// Projective distance at the real place:
// max_{j,k} |xi_j z_k - xi_k z_j| / (||xi|| * ||z||), sup-norms.
Ival projective_distance(std::span<const Ival> xi, std::span<const Rat> z);

}  // namespace adw
