#pragma once

#include "adw/linalg.hpp"

namespace adw {

// Exact LLL reduction of a lattice presented by a positive definite rational
// Gram matrix.  Returns the unimodular transform U (rows express the reduced
// basis in the original generators), so the reduced Gram is U G U^T.
// delta defaults to 3/4; with that choice the classical quality bound
// ||b_j|| <= 2^{(m-1)/2} lambda_j holds for every j.
struct LllResult {
  IntMat transform;          // U
  std::vector<Rat> gso_norms;  // ||b_i*||^2 of the reduced basis, exact
};

LllResult lll_reduce_gram(const RatMat& gram, const Rat& delta = Rat(3, 4));

// Convenience: LLL-reduce integer row vectors under the standard inner
// product; returns the reduced rows.
IntMat lll_reduce_rows(const IntMat& rows, const Rat& delta = Rat(3, 4));

}  // namespace adw
