#pragma once

#include <vector>

#include "adw/interval.hpp"
#include "adw/poly.hpp"

namespace adw {

// Certified real-root machinery over exact rationals (Sturm sequences).

// Sturm chain of p (p need not be squarefree; the chain is built from the
// squarefree part).
std::vector<RatPoly> sturm_chain(const RatPoly& p);

// Number of distinct real roots in the closed interval [a, b], exact.
int count_roots_closed(const RatPoly& p, const Rat& a, const Rat& b);
int count_roots_closed(const std::vector<RatPoly>& chain, const RatPoly& p,
                       const Rat& a, const Rat& b);

// All real roots of p as disjoint isolating rational intervals, ascending.
// Point roots are returned as degenerate intervals [r, r].
struct RootBracket {
  Rat lo, hi;        // lo <= root <= hi, exactly one root inside
  bool exact;        // lo == hi == root
};
std::vector<RootBracket> isolate_real_roots(const RatPoly& p);

// Shrink an isolating bracket by bisection until hi - lo <= width.
RootBracket refine_bracket(const RatPoly& p, const std::vector<RatPoly>& chain,
                           RootBracket b, const Rat& width);

// Enclosure of the k-th (ascending, 0-based) real root at >= prec bits.
Ival real_root_enclosure(const IntPoly& p, int index, mpfr_prec_t prec);

// Cauchy bound: all real roots lie in [-bound, bound].
Rat cauchy_root_bound(const RatPoly& p);

}  // namespace adw
