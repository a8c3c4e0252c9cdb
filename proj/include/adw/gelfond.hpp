#pragma once

#include <optional>
#include <vector>

#include "adw/bodies.hpp"
#include "adw/invariant_form.hpp"

namespace adw {

// Empirical probes of the small-value criterion over arithmetic/geometric
// progressions: search for integer polynomials of bounded degree that are
// simultaneously small at the continuation points, and scan the dual first
// minimum along an X grid.

struct ProgressionPoints {
  ProgressionCase pcase;
  PointSpec seed;
  int count = 0;  // n+1 points xi_1, ..., xi_{n+1}

  static ProgressionPoints make(const ProgressionCase& c, const PointSpec& seed,
                                int n_plus_1);
  // xi_index for index = 1..count
  PointHandle point(int index) const;
  std::vector<PointHandle> range(int from, int to) const;  // inclusive
};

enum class SearchCertainty { CertifiedFound, CertifiedAbsent, ReductionNoFind };

struct FeasibilityRecord {
  Rat Y;
  Rat exponent;
  SearchCertainty certainty = SearchCertainty::ReductionNoFind;
  std::optional<IntPoly> Q;
  // best normalized violation over the search, for diagnostics:
  // max(||Q||/Y, max_i |Q(xi_i)| / Y^{-e}) of the best candidate
  RatBracket best_gauge{Rat(0), Rat(0)};
  bool reverified = false;  // certificates re-checked at doubled precision
};

// Search for nonzero integer Q, deg <= n, ||Q|| <= Y,
// |Q(xi_i)| <= Y^{-exponent} for i = t+1..n+1.  "found" is always
// certified; "absent" only in exhaustive mode.
FeasibilityRecord criterion_search(const ProgressionPoints& pts, int n, int t,
                                   const Rat& Y, const Rat& exponent,
                                   bool exhaustive = false,
                                   mpfr_prec_t prec = kDefaultPrecision);

// criterion_search at the Dirichlet exponent t/(n+1-t) scaled by (1-delta).
FeasibilityRecord dirichlet_witness(const ProgressionPoints& pts, int n, int t,
                                    const Rat& Y, const Rat& delta,
                                    bool exhaustive = false,
                                    mpfr_prec_t prec = kDefaultPrecision);

struct PhiScanEntry {
  Rat X;
  Rat Y;  // X^{(n+2-nu)/nu}, rounded down dyadically
  RatBracket lambda1;
  std::vector<Int> witness;  // achieves the upper end
};

// First minimum of the dual body C^phi(X, X^{(n+2-nu)/nu}) along a grid.
std::vector<PhiScanEntry> phi_minimum_scan(const ProgressionPoints& pts, int n,
                                           int t, int nu,
                                           const std::vector<Rat>& x_grid,
                                           MinimaMethod method,
                                           mpfr_prec_t prec = kDefaultPrecision);

}  // namespace adw
