#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adw/bodies.hpp"
#include "adw/factor.hpp"

namespace adw {

// The approximant pipeline: exponent bookkeeping, engineered target
// polynomials, Eisenstein forcing through the body machinery, certified
// root clustering, and the full conjugate-approximation run.

struct ExponentLedger {
  enum class Case { GenericCurve, DistinctOnLine, Progression };
  int n = 0, t = 0, s = 0, m = 0, D = 1, d = 1;
  Case tag = Case::GenericCurve;
  int nu = 0;               // 4*D*s*t (generic) or 4*t (progression)
  Rat target_exponent;      // n/(4dDmst) or n/(4dt)
  Rat y_exponent;           // Y = X^{(n+2-nu)/nu}
  bool degree_hypothesis_checked = false;  // else recorded as assumed
  std::string degree_hypothesis_note;
};

// points-profile: the distinct points with multiplicities (sum = t).
ExponentLedger exponent_ledger(int n, int t, const std::vector<PointSpec>& points,
                               const std::vector<int>& mults, int D,
                               ExponentLedger::Case tag);

// P_w(T) = a * prod_i prod_{j=1..m_i} (T - eta_i - j z_i).
IvalPoly engineered_target(const std::vector<Ival>& etas,
                           const std::vector<int>& mults, const Ival& a,
                           const std::vector<Ival>& z);

// Force an Eisenstein polynomial at p through the witness lattice: the
// congruence target is T^n + p (mod p^2); optional real target rides along.
// Verifies the Eisenstein certificate exactly and the degree.
struct EisensteinResult {
  IntPoly poly;
  Int prime;
  Rat sup_norm_over_lambda_x;  // measured c with ||P|| <= c * lambda * X
};
EisensteinResult irreducible_from_body(const BodySpec& spec,
                                       const MinimaReport& report, const Int& p,
                                       const std::optional<IvalPoly>& real_target,
                                       const Rat& real_scale,
                                       mpfr_prec_t prec = kDefaultPrecision);

// Certified count >= want of real roots of P inside [center - radius,
// center + radius], returned as pairwise disjoint enclosures (ascending).
// By default also certifies P(center) != 0 (throws PrecisionError when that
// is undecidable, e.g. when the center is itself a root).
std::vector<Ival> cluster_roots(const IntPoly& p, const PointHandle& center,
                                int want, const Ival& radius,
                                mpfr_prec_t prec = kDefaultPrecision,
                                bool require_nonvanishing = true);

struct ApproxResult {
  IntPoly P;
  Int eisenstein_prime;
  Rat X, Y;
  std::vector<std::vector<Ival>> clusters;  // per distinct point
  std::vector<Ival> conjugates;             // alpha_i matched to xi_1..xi_t
  std::vector<Ival> distances;              // |xi_i - alpha_i|
  Int height;                               // H(alpha) via the primitive part
  Ival measured_exponent;                   // min_i log(1/dist_i)/log H
  bool irreducibility_oracle_ran = false;
  bool irreducibility_oracle_passed = false;
  Rat lambda_top;                           // lambda_{n+1} upper end used
};

struct PipelineOptions {
  Int prime = 2;
  mpfr_prec_t prec = kDefaultPrecision;
  MinimaMethod method = MinimaMethod::Reduced;
  // adaptive constants: a = a_factor * max(1, lambda X), z = z_cap / z_shrink
  Rat a_factor = Rat(4);
  Rat z_shrink = Rat(4);
  int max_rounds = 10;
};

// Full pipeline: minima -> witnesses -> engineered target -> member
// construction -> Eisenstein certificate -> clustering -> matched
// conjugates.  Stage failures carry a "stage:<name>" prefix.
ApproxResult approximate_conjugates(const ExponentLedger& ledger,
                                    const std::vector<PointSpec>& points,
                                    const std::vector<int>& mults, const Rat& X,
                                    const PipelineOptions& opt = {});

}  // namespace adw
