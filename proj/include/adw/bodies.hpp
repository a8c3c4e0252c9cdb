#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adw/pointspec.hpp"
#include "adw/polytope.hpp"

namespace adw {

// Adelic convex bodies over Q, realized as lattice problems: the finite
// places pin the lattice (integer coefficient vectors; a rescaled lattice
// after a finite-place dilation), and the real component is a box-and-slabs
// polytope.  Volume normalization: covol(Z^{n+1}) = 1, so the Euclidean
// volume of the real section is the adelic volume.

enum class BodyKind {
  C,     // ||P||_inf <= X, |P^(j)(eta_i)| <= 1/Y for j < m_i
  Cbar,  // ||Q||_inf <= Y, |Q(xi_i)| <= 1/X at the continuation points
  Cphi,  // dual of C under the standard coefficient pairing
};

struct BodySpec {
  int n = 1;
  BodyKind which = BodyKind::C;
  std::vector<PointHandle> points;  // see BodyKind for the role
  std::vector<int> mults;           // multiplicities (C only; else all 1)
  Rat X = Rat(1), Y = Rat(1);

  int dim() const { return n + 1; }
  int total_multiplicity() const;
  bool is_rational() const;
  void validate() const;

  // Real-place constraint system of the *primal* polytope (C or Cbar; for
  // Cphi this is the underlying C body the dual is taken of).
  SlabSystem slab_system_exact() const;     // requires is_rational()
  SlabSystemIv slab_system(mpfr_prec_t prec) const;
};

enum class Verdict { Yes, No, Unknown };

// Certified membership of an integer polynomial in `dilation * body`.
// Escalates precision internally before giving up with Unknown.
Verdict body_membership(const IntPoly& p, const BodySpec& spec,
                        const Rat& dilation = Rat(1),
                        mpfr_prec_t prec = kDefaultPrecision);

enum class MinimaMethod { Exhaustive, Reduced };

// Exact rational bracket [lo, hi]; lo == hi for exactly determined values.
struct RatBracket {
  Rat lo, hi;
  bool exact() const { return lo == hi; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  Ival to_ival(mpfr_prec_t prec) const {
    return Ival::from_endpoints(lo, hi, prec);
  }
};

struct MinimaReport {
  std::vector<RatBracket> lambda;           // brackets, ascending
  std::vector<std::vector<Int>> witnesses;  // lattice vectors achieving hi
  MinimaMethod method = MinimaMethod::Exhaustive;
  // Reduced tier: worst ratio hi/lo over the brackets (the reported slack).
  std::optional<Rat> slack;

  Rat lambda_hi(int i) const { return lambda[i].hi; }
  Rat lambda_lo(int i) const { return lambda[i].lo; }
};

// Successive minima of the body over its lattice.  Exhaustive: complete
// enumeration, brackets tight up to interval slop (exact for rational
// bodies); n <= 6 intended.  Reduced: LLL witnesses for the upper ends,
// interval Gram-Schmidt bounds for the lower ends; n <= 24.
MinimaReport successive_minima(const BodySpec& spec, MinimaMethod method,
                               mpfr_prec_t prec = kDefaultPrecision);

// Complete enumeration of the nonzero lattice points (up to sign) whose
// body gauge could be <= dilation: every point with true gauge <= dilation
// appears.  The gauge bracket of each point is returned.
struct EnumeratedPoint {
  std::vector<Int> q;
  RatBracket gauge;
};
std::vector<EnumeratedPoint> enumerate_body_points(
    const BodySpec& spec, const Rat& dilation, size_t max_nodes = 80'000'000,
    mpfr_prec_t prec = kDefaultPrecision);

// Volume of the real section.  Exact for rational bodies with n <= 6;
// otherwise a Monte Carlo estimate (the returned interval is a confidence
// interval at the stated level, not a certified enclosure).
struct VolumeReport {
  RatBracket volume;
  bool exact = true;
  double confidence = 1.0;  // < 1 for the Monte Carlo confidence interval
  unsigned long samples = 0;
};
VolumeReport body_volume(const BodySpec& spec, mpfr_prec_t prec = kDefaultPrecision,
                         unsigned long mc_samples = 200000, unsigned long seed = 1);

// ---- duality ----

struct DualPairing {
  enum class Kind { StandardPhi, InvariantForm } kind = Kind::StandardPhi;
  // Gram matrix of the invariant form in the monomial basis (exact); the
  // dual lattice is G^{-1} Z^{n+1} and witnesses are mapped through G^{-1}.
  std::optional<RatMat> gram;
};

struct DualWitnessInfo {
  std::vector<Int> z;        // lattice coordinates
  std::vector<Rat> q;        // polynomial coefficients (= z, or G^{-1} z)
  RatBracket gauge;          // dual body gauge of the witness
};

struct DualMinimaReport {
  MinimaReport minima;       // minima of the dual body
  std::vector<DualWitnessInfo> witnesses;
};

// Minima of the dual body of C(X, Y) under the pairing.  Gauge evaluated by
// the support function of the primal real section.
DualMinimaReport dual_minima(const BodySpec& spec, const DualPairing& pairing,
                             MinimaMethod method,
                             mpfr_prec_t prec = kDefaultPrecision);

// Gauge of the dual body at a coefficient vector q (for sandwich checks):
// sup { |<p, G q>| : p in C_w }, exact for rational bodies.
Rat dual_gauge_exact(const BodySpec& spec, const DualPairing& pairing,
                     const std::vector<Rat>& q);
// Gauge of C-bar's real section at q: max(||q||/Y, max_i |q(xi_i)| X).
Rat cbar_gauge_exact(const BodySpec& cbar_spec, const std::vector<Rat>& q);

// ---- renormalization ----

struct PlaceScaling {
  Rat real_factor = Rat(1);
  std::vector<std::pair<Int, long>> prime_exponents;  // |rho_p|_p = p^{-e}
  Rat content() const;
};

struct RescaleOutcome {
  BodySpec rescaled;
  // measured bracket: content * lambda_i(rho C) / lambda_i(C) per index
  std::vector<RatBracket> ratio;
};
// Fold the real factor into (X, Y); verify the minima bracket empirically.
RescaleOutcome rescale_body(const BodySpec& spec, const PlaceScaling& rho,
                            MinimaMethod method,
                            mpfr_prec_t prec = kDefaultPrecision);

// ---- member construction with prescribed local behavior ----

struct LocalTargets {
  // real-place target and scale: require P - P_real within real_scale * C_w
  std::optional<IvalPoly> real_target;
  Rat real_scale = Rat(1);
  // congruence targets: P == target (mod p^k), coefficientwise
  struct PrimeTarget {
    Int p;
    unsigned k = 2;
    IntPoly target;
  };
  std::vector<PrimeTarget> primes;
};

struct ConstructedMember {
  IntPoly poly;
  Rat budget_required;  // the feasibility threshold that was checked
  Rat budget_given;
};

// Strong-approximation style construction: round the real solution in the
// witness basis onto the congruence classes.  Throws InfeasibleError with
// the violated inequality when the scale budget is too small.
ConstructedMember construct_member(const BodySpec& spec,
                                   const MinimaReport& report,
                                   const LocalTargets& targets,
                                   mpfr_prec_t prec = kDefaultPrecision);

}  // namespace adw
