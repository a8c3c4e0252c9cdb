#pragma once

#include <optional>
#include <vector>

#include "adw/bodies.hpp"
#include "adw/heights.hpp"

namespace adw {

// Hankel-matrix diagnostics for a dual witness y = (y_0, ..., y_n): the
// matrices M_l of the bilinear forms B_l(F, G) = phi(F G, y), their rank
// structure, kernel factor extraction, and the auxiliary polynomial
// searches feeding the small-value estimates.

struct DualWitness {
  std::vector<Int> y;  // nonzero point of C^phi(X, Y)
  BodySpec spec;       // the originating C body
};

// Certified membership of y in the dual body (gauge <= 1).
Verdict verify_dual_witness(const DualWitness& w,
                            mpfr_prec_t prec = kDefaultPrecision);

// M_l: (l+1) x (n-l+1) with entry (i, j) = y_{i+j}  (0-based).
RatMat hankel_matrix(const std::vector<Int>& y, int ell, int n);

// N_l: matrix of B_l in the bases {T^i} x {R_j}, R_j = prod_{k<=j} (T - xi_k)
// with xi_{t+1} = ... = xi_n = 0.  Exact for rational points.
RatMat transformed_matrix(const std::vector<Int>& y,
                          const std::vector<Rat>& xi, int ell, int n);
std::vector<std::vector<Ival>> transformed_matrix(
    const std::vector<Int>& y, const std::vector<PointHandle>& xi, int ell,
    int n, mpfr_prec_t prec);

// Change of basis V with N_l = M_l * V (columns expand R_j in monomials).
RatMat r_basis_change(const std::vector<Rat>& xi, int cols);

struct KernelFactorReport {
  bool hypothesis_met = false;  // a rank drop occurred for some h <= k
  int h = 0;                    // rank(M_{h-1}) = h and rank(M_h) <= h
  IntPoly P;                    // primitive left-kernel factor, deg <= h
  std::vector<RatPoly> kernel_basis;  // basis of V_{h-1} in E_{n-h+1}
  bool identity_verified = false;     // V_{h-1} = P * E_{n-2h+1}
  std::vector<int> ranks;             // rank(M_l) for l = 0..k
};

KernelFactorReport rank_drop_factor(const std::vector<Int>& y, int k, int n);

// Small-value ratio of an irreducible factor Q against the Liouville-type
// bound: lhs = min_i (|Q(xi_i)| / ||Q||)^t, rhs = X^{-deg Q} H(Q)^{-(n-2k+2)}.
struct SmallValueReport {
  Ival lhs;
  Ival rhs;
  std::optional<Ival> measured_constant;  // lhs / rhs when rhs > 0
  bool degenerate = false;                // constant Q
};
SmallValueReport small_value_ratio_check(const IntPoly& q,
                                         const std::vector<PointHandle>& xi,
                                         int t, const Rat& x, int k, int n,
                                         mpfr_prec_t prec = kDefaultPrecision);

// Auxiliary polynomial searches (derivative and linear-composition cases).
struct AuxCase {
  enum class Kind { Derivative, Composition } kind = Kind::Derivative;
  // degree-one map A(T) = a T + b for the composition case
  Rat a = Rat(1), b = Rat(0);
};

struct AuxReport {
  bool feasible = false;
  IntPoly G;               // nonzero, in E_{n-2k+2}, H(G) <= X when feasible
  Rat height;              // H(G)
  // volume ledger: the side condition lhs <= c14 * rhs with measured ratio
  Ival condition_lhs;      // (XY)^{t+su} or (XY)^{t+u}
  Rat condition_rhs;       // X^{n-2k+3}
  int kernel_dimension = 0;
  int condition_rows = 0;
};

AuxReport auxiliary_polynomial(const std::vector<Int>& y,
                               const std::vector<PointHandle>& xi, int t,
                               const Rat& x, const Rat& yparam, int n, int k,
                               int u, const AuxCase& mode,
                               mpfr_prec_t prec = kDefaultPrecision);

// Degree and height bound verification for an irreducible factor Q of G.
struct FactorCheckReport {
  bool divides_family = false;   // Q^{u+1} | G, or prod_j Q o A^{-j} | G
  bool degree_bound_ok = false;  // deg Q <= (n-2k+2)/(u+1)
  Ival height_ratio;             // H(Q) / X^{1/(u+1)}, the measured c15
};
FactorCheckReport factor_degree_height_check(const IntPoly& q, const IntPoly& g,
                                             int u, const AuxCase& mode,
                                             const Rat& x, int n, int k,
                                             mpfr_prec_t prec = kDefaultPrecision);

// The proof's parameter preset: k = floor((n+2) t / nu), u = D t.
struct ProofPreset {
  int k = 0, u = 0;
};
ProofPreset proof_preset(int n, int t, int nu, int D);

}  // namespace adw
