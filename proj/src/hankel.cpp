#include "adw/hankel.hpp"

#include <algorithm>

#include "adw/lll.hpp"

namespace adw {

Verdict verify_dual_witness(const DualWitness& w, mpfr_prec_t prec) {
  bool nonzero = false;
  for (const Int& v : w.y) nonzero = nonzero || v != 0;
  if (!nonzero) return Verdict::No;
  // gauge of the dual body = support function of the primal real section
  std::vector<Rat> u(w.y.begin(), w.y.end());
  if (w.spec.is_rational()) {
    Rat h = support_function(w.spec.slab_system_exact(), u);
    return h <= 1 ? Verdict::Yes : Verdict::No;
  }
  mpfr_prec_t work = prec;
  for (int rounds = 0; rounds < 6; ++rounds) {
    Ival h = support_function(w.spec.slab_system(work), u, work);
    if (h.certainly_le_rat(Rat(1))) return Verdict::Yes;
    if (h.certainly_gt_rat(Rat(1))) return Verdict::No;
    work *= 2;
  }
  return Verdict::Unknown;
}

RatMat hankel_matrix(const std::vector<Int>& y, int ell, int n) {
  if (static_cast<int>(y.size()) != n + 1)
    throw ConfigError("hankel: y must have length n+1");
  if (ell < 0 || ell > n) throw ConfigError("hankel: 0 <= l <= n");
  RatMat m(ell + 1, n - ell + 1);
  for (int i = 0; i <= ell; ++i)
    for (int j = 0; j <= n - ell; ++j) m.at(i, j) = Rat(y[i + j]);
  return m;
}

RatMat r_basis_change(const std::vector<Rat>& xi, int cols) {
  // column j = coefficients of R_j = prod_{k=1..j} (T - xi_k), degree j
  RatMat v(cols, cols);
  RatPoly r({Rat(1)});
  for (int j = 0; j < cols; ++j) {
    if (j > 0) {
      Rat root = j - 1 < static_cast<int>(xi.size()) ? xi[j - 1] : Rat(0);
      r = r * RatPoly({-root, Rat(1)});
    }
    for (int i = 0; i < cols; ++i) v.at(i, j) = r.coeff(i);
  }
  return v;
}

RatMat transformed_matrix(const std::vector<Int>& y, const std::vector<Rat>& xi,
                          int ell, int n) {
  RatMat m = hankel_matrix(y, ell, n);
  return m * r_basis_change(xi, n - ell + 1);
}

std::vector<std::vector<Ival>> transformed_matrix(
    const std::vector<Int>& y, const std::vector<PointHandle>& xi, int ell,
    int n, mpfr_prec_t prec) {
  if (static_cast<int>(y.size()) != n + 1)
    throw ConfigError("hankel: y must have length n+1");
  // entry (i, j) = phi(T^i R_j, y) with interval R_j coefficients
  std::vector<Ival> points;
  for (const auto& p : xi) points.push_back(p.enclose(prec));
  std::vector<std::vector<Ival>> out(
      ell + 1, std::vector<Ival>(n - ell + 1, Ival::exact_zero(prec)));
  IvalPoly r;
  r.c = {Ival::from_long(1, prec)};
  for (int j = 0; j <= n - ell; ++j) {
    if (j > 0) {
      Ival root = j - 1 < static_cast<int>(points.size())
                      ? points[j - 1]
                      : Ival::exact_zero(prec);
      IvalPoly lin;
      lin.c = {-root, Ival::from_long(1, prec)};
      r = r * lin;
    }
    for (int i = 0; i <= ell; ++i) {
      Ival acc = Ival::exact_zero(prec);
      for (int c = 0; c < static_cast<int>(r.c.size()); ++c) {
        int idx = i + c;
        if (idx <= n) acc = acc + r.c[c].mul_rat(Rat(y[idx]));
      }
      out[i][j] = acc;
    }
  }
  return out;
}

KernelFactorReport rank_drop_factor(const std::vector<Int>& y, int k, int n) {
  if (static_cast<int>(y.size()) != n + 1)
    throw ConfigError("rank_drop: y must have length n+1");
  if (k < 1 || 2 * k > n) throw ConfigError("rank_drop: 1 <= k <= n/2");
  bool nonzero = false;
  for (const Int& v : y) nonzero = nonzero || v != 0;
  if (!nonzero) throw ConfigError("rank_drop: zero witness");

  KernelFactorReport rep;
  for (int l = 0; l <= k; ++l)
    rep.ranks.push_back(rank(hankel_matrix(y, l, n)));
  // find minimal h >= 1 with rank(M_h) <= h; then rank(M_{h-1}) = h
  int h = -1;
  for (int l = 1; l <= k; ++l)
    if (rep.ranks[l] <= l) {
      h = l;
      break;
    }
  if (h < 0) {
    rep.hypothesis_met = false;
    return rep;
  }
  rep.hypothesis_met = true;
  rep.h = h;

  // P from the left kernel of B_h (the kernel of M_h transposed)
  RatMat mh_t = hankel_matrix(y, h, n).transpose();
  auto left = right_kernel(mh_t);
  if (left.empty()) throw ConfigError("rank_drop: left kernel unexpectedly trivial");
  rep.P = to_primitive(RatPoly(left.front())).first;

  // kernel basis of V_{h-1} = right kernel of M_{h-1}
  auto ker = right_kernel(hankel_matrix(y, h - 1, n));
  for (auto& v : ker) rep.kernel_basis.push_back(RatPoly(v));

  // identity V_{h-1} = P * E_{n-2h+1}: dimension count + exact division
  rep.identity_verified =
      static_cast<int>(rep.kernel_basis.size()) == n - 2 * h + 2;
  for (const RatPoly& g : rep.kernel_basis)
    if (!divide_exact(g, rep.P.to_rat()).has_value())
      rep.identity_verified = false;
  return rep;
}

SmallValueReport small_value_ratio_check(const IntPoly& q,
                                         const std::vector<PointHandle>& xi,
                                         int t, const Rat& x, int k, int n,
                                         mpfr_prec_t prec) {
  if (q.is_zero()) throw ConfigError("small_value: zero polynomial");
  SmallValueReport rep{Ival::exact_zero(prec), Ival::exact_zero(prec),
                       std::nullopt, false};
  if (q.degree() == 0) {
    rep.degenerate = true;
    rep.lhs = Ival::from_long(1, prec);
    rep.rhs = Ival::from_long(1, prec);
    return rep;
  }
  if (static_cast<int>(xi.size()) < t)
    throw ConfigError("small_value: need at least t points");
  Rat qnorm(q.sup_norm());
  Ival min_ratio = Ival::exact_zero(prec);
  bool first = true;
  for (int i = 0; i < t; ++i) {
    Ival val = q.eval(xi[i].enclose(prec)).abs().mul_rat(Rat(1) / qnorm);
    min_ratio = first ? val : min_ratio.min(val);
    first = false;
  }
  rep.lhs = min_ratio.pow_ui(static_cast<unsigned long>(t));
  Rat h = Rat(q.primitive_part().sup_norm());
  Rat rhs = rat_pow(x, -q.degree()) * rat_pow(h, -(n - 2 * k + 2));
  rep.rhs = Ival::from_rat(rhs, prec);
  if (rhs > 0) rep.measured_constant = rep.lhs.mul_rat(Rat(1) / rhs);
  return rep;
}

namespace {

// rows of the linear conditions phi(T^l * D, y) = 0 where D runs over the
// derived family of G (derivatives or compositions)
std::vector<std::vector<Rat>> condition_rows(const std::vector<Int>& y, int n,
                                             int k, int u, int gdim,
                                             const AuxCase& mode) {
  std::vector<std::vector<Rat>> rows;
  for (int j = 0; j <= u; ++j) {
    // matrix of the map G -> (j-th derived polynomial), gdim columns
    // derived[c] = coefficients of derived(T^c)
    std::vector<RatPoly> derived(gdim);
    for (int c = 0; c < gdim; ++c) {
      RatPoly tc = RatPoly::monomial(c);
      if (mode.kind == AuxCase::Kind::Derivative) {
        for (int dcount = 0; dcount < j; ++dcount) tc = tc.derivative();
      } else {
        // compose with A^j, A(T) = a T + b
        Rat aj(1), bj(0);
        for (int step = 0; step < j; ++step) {
          bj = mode.a * bj + mode.b;
          aj = mode.a * aj;
        }
        tc = tc.compose_linear(aj, bj);
      }
      derived[c] = tc;
    }
    for (int l = 0; l < k; ++l) {
      std::vector<Rat> row(gdim, Rat(0));
      for (int c = 0; c < gdim; ++c) {
        // phi(T^l * derived[c], y)
        Rat acc(0);
        for (int d = 0; d <= derived[c].degree(); ++d) {
          int idx = l + d;
          if (idx <= n) acc += derived[c].coeff(d) * Rat(y[idx]);
        }
        row[c] = acc;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

AuxReport auxiliary_polynomial(const std::vector<Int>& y,
                               const std::vector<PointHandle>& xi, int t,
                               const Rat& x, const Rat& yparam, int n, int k,
                               int u, const AuxCase& mode, mpfr_prec_t prec) {
  if (static_cast<int>(y.size()) != n + 1)
    throw ConfigError("aux: y must have length n+1");
  if (k < 1 || n - 2 * k + 2 < 0) throw ConfigError("aux: bad k");
  if (u < 0) throw ConfigError("aux: u >= 0");
  if (mode.kind == AuxCase::Kind::Composition && mode.a == 0)
    throw ConfigError("aux: composition map must have degree one");
  const int gdim = n - 2 * k + 3;

  AuxReport rep;
  // side condition ledger
  int s = static_cast<int>(xi.size());
  int exponent = mode.kind == AuxCase::Kind::Derivative ? t + s * u : t + u;
  rep.condition_lhs =
      rat_pow_interval(x * yparam, Rat(exponent), prec);
  rep.condition_rhs = rat_pow(x, n - 2 * k + 3);

  std::vector<std::vector<Rat>> rows = condition_rows(y, n, k, u, gdim, mode);
  rep.condition_rows = static_cast<int>(rows.size());
  // clear denominators row by row for the integer kernel
  IntMat m(static_cast<int>(rows.size()), gdim);
  for (size_t r = 0; r < rows.size(); ++r) {
    Int den(1);
    for (const Rat& v : rows[r])
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    for (int c = 0; c < gdim; ++c)
      m.at(static_cast<int>(r), c) = Rat(rows[r][c] * Rat(den)).get_num();
  }
  auto kernel = right_kernel_integer(m);
  rep.kernel_dimension = static_cast<int>(kernel.size());
  if (kernel.empty()) {
    rep.feasible = false;
    return rep;
  }
  // shortest vector in the kernel lattice by sup norm, after LLL
  IntMat basis(static_cast<int>(kernel.size()), gdim);
  for (size_t i = 0; i < kernel.size(); ++i)
    for (int c = 0; c < gdim; ++c) basis.at(static_cast<int>(i), c) = kernel[i][c];
  IntMat red = lll_reduce_rows(basis);
  Int best_norm(-1);
  std::vector<Int> best;
  for (int i = 0; i < red.rows; ++i) {
    std::vector<Int> cand(gdim);
    Int norm(0);
    bool zero = true;
    for (int c = 0; c < gdim; ++c) {
      cand[c] = red.at(i, c);
      if (cand[c] != 0) zero = false;
      Int a = abs(cand[c]);
      if (a > norm) norm = a;
    }
    if (zero) continue;
    if (best_norm < 0 || norm < best_norm) {
      best_norm = norm;
      best = cand;
    }
  }
  rep.G = IntPoly(best).primitive_part();
  rep.height = Rat(rep.G.sup_norm());
  rep.feasible = rep.height <= x;

  // exact verification: every derived polynomial annihilates against y
  std::vector<std::vector<Rat>> verify =
      condition_rows(y, n, k, u, gdim, mode);
  for (const auto& row : verify) {
    Rat acc(0);
    for (int c = 0; c < gdim; ++c) acc += row[c] * Rat(rep.G.coeff(c));
    if (acc != 0) throw ConfigError("aux: verification failed");
  }
  return rep;
}

FactorCheckReport factor_degree_height_check(const IntPoly& q, const IntPoly& g,
                                             int u, const AuxCase& mode,
                                             const Rat& x, int n, int k,
                                             mpfr_prec_t prec) {
  if (q.is_zero() || g.is_zero())
    throw ConfigError("factor check: zero polynomial");
  if (!divide_exact(g.to_rat(), q.to_rat()).has_value())
    throw ConfigError("factor check: Q does not divide G");
  FactorCheckReport rep{false, false, Ival::exact_zero(prec)};
  if (mode.kind == AuxCase::Kind::Derivative) {
    RatPoly rest = g.to_rat();
    bool ok = true;
    for (int j = 0; j <= u; ++j) {
      auto quot = divide_exact(rest, q.to_rat());
      if (!quot) {
        ok = false;
        break;
      }
      rest = *quot;
    }
    rep.divides_family = ok;
  } else {
    if (mode.a == 0) throw ConfigError("factor check: degenerate map");
    bool ok = true;
    for (int j = 0; j <= u && ok; ++j) {
      // Q o A^{-j}: apply the inverse map j times
      RatPoly qa = q.to_rat();
      for (int step = 0; step < j; ++step)
        qa = qa.compose_linear(Rat(1) / mode.a, -mode.b / mode.a);
      if (!divide_exact(g.to_rat(), qa).has_value()) ok = false;
    }
    rep.divides_family = ok;
  }
  rep.degree_bound_ok = Rat(q.degree()) <= Rat(n - 2 * k + 2) / Rat(u + 1);
  Rat h(q.primitive_part().sup_norm());
  Ival xpow = rat_pow_interval(x, Rat(1, u + 1), prec);
  rep.height_ratio = Ival::from_rat(h, prec) / xpow;
  return rep;
}

ProofPreset proof_preset(int n, int t, int nu, int D) {
  if (nu < 1) throw ConfigError("preset: nu >= 1");
  ProofPreset p;
  p.k = static_cast<int>(floor_rat(Rat((n + 2) * t) / Rat(nu)).get_si());
  p.u = D * t;
  return p;
}

}  // namespace adw
