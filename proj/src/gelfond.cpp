#include "adw/gelfond.hpp"

#include <algorithm>
#include <functional>

#include "adw/lll.hpp"

namespace adw {

ProgressionPoints ProgressionPoints::make(const ProgressionCase& c,
                                          const PointSpec& seed, int n_plus_1) {
  if (n_plus_1 < 2) throw ConfigError("progression needs at least 2 points");
  int n = n_plus_1 - 1;
  c.validate(n);
  if (!c.is_additive()) {
    // multiplicative progressions need a nonzero seed
    if (seed.exact() && *seed.exact() == 0)
      throw ConfigError("multiplicative progression needs xi_1 != 0");
  }
  return {c, seed, n_plus_1};
}

PointHandle ProgressionPoints::point(int index) const {
  if (index < 1 || index > count)
    throw ConfigError("progression point index out of range");
  const ProgressionCase c = pcase;
  const PointSpec base = seed;
  PointHandle h;
  if (c.is_additive()) {
    Rat offset = c.gamma * Rat(index - 1);
    if (base.exact()) {
      h = PointHandle::from_rat(*base.exact() + offset);
    } else {
      h.enclose = [base, offset](mpfr_prec_t prec) {
        return base.enclosure(prec).add_rat(offset);
      };
      h.desc = base.str() + "+" + rat_to_string(offset);
    }
  } else {
    Rat factor = rat_pow(c.gamma, index - 1);
    if (base.exact()) {
      h = PointHandle::from_rat(*base.exact() * factor);
    } else {
      h.enclose = [base, factor](mpfr_prec_t prec) {
        return base.enclosure(prec).mul_rat(factor);
      };
      h.desc = base.str() + "*" + rat_to_string(factor);
    }
  }
  return h;
}

std::vector<PointHandle> ProgressionPoints::range(int from, int to) const {
  std::vector<PointHandle> out;
  for (int i = from; i <= to; ++i) out.push_back(point(i));
  return out;
}

namespace {

// Certify the found record: ||Q|| <= Y exactly, |Q(xi_i)| <= Y^{-e} with
// outward-rounded intervals, at the given precision.
bool certify_candidate(const IntPoly& q, const ProgressionPoints& pts, int n,
                       int t, const Rat& Y, const Rat& exponent,
                       mpfr_prec_t prec) {
  if (q.is_zero() || q.degree() > n) return false;
  if (Rat(q.sup_norm()) > Y) return false;
  Ival tau = rat_pow_interval(Y, -exponent, prec);
  for (int i = t + 1; i <= n + 1; ++i) {
    Ival val = q.eval(pts.point(i).enclose(prec)).abs();
    if (!val.certainly_le_rat(tau.lo_rat())) return false;
  }
  return true;
}

RatBracket candidate_gauge(const IntPoly& q, const ProgressionPoints& pts,
                           int n, int t, const Rat& Y, const Rat& exponent,
                           mpfr_prec_t prec) {
  Ival tau = rat_pow_interval(Y, -exponent, prec);
  Rat lo = Rat(q.sup_norm()) / Y;
  Rat hi = lo;
  for (int i = t + 1; i <= n + 1; ++i) {
    Ival val = q.eval(pts.point(i).enclose(prec)).abs();
    lo = rat_max(lo, val.lo_rat() / tau.hi_rat());
    hi = rat_max(hi, val.hi_rat() / tau.lo_rat());
  }
  return {lo, hi};
}

}  // namespace

FeasibilityRecord criterion_search(const ProgressionPoints& pts, int n, int t,
                                   const Rat& Y, const Rat& exponent,
                                   bool exhaustive, mpfr_prec_t prec) {
  if (n < 1 || t < 1 || t > n) throw ConfigError("criterion: 1 <= t <= n");
  if (pts.count < n + 1) throw ConfigError("criterion: not enough points");
  if (Y < 1) throw ConfigError("criterion: Y >= 1");
  if (exponent < 0) throw ConfigError("criterion: exponent >= 0");

  FeasibilityRecord rec;
  rec.Y = Y;
  rec.exponent = exponent;

  Ival tau = rat_pow_interval(Y, -exponent, prec);
  const int d = n + 1;
  (void)d;

  // the Cbar-style body: ||q||/Y and |Q(xi_i)| / tau
  auto eval_points = pts.range(t + 1, n + 1);

  if (exhaustive) {
    if (n > 6)
      throw ConfigError("exhaustive criterion search supported for n <= 6");
    // permissive body: point bound tau.hi (1/X with X = 1/tau.hi), so every
    // true solution appears among the enumerated candidates
    BodySpec spec;
    spec.n = n;
    spec.which = BodyKind::Cbar;
    spec.X = rat_max(Rat(1), Rat(1) / tau.hi_rat());
    spec.Y = Y;
    spec.points = eval_points;
    spec.mults.assign(eval_points.size(), 1);
    std::optional<IntPoly> best;
    RatBracket best_gauge{Rat(0), Rat(0)};
    bool ambiguous = false;
    for (const EnumeratedPoint& cand_pt : enumerate_body_points(spec, Rat(1))) {
      IntPoly cand{std::vector<Int>(cand_pt.q.begin(), cand_pt.q.end())};
      RatBracket gauge = candidate_gauge(cand, pts, n, t, Y, exponent, prec);
      if (gauge.lo > 1) continue;  // certainly violates the true constraint
      if (certify_candidate(cand, pts, n, t, Y, exponent, prec)) {
        if (!best || gauge.hi < best_gauge.hi) {
          best = cand;
          best_gauge = gauge;
        }
      } else {
        ambiguous = true;  // not certified, not refuted, at this precision
      }
    }
    if (best) {
      rec.certainty = SearchCertainty::CertifiedFound;
      rec.Q = best;
      rec.best_gauge = best_gauge;
      rec.reverified = certify_candidate(*best, pts, n, t, Y, exponent, prec * 2);
    } else if (!ambiguous) {
      rec.certainty = SearchCertainty::CertifiedAbsent;
    } else {
      rec.certainty = SearchCertainty::ReductionNoFind;
    }
    return rec;
  }

  // reduction search on the weighted embedding
  RatMat gram(d, d);
  Rat tau_mid = tau.mid_rat();
  for (int k = 0; k < d; ++k)
    gram.at(k, k) += Rat(1) / (Y * Y);
  for (const auto& pt : eval_points) {
    Ival x = pt.enclose(prec);
    std::vector<Rat> row(d);
    Rat power(1);
    Rat xm = x.mid_rat();
    for (int k = 0; k < d; ++k) {
      row[k] = power / tau_mid;
      power *= xm;
    }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) gram.at(a, b) += row[a] * row[b];
  }
  LllResult red = lll_reduce_gram(gram);
  std::optional<IntPoly> best;
  RatBracket best_gauge{Rat(0), Rat(0)};
  auto consider = [&](const std::vector<Int>& v) {
    IntPoly cand{std::vector<Int>(v.begin(), v.end())};
    if (cand.is_zero()) return;
    RatBracket gauge = candidate_gauge(cand, pts, n, t, Y, exponent, prec);
    if (!best || gauge.hi < best_gauge.hi) {
      best = cand;
      best_gauge = gauge;
    }
  };
  for (int i = 0; i < d; ++i) {
    std::vector<Int> v(d);
    for (int k = 0; k < d; ++k) v[k] = red.transform.at(i, k);
    consider(v);
    // small combinations of the two shortest rows widen the net
    if (i > 0) {
      for (long c : {-2L, -1L, 1L, 2L}) {
        std::vector<Int> w(d);
        for (int k = 0; k < d; ++k)
          w[k] = red.transform.at(i, k) + Int(c) * red.transform.at(0, k);
        consider(w);
      }
    }
  }
  if (best && certify_candidate(*best, pts, n, t, Y, exponent, prec)) {
    rec.certainty = SearchCertainty::CertifiedFound;
    rec.Q = best;
    rec.best_gauge = best_gauge;
    rec.reverified = certify_candidate(*best, pts, n, t, Y, exponent, prec * 2);
  } else {
    rec.certainty = SearchCertainty::ReductionNoFind;
    if (best) rec.best_gauge = best_gauge;
  }
  return rec;
}

FeasibilityRecord dirichlet_witness(const ProgressionPoints& pts, int n, int t,
                                    const Rat& Y, const Rat& delta,
                                    bool exhaustive, mpfr_prec_t prec) {
  Rat dirichlet = Rat(t) / Rat(n + 1 - t);
  Rat exponent = dirichlet * (Rat(1) - delta);
  return criterion_search(pts, n, t, Y, exponent, exhaustive, prec);
}

std::vector<PhiScanEntry> phi_minimum_scan(const ProgressionPoints& pts, int n,
                                           int t, int nu,
                                           const std::vector<Rat>& x_grid,
                                           MinimaMethod method,
                                           mpfr_prec_t prec) {
  if (nu < 1) throw ConfigError("phi scan: nu >= 1");
  std::vector<PhiScanEntry> out;
  for (const Rat& x : x_grid) {
    if (x < 1) throw ConfigError("phi scan: X >= 1");
    Ival y_iv = rat_pow_interval(x, Rat(n + 2 - nu) / Rat(nu), 64);
    Rat y = rat_max(Rat(1), y_iv.lo_rat());
    BodySpec spec;
    spec.n = n;
    spec.which = BodyKind::Cphi;
    spec.X = x;
    spec.Y = y;
    spec.points = pts.range(1, t);
    spec.mults.assign(spec.points.size(), 1);
    MinimaReport rep = successive_minima(spec, method, prec);
    out.push_back({x, y, rep.lambda.front(), rep.witnesses.front()});
  }
  return out;
}

}  // namespace adw
