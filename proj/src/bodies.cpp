#include "adw/bodies.hpp"

#include <algorithm>
#include <functional>
#include <functional>
#include <random>

#include "adw/lll.hpp"
#include "adw/places.hpp"

namespace adw {

namespace {

Rat falling_factorial(int k, int j) {
  Rat f(1);
  for (int i = 0; i < j; ++i) f *= Rat(k - i);
  return f;
}

}  // namespace

int BodySpec::total_multiplicity() const {
  int t = 0;
  for (int m : mults) t += m;
  return t;
}

bool BodySpec::is_rational() const {
  for (const auto& p : points)
    if (!p.exact) return false;
  return true;
}

void BodySpec::validate() const {
  if (n < 1) throw ConfigError("body: n >= 1 required");
  if (X < 1 || Y < 1) throw ConfigError("body: X, Y >= 1 required");
  if (mults.size() != points.size())
    throw ConfigError("body: multiplicity list must match points");
  for (int m : mults)
    if (m < 1) throw ConfigError("body: multiplicities must be positive");
  if (!points.empty()) {
    int t = total_multiplicity();
    if (which == BodyKind::C || which == BodyKind::Cphi) {
      if (t < 1 || t > n) throw ConfigError("body: needs 1 <= t <= n");
    }
    // pairwise distinctness, escalating precision for enclosed points
    for (size_t i = 0; i < points.size(); ++i)
      for (size_t j = i + 1; j < points.size(); ++j) {
        if (points[i].exact && points[j].exact) {
          if (*points[i].exact == *points[j].exact)
            throw ConfigError("body: coincident points " + points[i].desc +
                              ", " + points[j].desc);
          continue;
        }
        mpfr_prec_t prec = kDefaultPrecision;
        bool separated = false;
        for (int round = 0; round < 8 && !separated; ++round) {
          Ival a = points[i].enclose(prec), b = points[j].enclose(prec);
          if (!a.overlaps(b)) separated = true;
          prec *= 2;
        }
        if (!separated)
          throw ConfigError("body: points numerically indistinguishable: " +
                            points[i].desc + ", " + points[j].desc);
      }
  }
}

SlabSystem BodySpec::slab_system_exact() const {
  if (!is_rational())
    throw ConfigError("exact slab system needs rational points");
  SlabSystem s;
  const int d = dim();
  Rat box = (which == BodyKind::Cbar) ? Y : X;
  Rat point_bound = (which == BodyKind::Cbar) ? Rat(1) / X : Rat(1) / Y;
  s.box.assign(d, box);
  for (size_t i = 0; i < points.size(); ++i) {
    Rat xi = *points[i].exact;
    int mi = which == BodyKind::Cbar ? 1 : mults[i];
    for (int j = 0; j < mi; ++j) {
      std::vector<Rat> c(d, Rat(0));
      for (int k = j; k < d; ++k)
        c[k] = falling_factorial(k, j) * rat_pow(xi, k - j);
      s.slab_c.push_back(std::move(c));
      s.slab_b.push_back(point_bound);
    }
  }
  return s;
}

SlabSystemIv BodySpec::slab_system(mpfr_prec_t prec) const {
  SlabSystemIv s;
  const int d = dim();
  Rat box = (which == BodyKind::Cbar) ? Y : X;
  Rat point_bound = (which == BodyKind::Cbar) ? Rat(1) / X : Rat(1) / Y;
  s.box.assign(d, box);
  for (size_t i = 0; i < points.size(); ++i) {
    Ival xi = points[i].enclose(prec);
    int mi = which == BodyKind::Cbar ? 1 : mults[i];
    for (int j = 0; j < mi; ++j) {
      std::vector<Ival> c(d, Ival::exact_zero(prec));
      Ival power = Ival::from_long(1, prec);  // xi^(k-j)
      for (int k = j; k < d; ++k) {
        c[k] = power.mul_rat(falling_factorial(k, j));
        power = power * xi;
      }
      s.slab_c.push_back(std::move(c));
      s.slab_b.push_back(point_bound);
    }
  }
  return s;
}

// ---------------------------------------------------------------- gauge

namespace {

// Linear rows defining a polytope gauge F(q) = max_j |<c_j, q>| / b_j with
// rational outer bounds on the coefficients for exact pruning arithmetic.
struct GaugeRow {
  std::vector<Rat> clo, chi;  // entrywise bounds, clo == chi when exact
  Rat b;
  bool certain = true;  // uncertain rows only raise the gauge upper bound
};

struct Gauge {
  int dim = 0;
  std::vector<GaugeRow> rows;
  std::vector<Rat> radius;  // F(q) >= |q_k| / radius[k]
  bool exact = true;
  // exact positive definite form with sqrt(q^T fp_gram q) <= F(q): enables
  // Fincke-Pohst enumeration where the coordinate box is loose (dual gauges)
  std::optional<RatMat> fp_gram;

  // value bounds of row r at an integer point
  std::pair<Rat, Rat> row_value(const GaugeRow& row, const std::vector<Int>& q) const {
    Rat lo(0), hi(0);
    for (int k = 0; k < dim; ++k) {
      if (q[k] == 0) continue;
      Rat qk(q[k]);
      if (qk > 0) {
        lo += qk * row.clo[k];
        hi += qk * row.chi[k];
      } else {
        lo += qk * row.chi[k];
        hi += qk * row.clo[k];
      }
    }
    return {lo, hi};
  }

  // gauge bounds [flo, fhi]
  std::pair<Rat, Rat> eval(const std::vector<Int>& q) const {
    Rat flo(0), fhi(0);
    for (const GaugeRow& row : rows) {
      auto [lo, hi] = row_value(row, q);
      Rat abs_hi = rat_max(rat_abs(lo), rat_abs(hi));
      Rat abs_lo = (sgn(lo) <= 0 && sgn(hi) >= 0) ? Rat(0)
                                                  : rat_min(rat_abs(lo), rat_abs(hi));
      if (row.certain) flo = rat_max(flo, abs_lo / row.b);
      fhi = rat_max(fhi, abs_hi / row.b);
    }
    return {flo, fhi};
  }
};

// F(q) >= sqrt(q^T G q) for G = (sum of row outer products / b^2) / N,
// shrunk by a rigorous Frobenius error term when rows are intervals.
void attach_primal_fp_gram(Gauge& g) {
  const int d = g.dim;
  const Rat n_rows(static_cast<long>(g.rows.size()));
  RatMat q(d, d);
  Rat err(0);
  for (const GaugeRow& row : g.rows) {
    if (!row.certain) continue;
    std::vector<Rat> mid(d), half(d);
    for (int k = 0; k < d; ++k) {
      mid[k] = (row.clo[k] + row.chi[k]) / 2;
      half[k] = (row.chi[k] - row.clo[k]) / 2;
    }
    Rat b2 = row.b * row.b;
    for (int a = 0; a < d; ++a) {
      for (int k = 0; k < d; ++k) {
        if (mid[a] == 0 && half[a] == 0) continue;
        q.at(a, k) += mid[a] * mid[k] / b2;
        // entrywise error of the outer product
        Rat e = (rat_abs(mid[a]) * half[k] + half[a] * rat_abs(mid[k]) +
                 half[a] * half[k]) /
                b2;
        err += e;
      }
    }
  }
  // G_lo = Q_mid/N - eps I with eps the summed entrywise error over N
  Rat eps = err / n_rows;
  RatMat glo(d, d);
  bool pd_plausible = true;
  for (int a = 0; a < d; ++a) {
    for (int k = 0; k < d; ++k) glo.at(a, k) = q.at(a, k) / n_rows;
    glo.at(a, a) -= eps;
    if (glo.at(a, a) <= 0) pd_plausible = false;
  }
  if (pd_plausible) g.fp_gram = glo;
}

Gauge primal_gauge(const BodySpec& spec, mpfr_prec_t prec) {
  Gauge g;
  g.dim = spec.dim();
  Rat box = (spec.which == BodyKind::Cbar) ? spec.Y : spec.X;
  g.radius.assign(g.dim, box);
  // cube rows
  for (int k = 0; k < g.dim; ++k) {
    GaugeRow row;
    row.clo.assign(g.dim, Rat(0));
    row.chi.assign(g.dim, Rat(0));
    row.clo[k] = row.chi[k] = 1;
    row.b = box;
    g.rows.push_back(std::move(row));
  }
  if (spec.is_rational()) {
    SlabSystem s = spec.slab_system_exact();
    for (size_t j = 0; j < s.slab_c.size(); ++j) {
      GaugeRow row;
      row.clo = s.slab_c[j];
      row.chi = s.slab_c[j];
      row.b = s.slab_b[j];
      g.rows.push_back(std::move(row));
    }
  } else {
    g.exact = false;
    SlabSystemIv s = spec.slab_system(prec);
    for (size_t j = 0; j < s.slab_c.size(); ++j) {
      GaugeRow row;
      row.b = s.slab_b[j];
      for (const Ival& c : s.slab_c[j]) {
        row.clo.push_back(c.lo_rat());
        row.chi.push_back(c.hi_rat());
      }
      g.rows.push_back(std::move(row));
    }
  }
  attach_primal_fp_gram(g);
  return g;
}

// Dual gauge h(y) = max over vertices v of |<v, y>|.
Gauge dual_gauge(const BodySpec& spec, mpfr_prec_t prec) {
  Gauge g;
  g.dim = spec.dim();
  if (spec.is_rational()) {
    SlabSystem s = spec.slab_system_exact();
    auto verts = polytope_vertices(s);
    if (verts.empty()) throw ConfigError("dual gauge: empty primal body");
    for (const auto& v : verts) {
      GaugeRow row;
      row.clo = v;
      row.chi = v;
      row.b = Rat(1);
      g.rows.push_back(std::move(row));
    }
    auto radii = coordinate_inradii(s);
    for (const Rat& r : radii) g.radius.push_back(Rat(1) / r);
    // primal ellipsoid E_p(x)^2 = x^T Q_p x >= F_p(x)^2 gives the dual
    // lower-bound form h(y)^2 >= y^T Q_p^{-1} y
    const int d = g.dim;
    RatMat qp(d, d);
    for (int k = 0; k < d; ++k)
      qp.at(k, k) += Rat(1) / (s.box[k] * s.box[k]);
    for (size_t j = 0; j < s.slab_c.size(); ++j)
      for (int a = 0; a < d; ++a) {
        if (s.slab_c[j][a] == 0) continue;
        for (int b = 0; b < d; ++b) {
          if (s.slab_c[j][b] == 0) continue;
          qp.at(a, b) +=
              s.slab_c[j][a] * s.slab_c[j][b] / (s.slab_b[j] * s.slab_b[j]);
        }
      }
    auto inv = inverse(qp);
    if (inv) g.fp_gram = *inv;
  } else {
    g.exact = false;
    SlabSystemIv s = spec.slab_system(prec);
    auto verts = polytope_vertices(s, prec);
    bool any_certain = false;
    for (const auto& v : verts) {
      GaugeRow row;
      row.b = Rat(1);
      row.certain = v.certain;
      any_certain = any_certain || v.certain;
      for (const Ival& c : v.x) {
        row.clo.push_back(c.lo_rat());
        row.chi.push_back(c.hi_rat());
      }
      g.rows.push_back(std::move(row));
    }
    if (!any_certain)
      throw PrecisionError("dual gauge: no certified vertex of the primal");
    auto radii = coordinate_inradii(s, prec);
    for (const Ival& r : radii) {
      if (!r.certainly_gt_rat(Rat(0)))
        throw PrecisionError("dual gauge: inradius not certainly positive");
      g.radius.push_back(Rat(1) / r.lo_rat());
    }
  }
  return g;
}

// ------------------------------------------------------------ enumeration

struct EnumPoint {
  std::vector<Int> q;
  Rat flo, fhi;
};

// All nonzero integer points (up to sign) with q^T G q <= r2, by the
// Fincke-Pohst recursion on the exact LDL^T decomposition of G.
std::vector<std::vector<Int>> enumerate_ellipsoid(const RatMat& g, const Rat& r2,
                                                  size_t max_nodes) {
  const int d = g.rows;
  // G = L D L^T with L unit lower triangular:
  // q^T G q = sum_i D_i ((L^T q)_i)^2, (L^T q)_i = q_i + sum_{j>i} L_ji q_j,
  // so enumerating q_{d-1} first makes every level's shift available.
  std::vector<std::vector<Rat>> lmat(d, std::vector<Rat>(d, Rat(0)));
  std::vector<Rat> diag(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      Rat v = g.at(i, j);
      for (int k = 0; k < j; ++k) v -= diag[k] * lmat[i][k] * lmat[j][k];
      if (diag[j] == 0) throw ConfigError("fp: form not positive definite");
      lmat[i][j] = v / diag[j];
    }
    Rat v = g.at(i, i);
    for (int k = 0; k < i; ++k) v -= diag[k] * lmat[i][k] * lmat[i][k];
    if (v <= 0) throw ConfigError("fp: form not positive definite");
    diag[i] = v;
    lmat[i][i] = 1;
  }
  std::vector<std::vector<Int>> out;
  std::vector<Int> q(d, Int(0));
  size_t nodes = 0;
  // level i from d-1 down to 0; partial = sum of completed terms
  std::function<void(int, const Rat&, bool)> rec = [&](int i, const Rat& partial,
                                                       bool nonzero) {
    if (++nodes > max_nodes)
      throw InfeasibleError("enumeration budget exceeded; use the reduced tier");
    if (i < 0) {
      if (nonzero) out.push_back(q);
      return;
    }
    Rat shift(0);
    for (int j = i + 1; j < d; ++j)
      if (q[j] != 0) shift += lmat[j][i] * Rat(q[j]);
    Rat budget = r2 - partial;
    if (budget < 0) return;
    // valid q_i form a contiguous interval around -shift; scan outward
    Int center = round_rat(-shift);
    auto term_of = [&](const Int& v) -> Rat {
      Rat t = Rat(v) + shift;
      return Rat(diag[i] * t * t);
    };
    for (Int v = center;; --v) {
      if (!nonzero && v < 0) break;  // sign symmetry on the leading index
      Rat term = term_of(v);
      if (term > budget) break;
      q[i] = v;
      rec(i - 1, partial + term, nonzero || v != 0);
    }
    for (Int v = center + 1;; ++v) {
      Rat term = term_of(v);
      if (term > budget) break;
      q[i] = v;
      rec(i - 1, partial + term, nonzero || v != 0);
    }
    q[i] = 0;
  };
  rec(d - 1, Rat(0), false);
  return out;
}

// All nonzero integer points (up to sign) with gauge lower bound <= bound.
// Complete: every lattice point with F(q) <= bound appears (or its negative).
std::vector<EnumPoint> enumerate_ball(const Gauge& g, const Rat& bound,
                                      size_t max_nodes) {
  const int d = g.dim;
  bool use_fp = false;
  if (g.fp_gram) {
    // prefer Fincke-Pohst when the naive coordinate box is large
    Rat box_nodes(1);
    for (int k = 0; k < d; ++k)
      box_nodes *= 2 * rat_max(Rat(1), bound * g.radius[k]) + 1;
    use_fp = box_nodes > Rat(200000);
  }
  if (use_fp) {
    // F >= sqrt(q^T G q): enumerate the ellipsoid and filter by the gauge
    std::vector<EnumPoint> out;
    for (auto& q : enumerate_ellipsoid(*g.fp_gram, Rat(bound * bound), max_nodes)) {
      auto [flo, fhi] = g.eval(q);
      if (flo <= bound) out.push_back({std::move(q), flo, fhi});
    }
    return out;
  }
  // coordinate order: smallest box first for earlier pruning
  std::vector<int> order(d);
  for (int k = 0; k < d; ++k) order[k] = k;
  std::vector<Int> box(d);
  for (int k = 0; k < d; ++k) box[k] = floor_rat(bound * g.radius[k]);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return box[a] < box[b]; });

  // per-row suffix slack: max |contribution| of coordinates not yet set
  const size_t m = g.rows.size();
  std::vector<std::vector<Rat>> suffix(m, std::vector<Rat>(d + 1, Rat(0)));
  for (size_t r = 0; r < m; ++r)
    for (int pos = d - 1; pos >= 0; --pos) {
      int k = order[pos];
      Rat mag = rat_max(rat_abs(g.rows[r].clo[k]), rat_abs(g.rows[r].chi[k]));
      suffix[r][pos] = suffix[r][pos + 1] + mag * Rat(box[k]);
    }

  std::vector<EnumPoint> out;
  std::vector<Int> q(d, Int(0));
  std::vector<Rat> row_lo(m, Rat(0)), row_hi(m, Rat(0));
  size_t nodes = 0;

  auto emit = [&](bool nonzero_seen) {
    if (!nonzero_seen) return;
    Rat flo(0), fhi(0);
    for (size_t r = 0; r < m; ++r) {
      Rat abs_hi = rat_max(rat_abs(row_lo[r]), rat_abs(row_hi[r]));
      Rat abs_lo = (sgn(row_lo[r]) <= 0 && sgn(row_hi[r]) >= 0)
                       ? Rat(0)
                       : rat_min(rat_abs(row_lo[r]), rat_abs(row_hi[r]));
      if (g.rows[r].certain) flo = rat_max(flo, abs_lo / g.rows[r].b);
      fhi = rat_max(fhi, abs_hi / g.rows[r].b);
    }
    if (flo <= bound) out.push_back({q, flo, fhi});
  };

  std::function<void(int, bool)> dfs = [&](int pos, bool nonzero_seen) {
    if (++nodes > max_nodes)
      throw InfeasibleError("enumeration budget exceeded; use the reduced tier");
    int k = order[pos];
    Int lo_k = nonzero_seen ? -box[k] : Int(0);  // sign symmetry
    Int hi_k = box[k];
    if (pos == d - 1) {
      // window the last coordinate by the sign-definite certain rows
      for (size_t r = 0; r < m; ++r) {
        if (!g.rows[r].certain) continue;
        const Rat& clo = g.rows[r].clo[k];
        const Rat& chi = g.rows[r].chi[k];
        if (!((clo > 0 && chi > 0) || (clo < 0 && chi < 0))) continue;
        Rat bb = bound * g.rows[r].b;
        Rat cand_min, cand_max;
        bool first = true;
        for (const Rat* c : {&clo, &chi})
          for (int side = 0; side < 2; ++side) {
            Rat num = side == 0 ? Rat(-bb - row_hi[r]) : Rat(bb - row_lo[r]);
            Rat v = num / *c;
            if (first || v < cand_min) cand_min = v;
            if (first || v > cand_max) cand_max = v;
            first = false;
          }
        Int wlo = ceil_rat(cand_min), whi = floor_rat(cand_max);
        if (wlo > lo_k) lo_k = wlo;
        if (whi < hi_k) hi_k = whi;
      }
    }
    for (Int v = lo_k; v <= hi_k; ++v) {
      q[k] = v;
      bool ok = true;
      std::vector<Rat> save_lo, save_hi;
      save_lo.reserve(m);
      save_hi.reserve(m);
      for (size_t r = 0; r < m; ++r) {
        save_lo.push_back(row_lo[r]);
        save_hi.push_back(row_hi[r]);
        if (v != 0) {
          Rat qk(v);
          if (qk > 0) {
            row_lo[r] += qk * g.rows[r].clo[k];
            row_hi[r] += qk * g.rows[r].chi[k];
          } else {
            row_lo[r] += qk * g.rows[r].chi[k];
            row_hi[r] += qk * g.rows[r].clo[k];
          }
        }
        if (g.rows[r].certain) {
          // prune when the row is certainly violated for every completion
          if (row_lo[r] - suffix[r][pos + 1] > bound * g.rows[r].b ||
              row_hi[r] + suffix[r][pos + 1] < -bound * g.rows[r].b) {
            ok = false;
          }
        }
      }
      if (ok) {
        if (pos == d - 1)
          emit(nonzero_seen || v != 0);
        else
          dfs(pos + 1, nonzero_seen || v != 0);
      }
      for (size_t r = 0; r < m; ++r) {
        row_lo[r] = save_lo[r];
        row_hi[r] = save_hi[r];
      }
    }
    q[k] = 0;
  };
  if (d > 0) dfs(0, false);
  return out;
}

// Greedy independent subset by a chosen key; returns indices into pts.
std::vector<size_t> greedy_independent(const std::vector<EnumPoint>& pts,
                                       const std::vector<size_t>& order,
                                       int dim, int want) {
  std::vector<size_t> picked;
  RatMat basis(0, dim);
  std::vector<std::vector<Rat>> rows;
  for (size_t idx : order) {
    if (static_cast<int>(picked.size()) == want) break;
    // reduce against current rows
    std::vector<Rat> v(pts[idx].q.begin(), pts[idx].q.end());
    for (const auto& r : rows) {
      int pivot = -1;
      for (int k = 0; k < dim; ++k)
        if (r[k] != 0) {
          pivot = k;
          break;
        }
      if (pivot < 0 || v[pivot] == 0) continue;
      Rat f = v[pivot] / r[pivot];
      for (int k = 0; k < dim; ++k) v[k] -= f * r[k];
    }
    bool zero = true;
    for (const Rat& x : v)
      if (x != 0) zero = false;
    if (zero) continue;
    rows.push_back(v);
    picked.push_back(idx);
  }
  return picked;
}

struct ReducedCore {
  IntMat basis;                   // LLL-reduced lattice vectors (rows)
  std::vector<RatBracket> values; // gauge brackets per row
};

RatBracket gauge_eval_bracket(const Gauge& g, const std::vector<Int>& q) {
  auto [flo, fhi] = g.eval(q);
  return {flo, fhi};
}

ReducedCore reduced_core(const Gauge& g, mpfr_prec_t prec) {
  const int d = g.dim;
  // quadratic surrogate from row midpoints
  RatMat gram(d, d);
  for (const GaugeRow& row : g.rows) {
    std::vector<Rat> mid(d);
    for (int k = 0; k < d; ++k) mid[k] = (row.clo[k] + row.chi[k]) / 2;
    for (int a = 0; a < d; ++a) {
      if (mid[a] == 0) continue;
      for (int b = 0; b < d; ++b) {
        if (mid[b] == 0) continue;
        gram.at(a, b) += mid[a] * mid[b] / (row.b * row.b);
      }
    }
  }
  LllResult lll = lll_reduce_gram(gram);
  ReducedCore core;
  core.basis = lll.transform;
  for (int i = 0; i < d; ++i) {
    std::vector<Int> w(d);
    for (int k = 0; k < d; ++k) w[k] = core.basis.at(i, k);
    core.values.push_back(gauge_eval_bracket(g, w));
  }
  return core;
}

MinimaReport reduced_minima_from_gauge(const Gauge& g, mpfr_prec_t prec) {
  const int d = g.dim;
  ReducedCore core = reduced_core(g, prec);
  // sort rows by gauge upper end
  std::vector<int> order(d);
  for (int i = 0; i < d; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return core.values[a].hi < core.values[b].hi;
  });

  // upper ends: the first j sorted rows are independent, so
  // lambda_j <= max over them = value of the j-th
  std::vector<Rat> hi(d);
  for (int j = 0; j < d; ++j) hi[j] = core.values[order[j]].hi;

  // lower ends via interval Gram-Schmidt on the true quadratic form
  // E(q)^2 = sum_rows (<c, q>/b)^2, using certain rows only:
  // F >= E_certain / sqrt(N_certain).
  size_t n_certain = 0;
  for (const auto& row : g.rows)
    if (row.certain) ++n_certain;
  std::vector<std::vector<Ival>> tg(d, std::vector<Ival>(d, Ival::exact_zero(prec)));
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      Ival acc = Ival::exact_zero(prec);
      for (const GaugeRow& row : g.rows) {
        if (!row.certain) continue;
        Ival va = Ival::exact_zero(prec), vb = Ival::exact_zero(prec);
        for (int k = 0; k < d; ++k) {
          Int qa = core.basis.at(order[a], k), qb = core.basis.at(order[b], k);
          Ival ck = Ival::from_endpoints(row.clo[k], row.chi[k], prec);
          if (qa != 0) va = va + ck.mul_rat(Rat(qa));
          if (qb != 0) vb = vb + ck.mul_rat(Rat(qb));
        }
        acc = acc + va * vb / Ival::from_rat(row.b * row.b, prec);
      }
      tg[a][b] = acc;
      tg[b][a] = acc;
    }
  std::vector<Rat> gso_lo(d, Rat(0));
  bool gso_ok = true;
  {
    std::vector<std::vector<Ival>> mu(d, std::vector<Ival>(d, Ival::exact_zero(prec)));
    std::vector<Ival> B(d, Ival::exact_zero(prec));
    for (int i = 0; i < d && gso_ok; ++i) {
      for (int j = 0; j < i; ++j) {
        Ival v = tg[i][j];
        for (int l = 0; l < j; ++l) v = v - mu[j][l] * mu[i][l] * B[l];
        if (!B[j].certainly_gt_rat(Rat(0))) {
          gso_ok = false;
          break;
        }
        mu[i][j] = v / B[j];
      }
      if (!gso_ok) break;
      Ival b = tg[i][i];
      for (int j = 0; j < i; ++j) b = b - mu[i][j] * mu[i][j] * B[j];
      B[i] = b;
      if (!B[i].certainly_gt_rat(Rat(0))) {
        gso_ok = false;
        break;
      }
    }
    if (gso_ok) {
      Ival sqrt_n = Ival::from_long(static_cast<long>(n_certain), prec).sqrt();
      for (int j = 0; j < d; ++j) {
        Ival m = B[j];
        for (int l = j + 1; l < d; ++l) m = m.min(B[l]);
        gso_lo[j] = (m.sqrt() / sqrt_n).lo_rat();
        if (gso_lo[j] < 0) gso_lo[j] = Rat(0);
      }
    }
  }
  // coercivity fallback/floor: lambda_j >= j-th smallest coordinate inradius
  std::vector<Rat> inradii;
  for (const Rat& r : g.radius) inradii.push_back(Rat(1) / r);
  std::sort(inradii.begin(), inradii.end());
  MinimaReport rep;
  rep.method = MinimaMethod::Reduced;
  Rat worst_slack(1);
  for (int j = 0; j < d; ++j) {
    Rat lo = rat_max(gso_lo[j], inradii[j]);
    lo = rat_min(lo, hi[j]);
    rep.lambda.push_back({lo, hi[j]});
    std::vector<Int> w(d);
    for (int k = 0; k < d; ++k) w[k] = core.basis.at(order[j], k);
    rep.witnesses.push_back(std::move(w));
    if (lo > 0) worst_slack = rat_max(worst_slack, hi[j] / lo);
  }
  rep.slack = worst_slack;
  return rep;
}

MinimaReport exhaustive_minima_from_gauge(const Gauge& g, mpfr_prec_t prec,
                                          size_t max_nodes) {
  const int d = g.dim;
  // initial bound from a reduced pass when possible
  Rat bound(1);
  try {
    ReducedCore core = reduced_core(g, prec);
    Rat worst(0);
    for (const RatBracket& v : core.values) worst = rat_max(worst, v.hi);
    if (worst > 0) bound = worst;
  } catch (const std::exception&) {
    bound = Rat(1);
  }
  for (int attempt = 0; attempt < 24; ++attempt) {
    std::vector<EnumPoint> pts = enumerate_ball(g, bound, max_nodes);
    std::vector<size_t> by_hi(pts.size()), by_lo(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) by_hi[i] = by_lo[i] = i;
    std::sort(by_hi.begin(), by_hi.end(),
              [&](size_t a, size_t b) { return pts[a].fhi < pts[b].fhi; });
    std::sort(by_lo.begin(), by_lo.end(),
              [&](size_t a, size_t b) { return pts[a].flo < pts[b].flo; });
    std::vector<size_t> hi_pick = greedy_independent(pts, by_hi, d, d);
    if (static_cast<int>(hi_pick.size()) == d &&
        pts[hi_pick.back()].fhi <= bound) {
      std::vector<size_t> lo_pick = greedy_independent(pts, by_lo, d, d);
      MinimaReport rep;
      rep.method = MinimaMethod::Exhaustive;
      for (int j = 0; j < d; ++j) {
        Rat lo = pts[lo_pick[j]].flo;
        Rat hi = pts[hi_pick[j]].fhi;
        lo = rat_min(lo, hi);
        rep.lambda.push_back({lo, hi});
        rep.witnesses.push_back(pts[hi_pick[j]].q);
      }
      return rep;
    }
    bound *= 2;
  }
  throw InfeasibleError("exhaustive minima: bound growth did not terminate");
}

Gauge gauge_for(const BodySpec& spec, mpfr_prec_t prec) {
  spec.validate();
  if (spec.which == BodyKind::Cphi) return dual_gauge(spec, prec);
  return primal_gauge(spec, prec);
}

}  // namespace

// ------------------------------------------------------------- public API

Verdict body_membership(const IntPoly& p, const BodySpec& spec,
                        const Rat& dilation, mpfr_prec_t prec) {
  if (p.degree() > spec.n) return Verdict::No;
  std::vector<Int> q(spec.dim(), Int(0));
  for (int k = 0; k <= p.degree(); ++k) q[k] = p.coeff(k);
  mpfr_prec_t work = prec;
  for (int rounds = 0; rounds < 8; ++rounds) {
    Gauge g = gauge_for(spec, work);
    auto [flo, fhi] = g.eval(q);
    if (fhi <= dilation) return Verdict::Yes;
    if (flo > dilation) return Verdict::No;
    if (g.exact) return (fhi <= dilation) ? Verdict::Yes : Verdict::No;
    work *= 2;
  }
  return Verdict::Unknown;
}

MinimaReport successive_minima(const BodySpec& spec, MinimaMethod method,
                               mpfr_prec_t prec) {
  spec.validate();
  if (method == MinimaMethod::Exhaustive && spec.n > 6)
    throw ConfigError("exhaustive minima supported for n <= 6");
  if (method == MinimaMethod::Reduced && spec.n > 24)
    throw ConfigError("reduced minima supported for n <= 24");
  Gauge g = gauge_for(spec, prec);
  if (method == MinimaMethod::Exhaustive)
    return exhaustive_minima_from_gauge(g, prec, 80'000'000);
  return reduced_minima_from_gauge(g, prec);
}

std::vector<EnumeratedPoint> enumerate_body_points(const BodySpec& spec,
                                                   const Rat& dilation,
                                                   size_t max_nodes,
                                                   mpfr_prec_t prec) {
  spec.validate();
  Gauge g = gauge_for(spec, prec);
  std::vector<EnumeratedPoint> out;
  for (EnumPoint& p : enumerate_ball(g, dilation, max_nodes))
    out.push_back({std::move(p.q), RatBracket{p.flo, p.fhi}});
  return out;
}

VolumeReport body_volume(const BodySpec& spec, mpfr_prec_t prec,
                         unsigned long mc_samples, unsigned long seed) {
  spec.validate();
  if (spec.which == BodyKind::Cphi)
    throw ConfigError("volume of the dual body is not supported directly");
  if (spec.is_rational() && spec.n <= 6) {
    Rat v = polytope_volume(spec.slab_system_exact());
    VolumeReport rep{RatBracket{v, v}, true, 1.0, 0};
    return rep;
  }
  // Monte Carlo estimate over the coordinate box
  SlabSystemIv s = spec.slab_system(prec);
  std::mt19937_64 rng(seed);
  const int d = spec.dim();
  unsigned long inside = 0;
  for (unsigned long it = 0; it < mc_samples; ++it) {
    bool in = true;
    std::vector<Rat> x(d);
    for (int k = 0; k < d; ++k) {
      // dyadic sample in [-box, box]
      long raw = static_cast<long>(rng() >> 12);
      Rat u = Rat(raw, Int(1) << 52) * 2 - 1;
      x[k] = u * s.box[k];
    }
    for (size_t j = 0; j < s.slab_c.size() && in; ++j) {
      Ival v = Ival::exact_zero(prec);
      for (int k = 0; k < d; ++k) v = v + s.slab_c[j][k].mul_rat(x[k]);
      if (!v.abs().certainly_le_rat(s.slab_b[j])) in = false;
    }
    if (in) ++inside;
  }
  Rat boxvol(1);
  for (int k = 0; k < d; ++k) boxvol *= 2 * s.box[k];
  double p = static_cast<double>(inside) / static_cast<double>(mc_samples);
  double half_width = 2.807 * std::sqrt(p * (1 - p) / static_cast<double>(mc_samples));
  Rat lo = rat_max(Rat(0), rat_from_string(std::to_string(p - half_width)));
  Rat hi = rat_from_string(std::to_string(p + half_width));
  VolumeReport rep{RatBracket{lo * boxvol, hi * boxvol}, false, 0.995,
                   mc_samples};
  return rep;
}

DualMinimaReport dual_minima(const BodySpec& spec, const DualPairing& pairing,
                             MinimaMethod method, mpfr_prec_t prec) {
  spec.validate();
  if (spec.which != BodyKind::C && spec.which != BodyKind::Cphi)
    throw ConfigError("dual minima expects the C body (or Cphi spec)");
  if (pairing.kind == DualPairing::Kind::InvariantForm && !pairing.gram)
    throw ConfigError("invariant-form pairing needs its Gram matrix");
  if (pairing.gram) {
    if (rank(*pairing.gram) != spec.dim())
      throw ConfigError("degenerate pairing rejected");
  }
  Gauge g = dual_gauge(spec, prec);
  MinimaReport rep = (method == MinimaMethod::Exhaustive)
                         ? exhaustive_minima_from_gauge(g, prec, 80'000'000)
                         : reduced_minima_from_gauge(g, prec);
  DualMinimaReport out;
  out.minima = rep;
  std::optional<RatMat> ginv;
  if (pairing.kind == DualPairing::Kind::InvariantForm) {
    ginv = inverse(*pairing.gram);
    if (!ginv) throw ConfigError("degenerate pairing rejected");
  }
  for (const auto& z : rep.witnesses) {
    DualWitnessInfo info;
    info.z = z;
    if (ginv) {
      std::vector<Rat> zr(z.begin(), z.end());
      info.q = ginv->apply(zr);
    } else {
      info.q.assign(z.begin(), z.end());
    }
    info.gauge = gauge_eval_bracket(g, z);
    out.witnesses.push_back(std::move(info));
  }
  return out;
}

Rat dual_gauge_exact(const BodySpec& spec, const DualPairing& pairing,
                     const std::vector<Rat>& q) {
  if (!spec.is_rational())
    throw ConfigError("exact dual gauge needs rational points");
  std::vector<Rat> u = q;
  if (pairing.kind == DualPairing::Kind::InvariantForm) {
    if (!pairing.gram) throw ConfigError("missing Gram matrix");
    u = pairing.gram->apply(q);
  }
  return support_function(spec.slab_system_exact(), u);
}

Rat cbar_gauge_exact(const BodySpec& cbar_spec, const std::vector<Rat>& q) {
  if (cbar_spec.which != BodyKind::Cbar)
    throw ConfigError("cbar gauge expects a Cbar spec");
  if (!cbar_spec.is_rational())
    throw ConfigError("exact Cbar gauge needs rational points");
  Rat sup(0);
  for (const Rat& c : q) sup = rat_max(sup, rat_abs(c));
  Rat gauge = sup / cbar_spec.Y;
  RatPoly poly{std::vector<Rat>(q.begin(), q.end())};
  for (const auto& pt : cbar_spec.points)
    gauge = rat_max(gauge, rat_abs(poly.eval(*pt.exact)) * cbar_spec.X);
  return gauge;
}

Rat PlaceScaling::content() const {
  Rat c = rat_abs(real_factor);
  for (const auto& [p, e] : prime_exponents) c *= rat_pow(Rat(p), -e);
  return c;
}

RescaleOutcome rescale_body(const BodySpec& spec, const PlaceScaling& rho,
                            MinimaMethod method, mpfr_prec_t prec) {
  if (rho.real_factor == 0) throw ConfigError("rescale: zero real factor");
  RescaleOutcome out;
  Rat r = rat_abs(rho.real_factor);
  out.rescaled = spec;
  if (spec.which == BodyKind::Cbar) {
    // rho Cbar(X, Y) = Cbar(X / r, r Y)
    out.rescaled.X = spec.X / r;
    out.rescaled.Y = spec.Y * r;
  } else {
    // rho C(X, Y) = C(r X, Y / r)
    out.rescaled.X = spec.X * r;
    out.rescaled.Y = spec.Y / r;
  }
  if (out.rescaled.X < 1 || out.rescaled.Y < 1)
    throw ConfigError("rescale: folded parameters leave the X, Y >= 1 domain");
  // finite-place factors shrink the lattice to (prod p^e) Z^{n+1}
  Rat lattice_scale(1);
  for (const auto& [p, e] : rho.prime_exponents)
    lattice_scale *= rat_pow(Rat(p), e);
  MinimaReport base = successive_minima(spec, method, prec);
  MinimaReport scaled = successive_minima(out.rescaled, method, prec);
  Rat content = rho.content();
  for (int i = 0; i < spec.dim(); ++i) {
    if (base.lambda[i].lo <= 0)
      throw PrecisionError("rescale: base minimum bracket reaches zero");
    RatBracket ratio{content * lattice_scale * scaled.lambda[i].lo /
                         base.lambda[i].hi,
                     content * lattice_scale * scaled.lambda[i].hi /
                         base.lambda[i].lo};
    out.ratio.push_back(ratio);
  }
  return out;
}

ConstructedMember construct_member(const BodySpec& spec,
                                   const MinimaReport& report,
                                   const LocalTargets& targets,
                                   mpfr_prec_t prec) {
  spec.validate();
  const int d = spec.dim();
  if (static_cast<int>(report.witnesses.size()) != d)
    throw ConfigError("construct_member needs n+1 witnesses");
  IntMat basis(d, d);  // columns are witnesses
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) basis.at(k, j) = report.witnesses[j][k];
  Int det = determinant(basis);
  if (det == 0) throw ConfigError("construct_member: dependent witnesses");

  if (!targets.real_target && targets.primes.empty()) {
    ConstructedMember m;
    m.poly = IntPoly(report.witnesses[0]);
    m.budget_required = Rat(0);
    m.budget_given = targets.real_scale;
    return m;
  }

  // budget check (strong-approximation feasibility): rounding to congruence
  // classes moves each coordinate by at most M/2, and each witness stays in
  // lambda_{n+1} C, so the real defect is at most (n+1) * (M/2) * lambda.
  Int modulus(1);
  for (const auto& pt : targets.primes) {
    if (pt.p < 2 || !is_prime(pt.p)) throw ConfigError("bad prime target");
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), pt.p.get_mpz_t(), pt.k);
    modulus *= pk;
    if (mpz_divisible_p(det.get_mpz_t(), pt.p.get_mpz_t()))
      throw InfeasibleError(
          "construct_member: witness determinant shares a factor with p = " +
          pt.p.get_str() + "; choose another prime");
  }
  Rat lambda_top = report.lambda.back().hi;
  Rat required = Rat(d) * Rat(modulus, 2) * lambda_top;
  if (targets.real_scale < required)
    throw InfeasibleError(
        "construct_member: scale budget violated: real_scale = " +
        rat_to_string(targets.real_scale) + " < (n+1) * M/2 * lambda_{n+1} = " +
        rat_to_string(required));

  // congruence classes t (mod modulus) with basis * t == target
  std::vector<Int> t(d, Int(0));
  if (!targets.primes.empty()) {
    std::vector<Int> residues;  // combined target per coordinate via CRT
    std::vector<Int> target_combined(d, Int(0));
    Int acc_mod(1);
    for (const auto& pt : targets.primes) {
      Int pk;
      mpz_pow_ui(pk.get_mpz_t(), pt.p.get_mpz_t(), pt.k);
      std::vector<Int> rhs(d, Int(0));
      for (int k = 0; k < d && k <= pt.target.degree(); ++k)
        rhs[k] = pt.target.coeff(k);
      auto sol = solve_mod_prime_power(basis, rhs, pt.p, pt.k);
      if (!sol)
        throw InfeasibleError("construct_member: congruence system unsolvable mod " +
                              pt.p.get_str() + "^" + std::to_string(pt.k));
      // CRT-combine into t
      for (int i = 0; i < d; ++i) {
        if (acc_mod == 1) {
          t[i] = (*sol)[i];
        } else {
          Int g, u, v;
          mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(),
                     acc_mod.get_mpz_t(), pk.get_mpz_t());
          // x == t[i] mod acc_mod, x == sol[i] mod pk
          Int diff = (*sol)[i] - t[i];
          Int lift = (diff * u) % pk;
          t[i] = t[i] + acc_mod * lift;
        }
      }
      acc_mod *= pk;
      for (int i = 0; i < d; ++i) {
        t[i] = t[i] % acc_mod;
        if (t[i] < 0) t[i] += acc_mod;
      }
    }
  }

  // real coordinates theta with basis * theta = real_target
  std::vector<Rat> theta_mid(d, Rat(0));
  if (targets.real_target) {
    auto inv = inverse(basis.to_rat());
    std::vector<Rat> target_mid(d, Rat(0));
    for (int k = 0; k < d && k < static_cast<int>(targets.real_target->c.size());
         ++k)
      target_mid[k] = targets.real_target->c[k].mid_rat();
    theta_mid = inv->apply(target_mid);
  }

  std::vector<Int> a(d);
  for (int i = 0; i < d; ++i) {
    if (modulus == 1) {
      a[i] = round_rat(theta_mid[i]);
    } else {
      Rat shift = (theta_mid[i] - Rat(t[i])) / Rat(modulus);
      a[i] = t[i] + modulus * round_rat(shift);
    }
  }
  std::vector<Int> coeffs(d, Int(0));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) coeffs[k] += a[i] * report.witnesses[i][k];
  ConstructedMember m;
  m.poly = IntPoly(std::move(coeffs));
  m.budget_required = required;
  m.budget_given = targets.real_scale;

  // verify congruences exactly
  for (const auto& pt : targets.primes) {
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), pt.p.get_mpz_t(), pt.k);
    for (int k = 0; k < d; ++k) {
      Int diff = m.poly.coeff(k) - pt.target.coeff(k);
      if (diff % pk != 0)
        throw InfeasibleError("construct_member: congruence verification failed");
    }
  }

  // verify the real defect: every body functional of P - P_real stays
  // within real_scale times its bound
  if (targets.real_target) {
    SlabSystemIv s = spec.slab_system(prec);
    IvalPoly diff = IvalPoly::from_int(m.poly, prec) - *targets.real_target;
    Ival sup = diff.sup_norm();
    Rat box = (spec.which == BodyKind::Cbar) ? spec.Y : spec.X;
    if (!sup.certainly_le_rat(targets.real_scale * box))
      throw InfeasibleError(
          "construct_member: real sup-norm defect exceeds the scale budget");
    for (size_t j = 0; j < s.slab_c.size(); ++j) {
      Ival v = Ival::exact_zero(prec);
      for (int k = 0; k < d && k < static_cast<int>(diff.c.size()); ++k)
        v = v + s.slab_c[j][k] * diff.c[k];
      if (!v.abs().certainly_le_rat(targets.real_scale * s.slab_b[j]))
        throw InfeasibleError(
            "construct_member: real defect exceeds the scale budget on a "
            "point functional");
    }
  }
  return m;
}

}  // namespace adw
