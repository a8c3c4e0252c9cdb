#include "adw/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace adw {

namespace {

// ---------- support function ----------

// Shared driver: enumerate candidate tight sets (j slab rows with signs,
// d - j coordinates pinned at +-box, the pinned signs following u), solve,
// filter by feasibility, and fold the objective.
template <typename Solver>
void enumerate_tight_sets(int dim, int slabs, const Solver& solve_candidate) {
  std::vector<int> subset;
  std::function<void(int)> rec = [&](int start) {
    // choose free coordinates for this subset
    int j = static_cast<int>(subset.size());
    if (j <= dim) {
      std::vector<int> free_idx;
      std::function<void(int, int)> choose = [&](int begin, int need) {
        if (need == 0) {
          for (int mask = 0; mask < (1 << j); ++mask)
            solve_candidate(subset, free_idx, mask);
          return;
        }
        for (int i = begin; i < dim; ++i) {
          free_idx.push_back(i);
          choose(i + 1, need - 1);
          free_idx.pop_back();
        }
      };
      choose(0, j);
    }
    if (static_cast<int>(subset.size()) == std::min(slabs, dim)) return;
    for (int i = start; i < slabs; ++i) {
      subset.push_back(i);
      rec(i + 1);
      subset.pop_back();
    }
  };
  rec(0);
}

}  // namespace

// ---------- vertex enumeration ----------

std::vector<std::vector<Rat>> polytope_vertices(const SlabSystem& s) {
  const int d = s.dim();
  const int m = static_cast<int>(s.slab_c.size());
  std::vector<std::vector<Rat>> out;
  enumerate_tight_sets(d, m, [&](const std::vector<int>& tight,
                                 const std::vector<int>& free_idx, int mask) {
    const int j = static_cast<int>(tight.size());
    std::vector<bool> is_free(d, false);
    for (int f : free_idx) is_free[f] = true;
    // pinned coordinates run over all sign patterns
    std::vector<int> pinned;
    for (int k = 0; k < d; ++k)
      if (!is_free[k]) pinned.push_back(k);
    for (int pin_mask = 0; pin_mask < (1 << pinned.size()); ++pin_mask) {
      RatMat msys(j, j);
      std::vector<Rat> rhs(j);
      std::vector<Rat> x(d, Rat(0));
      for (size_t t = 0; t < pinned.size(); ++t)
        x[pinned[t]] =
            (pin_mask & (1 << t)) ? -s.box[pinned[t]] : s.box[pinned[t]];
      for (int r = 0; r < j; ++r) {
        const auto& c = s.slab_c[tight[r]];
        Rat b = s.slab_b[tight[r]];
        if (mask & (1 << r)) b = -b;
        Rat acc = b;
        for (int k : pinned) acc -= c[k] * x[k];
        rhs[r] = acc;
        for (int fcol = 0; fcol < j; ++fcol) msys.at(r, fcol) = c[free_idx[fcol]];
      }
      std::optional<std::vector<Rat>> sol;
      if (j == 0)
        sol = std::vector<Rat>{};
      else
        sol = solve(msys, rhs);
      if (!sol) continue;
      bool ok = true;
      for (int fcol = 0; fcol < j; ++fcol) {
        x[free_idx[fcol]] = (*sol)[fcol];
        if (rat_abs((*sol)[fcol]) > s.box[free_idx[fcol]]) ok = false;
      }
      for (int r = 0; r < m && ok; ++r) {
        Rat v(0);
        for (int k = 0; k < d; ++k) v += s.slab_c[r][k] * x[k];
        if (rat_abs(v) > s.slab_b[r]) ok = false;
      }
      if (!ok) continue;
      bool dup = false;
      for (const auto& seen : out)
        if (seen == x) dup = true;
      if (!dup) out.push_back(x);
    }
  });
  return out;
}

std::vector<VertexEnclosure> polytope_vertices(const SlabSystemIv& s,
                                               mpfr_prec_t prec) {
  const int d = s.dim();
  const int m = static_cast<int>(s.slab_c.size());
  std::vector<VertexEnclosure> out;
  enumerate_tight_sets(d, m, [&](const std::vector<int>& tight,
                                 const std::vector<int>& free_idx, int mask) {
    const int j = static_cast<int>(tight.size());
    std::vector<bool> is_free(d, false);
    for (int f : free_idx) is_free[f] = true;
    std::vector<int> pinned;
    for (int k = 0; k < d; ++k)
      if (!is_free[k]) pinned.push_back(k);
    for (int pin_mask = 0; pin_mask < (1 << pinned.size()); ++pin_mask) {
      std::vector<Ival> x(d, Ival::exact_zero(prec));
      for (size_t t = 0; t < pinned.size(); ++t) {
        Rat pin = (pin_mask & (1 << t)) ? -s.box[pinned[t]] : s.box[pinned[t]];
        x[pinned[t]] = Ival::from_rat(pin, prec);
      }
      std::vector<std::vector<Ival>> msys(j, std::vector<Ival>(j, Ival::exact_zero(prec)));
      std::vector<Ival> rhs(j, Ival::exact_zero(prec));
      for (int r = 0; r < j; ++r) {
        const auto& c = s.slab_c[tight[r]];
        Rat b = s.slab_b[tight[r]];
        if (mask & (1 << r)) b = -b;
        Ival acc = Ival::from_rat(b, prec);
        for (int k : pinned) acc = acc - c[k] * x[k];
        rhs[r] = acc;
        for (int fcol = 0; fcol < j; ++fcol) msys[r][fcol] = c[free_idx[fcol]];
      }
      bool singular = false;
      for (int col = 0; col < j && !singular; ++col) {
        int piv = -1;
        for (int r = col; r < j; ++r)
          if (msys[r][col].certainly_nonzero()) {
            piv = r;
            break;
          }
        if (piv < 0) {
          singular = true;
          break;
        }
        std::swap(msys[piv], msys[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = col + 1; r < j; ++r) {
          Ival f = msys[r][col] / msys[col][col];
          for (int k = col; k < j; ++k) msys[r][k] = msys[r][k] - f * msys[col][k];
          rhs[r] = rhs[r] - f * rhs[col];
        }
      }
      if (singular) continue;
      std::vector<Ival> sol(j, Ival::exact_zero(prec));
      for (int r = j - 1; r >= 0; --r) {
        Ival acc = rhs[r];
        for (int k = r + 1; k < j; ++k) acc = acc - msys[r][k] * sol[k];
        sol[r] = acc / msys[r][r];
      }
      bool feasible = true, possible = true;
      for (int fcol = 0; fcol < j && possible; ++fcol) {
        x[free_idx[fcol]] = sol[fcol];
        if (!sol[fcol].abs().certainly_le_rat(s.box[free_idx[fcol]]))
          feasible = false;
        if (sol[fcol].abs().certainly_gt_rat(s.box[free_idx[fcol]]))
          possible = false;
      }
      for (int r = 0; r < m && possible; ++r) {
        bool is_tight = false;
        for (int tr : tight)
          if (tr == r) is_tight = true;
        if (is_tight) continue;
        Ival v = Ival::exact_zero(prec);
        for (int k = 0; k < d; ++k) v = v + s.slab_c[r][k] * x[k];
        if (!v.abs().certainly_le_rat(s.slab_b[r])) feasible = false;
        if (v.abs().certainly_gt_rat(s.slab_b[r])) possible = false;
      }
      if (!possible) continue;
      out.push_back({x, feasible});
    }
  });
  return out;
}

Rat support_function(const SlabSystem& s, const std::vector<Rat>& u) {
  if (static_cast<int>(u.size()) != s.dim())
    throw ConfigError("support function: dimension mismatch");
  std::optional<Rat> best;
  for (const auto& v : polytope_vertices(s)) {
    Rat val(0);
    for (int k = 0; k < s.dim(); ++k) val += u[k] * v[k];
    if (!best || val > *best) best = val;
  }
  if (!best) throw ConfigError("support function: empty polytope");
  return *best;
}

Ival support_function(const SlabSystemIv& s, const std::vector<Rat>& u,
                      mpfr_prec_t prec) {
  if (static_cast<int>(u.size()) != s.dim())
    throw ConfigError("support function: dimension mismatch");
  // lower end from certainly feasible candidates; upper end from every
  // candidate that is not certainly infeasible (covers all true vertices)
  std::optional<Ival> best_feasible, best_possible;
  for (const auto& cand : polytope_vertices(s, prec)) {
    Ival val = Ival::exact_zero(prec);
    for (int k = 0; k < s.dim(); ++k) val = val + cand.x[k].mul_rat(u[k]);
    best_possible = best_possible ? best_possible->max(val) : val;
    if (cand.certain)
      best_feasible = best_feasible ? best_feasible->max(val) : val;
  }
  if (!best_possible || !best_feasible)
    throw PrecisionError("support function: no certified vertex");
  return Ival::from_endpoints(best_feasible->lo_rat(), best_possible->hi_rat(),
                              prec);
}

std::vector<Rat> coordinate_inradii(const SlabSystem& s) {
  std::vector<Rat> r(s.dim());
  for (int k = 0; k < s.dim(); ++k) {
    Rat rk = s.box[k];
    for (size_t j = 0; j < s.slab_c.size(); ++j) {
      if (s.slab_c[j][k] == 0) continue;
      rk = rat_min(rk, s.slab_b[j] / rat_abs(s.slab_c[j][k]));
    }
    r[k] = rk;
  }
  return r;
}

std::vector<Ival> coordinate_inradii(const SlabSystemIv& s, mpfr_prec_t prec) {
  std::vector<Ival> r;
  for (int k = 0; k < s.dim(); ++k) {
    Ival rk = Ival::from_rat(s.box[k], prec);
    for (size_t j = 0; j < s.slab_c.size(); ++j) {
      const Ival& c = s.slab_c[j][k];
      if (!c.certainly_nonzero()) continue;
      rk = rk.min(Ival::from_rat(s.slab_b[j], prec) / c.abs());
    }
    r.push_back(rk);
  }
  return r;
}

// ---------- exact volume (Lasserre recursion) ----------

namespace {

struct Row {
  std::vector<Rat> a;  // one-sided: a . x <= b
  Rat b;
};

// General box [lo_k, hi_k] per coordinate; the recursion folds axis-parallel
// rows into the box so facet enumeration never double counts a hyperplane.
struct VolBox {
  std::vector<Rat> lo, hi;
  int dim() const { return static_cast<int>(lo.size()); }
};

// Canonicalize rows, fold axis-parallel ones into the box, deduplicate.
// Returns false when the system is certainly empty.
bool tidy_rows(std::vector<Row>& rows, VolBox& box) {
  std::map<std::vector<Rat>, Rat> best;
  for (Row& r : rows) {
    int nonzero = 0, last = -1;
    for (size_t i = 0; i < r.a.size(); ++i)
      if (r.a[i] != 0) {
        ++nonzero;
        last = static_cast<int>(i);
      }
    if (nonzero == 0) {
      if (r.b < 0) return false;
      continue;
    }
    if (nonzero == 1) {
      Rat t = r.b / r.a[last];
      if (r.a[last] > 0)
        box.hi[last] = rat_min(box.hi[last], t);
      else
        box.lo[last] = rat_max(box.lo[last], t);
      continue;
    }
    Rat scale(0);
    for (const Rat& v : r.a)
      if (v != 0) {
        scale = rat_abs(v);
        break;
      }
    std::vector<Rat> key(r.a.size());
    for (size_t i = 0; i < r.a.size(); ++i) key[i] = r.a[i] / scale;
    Rat bound = r.b / scale;
    auto it = best.find(key);
    if (it == best.end())
      best.emplace(std::move(key), bound);
    else
      it->second = rat_min(it->second, bound);
  }
  rows.clear();
  for (auto& [a, b] : best) rows.push_back({a, b});
  for (int k = 0; k < box.dim(); ++k)
    if (box.lo[k] > box.hi[k]) return false;
  return true;
}

Rat one_sided_volume(std::vector<Row> rows, VolBox box) {
  const int d = box.dim();
  if (!tidy_rows(rows, box)) return Rat(0);
  if (d == 0) return Rat(1);
  if (rows.empty()) {
    Rat v(1);
    for (int k = 0; k < d; ++k) v *= box.hi[k] - box.lo[k];
    return v;
  }

  // substitute coordinate k pinned by the hyperplane a.x = b
  auto face_system = [&](const std::vector<Rat>& a, const Rat& b, int k,
                         const std::vector<Row>& others, bool& dead) {
    std::vector<Row> next;
    dead = false;
    auto subst = [&](const std::vector<Rat>& c, const Rat& cb) {
      Rat factor = c[k] / a[k];
      Row out;
      out.b = cb - factor * b;
      out.a.reserve(d - 1);
      for (int j = 0; j < d; ++j) {
        if (j == k) continue;
        out.a.push_back(c[j] - factor * a[j]);
      }
      bool zero = true;
      for (const Rat& v : out.a)
        if (v != 0) zero = false;
      if (zero) {
        if (out.b < 0) dead = true;
        return;
      }
      next.push_back(std::move(out));
    };
    for (const Row& r : others) {
      subst(r.a, r.b);
      if (dead) return next;
    }
    // box rows of the eliminated coordinate
    std::vector<Rat> ek(d, Rat(0));
    ek[k] = 1;
    subst(ek, box.hi[k]);
    if (dead) return next;
    ek[k] = -1;
    subst(ek, -box.lo[k]);
    return next;
  };

  auto shrink_box = [&](int k) {
    VolBox nb;
    for (int j = 0; j < d; ++j) {
      if (j == k) continue;
      nb.lo.push_back(box.lo[j]);
      nb.hi.push_back(box.hi[j]);
    }
    return nb;
  };

  Rat total(0);
  for (size_t i = 0; i < rows.size(); ++i) {
    int k = -1;
    Rat mag(0);
    for (int j = 0; j < d; ++j)
      if (rat_abs(rows[i].a[j]) > mag) {
        mag = rat_abs(rows[i].a[j]);
        k = j;
      }
    std::vector<Row> rest;
    for (size_t j = 0; j < rows.size(); ++j)
      if (j != i) rest.push_back(rows[j]);
    bool dead = false;
    std::vector<Row> sub = face_system(rows[i].a, rows[i].b, k, rest, dead);
    if (dead) continue;
    Rat face = one_sided_volume(std::move(sub), shrink_box(k));
    if (face == 0) continue;
    total += rows[i].b * face / mag;
  }
  for (int k = 0; k < d; ++k) {
    std::vector<Rat> ek(d, Rat(0));
    // x_k <= hi_k facet, then -x_k <= -lo_k facet
    ek[k] = 1;
    bool dead = false;
    std::vector<Row> sub = face_system(ek, box.hi[k], k, rows, dead);
    if (!dead) {
      Rat face = one_sided_volume(std::move(sub), shrink_box(k));
      if (face != 0) total += box.hi[k] * face;
    }
    ek[k] = -1;
    dead = false;
    sub = face_system(ek, -box.lo[k], k, rows, dead);
    if (!dead) {
      Rat face = one_sided_volume(std::move(sub), shrink_box(k));
      if (face != 0) total += -box.lo[k] * face;
    }
  }
  return total / Rat(d);
}

}  // namespace

Rat polytope_volume(const SlabSystem& s) {
  std::vector<Row> rows;
  for (size_t j = 0; j < s.slab_c.size(); ++j) {
    rows.push_back({s.slab_c[j], s.slab_b[j]});
    std::vector<Rat> neg(s.slab_c[j].size());
    for (size_t k = 0; k < neg.size(); ++k) neg[k] = -s.slab_c[j][k];
    rows.push_back({std::move(neg), s.slab_b[j]});
  }
  VolBox box;
  box.lo.resize(s.box.size());
  box.hi.resize(s.box.size());
  for (size_t k = 0; k < s.box.size(); ++k) {
    box.lo[k] = -s.box[k];
    box.hi[k] = s.box[k];
  }
  return one_sided_volume(std::move(rows), std::move(box));
}

}  // namespace adw
