#include "adw/roots.hpp"

#include <algorithm>

namespace adw {

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
  if (p.is_zero()) throw ConfigError("sturm chain of the zero polynomial");
  IntPoly sf_gcd = poly_gcd(p, p.derivative());
  RatPoly f = p;
  if (sf_gcd.degree() >= 1) f = *divide_exact(p, sf_gcd.to_rat());
  std::vector<RatPoly> chain{f, f.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() >= 0) {
    const RatPoly& a = chain[chain.size() - 2];
    const RatPoly& b = chain.back();
    if (b.is_zero()) break;
    auto [q, r] = divmod(a, b);
    if (r.is_zero()) break;
    chain.push_back(r * Rat(-1));
  }
  return chain;
}

namespace {
int sign_variations(const std::vector<RatPoly>& chain, const Rat& x) {
  int variations = 0, last = 0;
  for (const RatPoly& f : chain) {
    int s = sgn(f.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}
}  // namespace

int count_roots_closed(const std::vector<RatPoly>& chain, const RatPoly& p,
                       const Rat& a, const Rat& b) {
  if (a > b) throw ConfigError("count_roots: empty interval");
  // Sturm counts roots in (a, b]; add the endpoint a explicitly.
  int count = sign_variations(chain, a) - sign_variations(chain, b);
  if (p.eval(a) == 0) ++count;
  return count;
}

int count_roots_closed(const RatPoly& p, const Rat& a, const Rat& b) {
  return count_roots_closed(sturm_chain(p), p, a, b);
}

Rat cauchy_root_bound(const RatPoly& p) {
  if (p.is_zero() || p.degree() < 1) return Rat(1);
  Rat lead = rat_abs(p.c.back());
  Rat m(0);
  for (int k = 0; k < p.degree(); ++k) m = rat_max(m, rat_abs(p.c[k]));
  return Rat(1) + m / lead;
}

std::vector<RootBracket> isolate_real_roots(const RatPoly& p) {
  if (p.is_zero()) throw ConfigError("root isolation of the zero polynomial");
  if (p.degree() < 1) return {};
  std::vector<RatPoly> chain = sturm_chain(p);
  Rat bound = cauchy_root_bound(p);
  std::vector<RootBracket> out;
  // work stack of (a, b, count in closed [a,b] with no root at endpoints)
  struct Seg {
    Rat a, b;
    int count;
  };
  // nudge the outer bounds so no root sits on them
  Rat a = -bound - 1, b = bound + 1;
  std::vector<Seg> stack{{a, b, count_roots_closed(chain, p, a, b)}};
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 0) continue;
    if (s.count == 1) {
      out.push_back({s.a, s.b, false});
      continue;
    }
    Rat mid = (s.a + s.b) / 2;
    if (p.eval(mid) == 0) {
      out.push_back({mid, mid, true});
      // exclude the midpoint root from both halves by a tiny margin that
      // still contains every other root of the half
      Rat quarter = (s.b - s.a) / 4;
      Rat eps = quarter;
      for (;;) {
        eps = eps / 2;
        if (p.eval(mid - eps) != 0 && p.eval(mid + eps) != 0) {
          int left = count_roots_closed(chain, p, s.a, mid - eps);
          int right = count_roots_closed(chain, p, mid + eps, s.b);
          if (left + right == s.count - 1) {
            stack.push_back({s.a, mid - eps, left});
            stack.push_back({mid + eps, s.b, right});
            break;
          }
        }
      }
    } else {
      int left = count_roots_closed(chain, p, s.a, mid);
      stack.push_back({s.a, mid, left});
      stack.push_back({mid, s.b, s.count - left});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RootBracket& x, const RootBracket& y) { return x.lo < y.lo; });
  // make brackets pairwise disjoint (adjacent ones may share a non-root
  // endpoint from the bisection)
  for (size_t i = 0; i + 1 < out.size(); ++i) {
    while (!out[i].exact && !out[i + 1].exact && out[i].hi >= out[i + 1].lo) {
      RootBracket& b = out[i];
      Rat mid = (b.lo + b.hi) / 2;
      if (p.eval(mid) == 0) {
        out[i] = {mid, mid, true};
        break;
      }
      if (count_roots_closed(chain, p, b.lo, mid) == 1)
        b.hi = mid;
      else
        b.lo = mid;
    }
    while (out[i].exact && !out[i + 1].exact && out[i + 1].lo <= out[i].hi) {
      RootBracket& b = out[i + 1];
      Rat mid = (b.lo + b.hi) / 2;
      if (p.eval(mid) == 0) break;  // cannot happen: roots are distinct here
      if (count_roots_closed(chain, p, mid, b.hi) == 1)
        b.lo = mid;
      else
        b.hi = mid;
    }
  }
  return out;
}

RootBracket refine_bracket(const RatPoly& p, const std::vector<RatPoly>& chain,
                           RootBracket b, const Rat& width) {
  if (b.exact) return b;
  while (b.hi - b.lo > width) {
    Rat mid = (b.lo + b.hi) / 2;
    if (p.eval(mid) == 0) return {mid, mid, true};
    if (count_roots_closed(chain, p, b.lo, mid) == 1)
      b.hi = mid;
    else
      b.lo = mid;
  }
  return b;
}

Ival real_root_enclosure(const IntPoly& p, int index, mpfr_prec_t prec) {
  RatPoly rp = p.to_rat();
  auto roots = isolate_real_roots(rp);
  if (index < 0 || index >= static_cast<int>(roots.size()))
    throw ConfigError("real root index out of range");
  std::vector<RatPoly> chain = sturm_chain(rp);
  Rat width = rat_pow(Rat(1, 2), static_cast<long>(prec));
  Rat scale = rat_max(Rat(1), rat_abs(roots[index].lo));
  RootBracket b = refine_bracket(rp, chain, roots[index], width * scale);
  return Ival::from_endpoints(b.lo, b.hi, prec + 8);
}

}  // namespace adw
