#include "adw/approx.hpp"

#include <algorithm>

#include "adw/places.hpp"
#include "adw/roots.hpp"

namespace adw {

namespace {

[[noreturn]] void stage_fail(const std::string& stage, const std::exception& e) {
  std::string msg = "stage:" + stage + ": " + e.what();
  if (dynamic_cast<const InfeasibleError*>(&e)) throw InfeasibleError(msg);
  if (dynamic_cast<const PrecisionError*>(&e)) throw PrecisionError(msg);
  throw ConfigError(msg);
}

}  // namespace

ExponentLedger exponent_ledger(int n, int t, const std::vector<PointSpec>& points,
                               const std::vector<int>& mults, int D,
                               ExponentLedger::Case tag) {
  if (n < 1 || t < 1 || D < 1) throw ConfigError("ledger: n, t, D >= 1");
  if (points.size() != mults.size())
    throw ConfigError("ledger: points/multiplicities mismatch");
  ExponentLedger led;
  led.n = n;
  led.t = t;
  led.D = D;
  led.d = 1;
  led.tag = tag;
  led.s = static_cast<int>(points.size());
  led.m = 0;
  int sum = 0;
  for (int mi : mults) {
    led.m = std::max(led.m, mi);
    sum += mi;
  }
  if (sum != t) throw ConfigError("ledger: multiplicities must sum to t");
  if (tag == ExponentLedger::Case::Progression) {
    led.nu = 4 * t;
    led.target_exponent = Rat(n) / Rat(4 * led.d * t);
  } else {
    led.nu = 4 * D * led.s * t;
    led.target_exponent = Rat(n) / Rat(4 * led.d * D * led.m * led.s * t);
  }
  if (n < led.nu)
    throw ConfigError("ledger: requires n >= nu = " + std::to_string(led.nu));
  led.y_exponent = Rat(n + 2 - led.nu) / Rat(led.nu);

  // degree hypothesis [Q(xi_i):Q] >= n/(D t): checkable only for algebraic
  // points with a known minimal polynomial
  Rat threshold = Rat(n) / Rat(D * t);
  led.degree_hypothesis_checked = true;
  for (const PointSpec& p : points) {
    if (p.kind() == PointSpec::Kind::Named) {
      led.degree_hypothesis_checked = false;
      led.degree_hypothesis_note =
          "assumed for named constant " + p.str() + " (not checkable)";
    } else {
      int deg = p.kind() == PointSpec::Kind::Rational ? 1
                                                      : p.minimal_poly().degree();
      if (Rat(deg) < threshold) {
        led.degree_hypothesis_checked = false;
        led.degree_hypothesis_note = "violated at " + p.str() + ": degree " +
                                     std::to_string(deg) + " < n/(Dt)";
      }
    }
  }
  return led;
}

IvalPoly engineered_target(const std::vector<Ival>& etas,
                           const std::vector<int>& mults, const Ival& a,
                           const std::vector<Ival>& z) {
  if (etas.size() != mults.size() || etas.size() != z.size())
    throw ConfigError("engineered target: length mismatch");
  mpfr_prec_t prec = a.prec();
  IvalPoly out;
  out.c = {a};
  for (size_t i = 0; i < etas.size(); ++i) {
    if (!z[i].certainly_nonzero())
      throw ConfigError("engineered target: z_i must be nonzero");
    for (int j = 1; j <= mults[i]; ++j) {
      IvalPoly lin;
      Ival root = etas[i] + z[i].mul_rat(Rat(j));
      lin.c = {-root, Ival::from_long(1, prec)};
      out = out * lin;
    }
  }
  return out;
}

EisensteinResult irreducible_from_body(const BodySpec& spec,
                                       const MinimaReport& report, const Int& p,
                                       const std::optional<IvalPoly>& real_target,
                                       const Rat& real_scale, mpfr_prec_t prec) {
  if (!is_prime(p)) throw ConfigError("eisenstein: p must be prime");
  LocalTargets targets;
  targets.real_target = real_target;
  targets.real_scale = real_scale;
  LocalTargets::PrimeTarget pt;
  pt.p = p;
  pt.k = 2;
  std::vector<Int> tgt(spec.dim(), Int(0));
  tgt[0] = p;
  tgt[spec.n] = 1;
  pt.target = IntPoly(std::move(tgt));
  targets.primes.push_back(pt);
  ConstructedMember m = construct_member(spec, report, targets, prec);

  const IntPoly& poly = m.poly;
  Int p2 = p * p;
  if (poly.degree() != spec.n)
    throw InfeasibleError("eisenstein: constructed polynomial has degree " +
                          std::to_string(poly.degree()));
  if (poly.coeff(0) % p != 0 || poly.coeff(0) % p2 == 0)
    throw InfeasibleError("eisenstein: constant term certificate failed");
  for (int k = 1; k < spec.n; ++k)
    if (poly.coeff(k) % p != 0)
      throw InfeasibleError("eisenstein: middle coefficient not divisible");
  if (poly.leading() % p == 0)
    throw InfeasibleError("eisenstein: leading coefficient divisible by p");

  EisensteinResult res;
  res.poly = poly;
  res.prime = p;
  Rat denom = report.lambda.back().hi * spec.X;
  res.sup_norm_over_lambda_x =
      denom > 0 ? Rat(Rat(poly.sup_norm()) / denom) : Rat(0);
  return res;
}

std::vector<Ival> cluster_roots(const IntPoly& p, const PointHandle& center,
                                int want, const Ival& radius,
                                mpfr_prec_t prec, bool require_nonvanishing) {
  if (p.is_zero()) throw ConfigError("cluster_roots: zero polynomial");
  RatPoly rp = p.to_rat();
  std::vector<RatPoly> chain = sturm_chain(rp);

  // certify P(center) != 0 with (capped) precision escalation
  if (require_nonvanishing) {
    mpfr_prec_t work = prec;
    bool ok = false;
    for (int rounds = 0; rounds < 4 && !ok; ++rounds) {
      Ival v = p.eval(center.enclose(work));
      if (v.certainly_nonzero()) ok = true;
      work *= 2;
    }
    if (!ok) throw PrecisionError("cluster_roots: cannot certify P(eta) != 0");
  }

  // rational window certainly inside [center - radius, center + radius]
  Ival c = center.enclose(prec);
  Rat lo_edge = c.hi_rat() - radius.lo_rat();
  Rat hi_edge = c.lo_rat() + radius.lo_rat();
  if (lo_edge >= hi_edge)
    throw PrecisionError("cluster_roots: window collapsed; radius too tight");

  int count = count_roots_closed(chain, rp, lo_edge, hi_edge);
  if (count < want)
    throw InfeasibleError("cluster_roots: found " + std::to_string(count) +
                          " roots in the window, wanted " +
                          std::to_string(want));

  // isolate within the window: global isolation filtered and refined
  auto roots = isolate_real_roots(rp);
  std::vector<Ival> out;
  Rat min_width = (hi_edge - lo_edge) / Rat(1000000);
  for (auto& b : roots) {
    RootBracket rb = b.exact ? b : refine_bracket(rp, chain, b, min_width);
    if (rb.hi < lo_edge || rb.lo > hi_edge) continue;
    if (rb.lo >= lo_edge && rb.hi <= hi_edge) {
      out.push_back(Ival::from_endpoints(rb.lo, rb.hi, prec));
      continue;
    }
    if (rb.exact) continue;  // exact root outside or on the edge
    // straddles the window edge: refine further to decide
    for (int rounds = 0; rounds < 64; ++rounds) {
      rb = refine_bracket(rp, chain, rb, (rb.hi - rb.lo) / 4);
      if (rb.hi < lo_edge || rb.lo > hi_edge) break;
      if (rb.lo >= lo_edge && rb.hi <= hi_edge) {
        out.push_back(Ival::from_endpoints(rb.lo, rb.hi, prec));
        break;
      }
      if (rb.exact) break;
    }
  }
  if (static_cast<int>(out.size()) < want)
    throw PrecisionError("cluster_roots: isolation inside the window failed");
  return out;
}

ApproxResult approximate_conjugates(const ExponentLedger& ledger,
                                    const std::vector<PointSpec>& points,
                                    const std::vector<int>& mults, const Rat& X,
                                    const PipelineOptions& opt) {
  if (X < 1) throw ConfigError("pipeline: X >= 1 required");
  const int n = ledger.n;
  const mpfr_prec_t prec = opt.prec;

  // --- stage: body setup (Y from the ledger rule, rounded down dyadically)
  BodySpec spec;
  try {
    Ival y_iv = rat_pow_interval(X, ledger.y_exponent, 64);
    Rat y = rat_max(Rat(1), y_iv.lo_rat());
    spec.n = n;
    spec.which = BodyKind::C;
    spec.X = X;
    spec.Y = y;
    for (const auto& p : points) spec.points.push_back(PointHandle::from_spec(p));
    spec.mults = mults;
    spec.validate();
  } catch (const std::exception& e) {
    stage_fail("body-setup", e);
  }

  // --- stage: minima
  MinimaReport report;
  try {
    report = successive_minima(spec, opt.method, prec);
  } catch (const std::exception& e) {
    stage_fail("minima", e);
  }
  Rat lambda_top = report.lambda.back().hi;

  // --- stage: engineered target + construction + clustering, adaptive
  std::vector<Ival> etas;
  for (const auto& p : points) etas.push_back(p.enclosure(prec));

  // per-point z cap: (XY)^{-1/m_i}
  std::vector<Ival> z_cap;
  for (size_t i = 0; i < points.size(); ++i) {
    Rat xy = spec.X * spec.Y;
    z_cap.push_back(rat_pow_interval(xy, Rat(-1, mults[i]), prec));
  }

  // disk disjointness pre-check at the largest radius (m_i + 1) |z_cap|
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j) {
      Ival ri = z_cap[i].mul_rat(Rat(mults[i] + 1));
      Ival rj = z_cap[j].mul_rat(Rat(mults[j] + 1));
      Ival gap = (etas[i] - etas[j]).abs();
      if (!(ri + rj).certainly_lt(gap))
        throw InfeasibleError("stage:clustering: disks around " +
                              points[i].str() + " and " + points[j].str() +
                              " may overlap; increase X");
    }

  ApproxResult res;
  res.X = spec.X;
  res.Y = spec.Y;
  res.lambda_top = lambda_top;

  Int prime = opt.prime;
  Rat a_factor = opt.a_factor;
  Rat z_shrink = opt.z_shrink;
  std::string last_error = "no attempt";
  bool success = false;
  for (int round = 0; round < opt.max_rounds && !success; ++round) {
    try {
      Rat a_mag = a_factor * rat_max(Rat(1), lambda_top * spec.X);
      Ival a = Ival::from_rat(a_mag, prec);
      std::vector<Ival> z;
      for (size_t i = 0; i < points.size(); ++i)
        z.push_back(Ival::from_rat(Rat(z_cap[i].lo_rat() / z_shrink), prec));
      IvalPoly target = engineered_target(etas, mults, a, z);
      Rat real_scale = Rat(spec.dim()) * Rat(prime * prime) * lambda_top;
      EisensteinResult eis;
      try {
        eis = irreducible_from_body(spec, report, prime, target, real_scale,
                                    prec);
      } catch (const InfeasibleError& e) {
        std::string msg = e.what();
        if (msg.find("witness determinant") != std::string::npos) {
          // congruence incompatible with this prime: move to the next one
          mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
          last_error = msg;
          continue;
        }
        throw;
      }
      std::vector<std::vector<Ival>> clusters;
      for (size_t i = 0; i < points.size(); ++i) {
        Ival radius = z[i].mul_rat(Rat(mults[i] + 1));
        clusters.push_back(
            cluster_roots(eis.poly, spec.points[i], mults[i], radius, prec));
      }
      res.P = eis.poly;
      res.eisenstein_prime = prime;
      res.clusters = clusters;
      success = true;
    } catch (const std::exception& e) {
      last_error = e.what();
      // grow a first (fixes the perturbation ratio), then shrink z
      if (round % 2 == 0)
        a_factor *= 4;
      else
        z_shrink *= 2;
    }
  }
  if (!success)
    throw InfeasibleError("stage:clustering: adaptive search exhausted: " +
                          last_error);

  // --- stage: conjugate matching and measurements
  try {
    res.height = res.P.primitive_part().sup_norm();
    std::vector<RatPoly> chain = sturm_chain(res.P.to_rat());
    RatPoly rp = res.P.to_rat();
    Ival min_exponent = Ival::from_long(0, prec);
    bool first = true;
    for (size_t i = 0; i < points.size(); ++i) {
      // ascending cluster roots fill the m_i slots of this point
      std::vector<Ival> roots = res.clusters[i];
      std::sort(roots.begin(), roots.end(), [](const Ival& a, const Ival& b) {
        return a.lo_rat() < b.lo_rat();
      });
      for (int slot = 0; slot < mults[i]; ++slot) {
        Ival alpha = roots[slot];
        // refine until the distance interval excludes zero
        Ival dist = (etas[i] - alpha).abs();
        mpfr_prec_t work = prec;
        for (int rounds = 0; rounds < 12 && !dist.certainly_gt_rat(Rat(0));
             ++rounds) {
          work *= 2;
          RootBracket rb{alpha.lo_rat(), alpha.hi_rat(), false};
          Rat width = (rb.hi - rb.lo) / 1024;
          if (width == 0) break;
          rb = refine_bracket(rp, chain, rb, width);
          alpha = Ival::from_endpoints(rb.lo, rb.hi, work);
          dist = (points[i].enclosure(work) - alpha).abs();
        }
        res.conjugates.push_back(alpha);
        res.distances.push_back(dist);
        if (dist.certainly_gt_rat(Rat(0)) && res.height > 1) {
          Ival expo = (Ival::from_long(1, prec) / dist).log() /
                      Ival::from_int(res.height, prec).log();
          min_exponent = first ? expo : min_exponent.min(expo);
          first = false;
        }
      }
    }
    res.measured_exponent = min_exponent;
  } catch (const std::exception& e) {
    stage_fail("measurement", e);
  }

  // --- stage: independent irreducibility oracle (n <= 12)
  if (n <= 12) {
    try {
      res.irreducibility_oracle_ran = true;
      res.irreducibility_oracle_passed = is_irreducible(res.P);
    } catch (const std::exception& e) {
      stage_fail("irreducibility-oracle", e);
    }
  }
  return res;
}

}  // namespace adw
