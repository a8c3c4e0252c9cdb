#include "adw/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace adw {

Ival::Ival(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Ival::Ival(const Ival& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Ival::Ival(Ival&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Ival& Ival::operator=(const Ival& o) {
  if (this == &o) return *this;
  mpfr_set_prec(lo_, o.prec_);
  mpfr_set_prec(hi_, o.prec_);
  prec_ = o.prec_;
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Ival& Ival::operator=(Ival&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  std::swap(prec_, o.prec_);
  return *this;
}

Ival::~Ival() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Ival Ival::from_rat(const Rat& q, mpfr_prec_t prec) {
  Ival r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Ival Ival::from_int(const Int& z, mpfr_prec_t prec) {
  Ival r(prec);
  mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Ival Ival::from_long(long v, mpfr_prec_t prec) {
  Ival r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Ival Ival::from_endpoints(const Rat& lo, const Rat& hi, mpfr_prec_t prec) {
  if (lo > hi) throw PrecisionError("interval endpoints out of order");
  Ival r(prec);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Rat Ival::lo_rat() const {
  Rat q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rat Ival::hi_rat() const {
  Rat q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

Rat Ival::mid_rat() const { return (lo_rat() + hi_rat()) / 2; }

Rat Ival::width_rat() const { return hi_rat() - lo_rat(); }

double Ival::mid_double() const {
  mpfr_t m;
  mpfr_init2(m, 64);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_ui(m, m, 2, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

bool Ival::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Ival::contains_rat(const Rat& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Ival::is_point() const { return mpfr_cmp(lo_, hi_) == 0; }

bool Ival::certainly_lt(const Ival& o) const {
  return mpfr_cmp(hi_, o.lo_) < 0;
}

bool Ival::certainly_le(const Ival& o) const {
  return mpfr_cmp(hi_, o.lo_) <= 0;
}

bool Ival::certainly_le_rat(const Rat& q) const {
  return mpfr_cmp_q(hi_, q.get_mpq_t()) <= 0;
}

bool Ival::certainly_ge_rat(const Rat& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) >= 0;
}

bool Ival::certainly_gt_rat(const Rat& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) > 0;
}

bool Ival::certainly_nonzero() const { return !contains_zero(); }

bool Ival::overlaps(const Ival& o) const {
  return mpfr_cmp(hi_, o.lo_) >= 0 && mpfr_cmp(o.hi_, lo_) >= 0;
}

Ival Ival::operator-() const {
  Ival r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Ival Ival::operator+(const Ival& o) const {
  Ival r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Ival Ival::operator-(const Ival& o) const {
  Ival r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Ival Ival::operator*(const Ival& o) const {
  Ival r(std::max(prec_, o.prec_));
  mpfr_t c, best_lo, best_hi;
  mpfr_init2(c, r.prec_);
  mpfr_init2(best_lo, r.prec_);
  mpfr_init2(best_hi, r.prec_);
  bool first = true;
  const mpfr_t* mine[2] = {&lo_, &hi_};
  const mpfr_t* theirs[2] = {&o.lo_, &o.hi_};
  for (auto a : mine)
    for (auto b : theirs) {
      mpfr_mul(c, *a, *b, MPFR_RNDD);
      if (first || mpfr_cmp(c, best_lo) < 0) mpfr_set(best_lo, c, MPFR_RNDD);
      mpfr_mul(c, *a, *b, MPFR_RNDU);
      if (first || mpfr_cmp(c, best_hi) > 0) mpfr_set(best_hi, c, MPFR_RNDU);
      first = false;
    }
  mpfr_set(r.lo_, best_lo, MPFR_RNDD);
  mpfr_set(r.hi_, best_hi, MPFR_RNDU);
  mpfr_clear(c);
  mpfr_clear(best_lo);
  mpfr_clear(best_hi);
  return r;
}

Ival Ival::operator/(const Ival& o) const {
  if (o.contains_zero())
    throw PrecisionError("interval division by an interval containing zero");
  Ival r(std::max(prec_, o.prec_));
  mpfr_t c, best_lo, best_hi;
  mpfr_init2(c, r.prec_);
  mpfr_init2(best_lo, r.prec_);
  mpfr_init2(best_hi, r.prec_);
  bool first = true;
  const mpfr_t* mine[2] = {&lo_, &hi_};
  const mpfr_t* theirs[2] = {&o.lo_, &o.hi_};
  for (auto a : mine)
    for (auto b : theirs) {
      mpfr_div(c, *a, *b, MPFR_RNDD);
      if (first || mpfr_cmp(c, best_lo) < 0) mpfr_set(best_lo, c, MPFR_RNDD);
      mpfr_div(c, *a, *b, MPFR_RNDU);
      if (first || mpfr_cmp(c, best_hi) > 0) mpfr_set(best_hi, c, MPFR_RNDU);
      first = false;
    }
  mpfr_set(r.lo_, best_lo, MPFR_RNDD);
  mpfr_set(r.hi_, best_hi, MPFR_RNDU);
  mpfr_clear(c);
  mpfr_clear(best_lo);
  mpfr_clear(best_hi);
  return r;
}

Ival Ival::abs() const {
  Ival r(prec_);
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  if (mpfr_cmp(hi_, r.hi_) > 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Ival Ival::max(const Ival& o) const {
  Ival r(std::max(prec_, o.prec_));
  mpfr_max(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Ival Ival::min(const Ival& o) const {
  Ival r(std::max(prec_, o.prec_));
  mpfr_min(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Ival Ival::pow_ui(unsigned long k) const {
  Ival acc = from_long(1, prec_);
  Ival base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

Ival Ival::sqrt() const {
  if (mpfr_sgn(lo_) < 0)
    throw PrecisionError("sqrt of an interval with negative lower end");
  Ival r(prec_);
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Ival Ival::log() const {
  if (mpfr_sgn(lo_) <= 0)
    throw PrecisionError("log of an interval not certainly positive");
  Ival r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Ival Ival::exp() const {
  Ival r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Ival Ival::intersect(const Ival& o) const {
  if (!overlaps(o)) throw PrecisionError("intersection of disjoint intervals");
  Ival r(std::max(prec_, o.prec_));
  mpfr_max(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Ival Ival::add_rat(const Rat& q) const {
  Ival r(prec_);
  mpfr_add_q(r.lo_, lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(r.hi_, hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Ival Ival::mul_rat(const Rat& q) const {
  return *this * Ival::from_rat(q, prec_);
}

namespace {
std::string mpfr_decimal(const mpfr_t& x, int digits, mpfr_rnd_t rnd) {
  char buf[512];
  std::string fmt = "%." + std::to_string(digits) + "R*g";
  mpfr_snprintf(buf, sizeof buf, fmt.c_str(), rnd, x);
  return buf;
}
}  // namespace

std::string Ival::lo_str(int digits) const {
  return mpfr_decimal(lo_, digits, MPFR_RNDD);
}

std::string Ival::hi_str(int digits) const {
  return mpfr_decimal(hi_, digits, MPFR_RNDU);
}

std::string Ival::str(int digits) const {
  return "[" + lo_str(digits) + ", " + hi_str(digits) + "]";
}

Ival const_ln2(mpfr_prec_t prec) {
  Ival r(prec);
  mpfr_const_log2(r.mutable_lo(), MPFR_RNDD);
  mpfr_const_log2(r.mutable_hi(), MPFR_RNDU);
  return r;
}

Ival const_pi(mpfr_prec_t prec) {
  Ival r(prec);
  mpfr_const_pi(r.mutable_lo(), MPFR_RNDD);
  mpfr_const_pi(r.mutable_hi(), MPFR_RNDU);
  return r;
}

Ival const_e(mpfr_prec_t prec) {
  Ival one = Ival::from_long(1, prec);
  return one.exp();
}

Ival rat_pow_interval(const Rat& base, const Rat& expo, mpfr_prec_t prec) {
  if (base <= 0) throw ConfigError("rational power with non-positive base");
  if (is_integer(expo)) {
    long e = static_cast<long>(expo.get_num().get_si());
    return Ival::from_rat(rat_pow(base, e), prec);
  }
  Ival b = Ival::from_rat(base, prec);
  Ival le = b.log() * Ival::from_rat(expo, prec);
  return le.exp();
}

}  // namespace adw
