#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "adw/rational.hpp"

namespace adw {

// A real interval [lo, hi] with dyadic endpoints (MPFR numbers) and outward
// rounding on every arithmetic step: lo is rounded down, hi up, so the true
// value of any expression stays enclosed.  Values are immutable in practice:
// every operation returns a fresh interval.
class Ival {
 public:
  explicit Ival(mpfr_prec_t prec = 64);
  Ival(const Ival& o);
  Ival(Ival&& o) noexcept;
  Ival& operator=(const Ival& o);
  Ival& operator=(Ival&& o) noexcept;
  ~Ival();

  static Ival from_rat(const Rat& q, mpfr_prec_t prec);
  static Ival from_int(const Int& z, mpfr_prec_t prec);
  static Ival from_long(long v, mpfr_prec_t prec = 64);
  static Ival exact_zero(mpfr_prec_t prec = 64) { return from_long(0, prec); }
  // [lo, hi] from rational endpoints, rounded outward.
  static Ival from_endpoints(const Rat& lo, const Rat& hi, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return prec_; }

  Rat lo_rat() const;  // exact (dyadic endpoints are rational)
  Rat hi_rat() const;
  Rat mid_rat() const;
  Rat width_rat() const;
  double mid_double() const;

  bool contains_zero() const;
  bool contains_rat(const Rat& q) const;
  bool is_point() const;

  // Certified order predicates: true only when provable from the endpoints.
  bool certainly_lt(const Ival& o) const;
  bool certainly_le(const Ival& o) const;
  bool certainly_le_rat(const Rat& q) const;
  bool certainly_ge_rat(const Rat& q) const;
  bool certainly_gt_rat(const Rat& q) const;
  bool certainly_nonzero() const;
  bool overlaps(const Ival& o) const;

  Ival operator-() const;
  Ival operator+(const Ival& o) const;
  Ival operator-(const Ival& o) const;
  Ival operator*(const Ival& o) const;
  Ival operator/(const Ival& o) const;  // throws PrecisionError if 0 in o
  Ival abs() const;
  Ival max(const Ival& o) const;
  Ival min(const Ival& o) const;
  Ival pow_ui(unsigned long k) const;
  Ival sqrt() const;  // requires certainly nonnegative lower end
  Ival log() const;   // requires certainly positive
  Ival exp() const;
  // Intersection (both must overlap); keeps enclosures monotone when
  // recomputing at higher precision.
  Ival intersect(const Ival& o) const;

  Ival add_rat(const Rat& q) const;
  Ival mul_rat(const Rat& q) const;

  // Decimal rendering "[lo, hi]" with outward-rounded digits.
  std::string str(int digits = 20) const;
  std::string lo_str(int digits = 20) const;
  std::string hi_str(int digits = 20) const;

  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }
  mpfr_t& mutable_lo() { return lo_; }
  mpfr_t& mutable_hi() { return hi_; }

 private:
  mpfr_t lo_, hi_;
  mpfr_prec_t prec_;
};

// Enclosures of named constants with certified endpoints.
Ival const_ln2(mpfr_prec_t prec);
Ival const_e(mpfr_prec_t prec);
Ival const_pi(mpfr_prec_t prec);

// base^expo for rational base > 0 and rational exponent, as an enclosure.
Ival rat_pow_interval(const Rat& base, const Rat& expo, mpfr_prec_t prec);

}  // namespace adw
