#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adw/interval.hpp"
#include "adw/rational.hpp"

namespace adw {

// Polynomials are coefficient vectors, constant term first.  The zero
// polynomial is the empty vector; all constructors strip leading zeros.

struct RatPoly {
  std::vector<Rat> c;

  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs);
  static RatPoly zero() { return RatPoly(); }
  static RatPoly constant(const Rat& a);
  static RatPoly monomial(int degree, const Rat& a = Rat(1));

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  Rat coeff(int k) const;
  Rat sup_norm() const;  // max |coefficient|
  void normalize();      // strip leading zeros

  Rat eval(const Rat& x) const;
  Ival eval(const Ival& x) const;
  RatPoly derivative() const;
  // P(x + T) (additive shift of the argument).
  RatPoly translate_additive(const Rat& x) const;
  // P(x T) (multiplicative scaling of the argument).
  RatPoly scale_argument(const Rat& x) const;
  // P(a T + b) for a degree-one substitution.
  RatPoly compose_linear(const Rat& a, const Rat& b) const;

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly operator*(const Rat& s) const;
  bool operator==(const RatPoly& o) const = default;

  std::string str(const std::string& var = "T") const;
};

struct IntPoly {
  std::vector<Int> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs);
  static IntPoly from_longs(const std::vector<long>& coeffs);
  static IntPoly monomial(int degree, const Int& a = Int(1));

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  Int coeff(int k) const;
  Int leading() const;
  Int sup_norm() const;
  void normalize();

  Rat eval(const Rat& x) const;
  Int eval_int(const Int& x) const;
  Ival eval(const Ival& x) const;
  IntPoly derivative() const;

  Int content() const;        // gcd of coefficients (0 for zero poly)
  IntPoly primitive_part() const;

  RatPoly to_rat() const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const Int& s) const;
  IntPoly operator-() const;
  bool operator==(const IntPoly& o) const = default;

  std::string str(const std::string& var = "T") const;
};

// Division with remainder over Q: P = Q*quot + rem, deg rem < deg Q.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& p, const RatPoly& q);
// Exact division; nullopt when the remainder is nonzero.
std::optional<RatPoly> divide_exact(const RatPoly& p, const RatPoly& q);
std::optional<IntPoly> divide_exact(const IntPoly& p, const IntPoly& q);

// Primitive integer gcd of two rational polynomials (monic-free form).
IntPoly poly_gcd(const RatPoly& a, const RatPoly& b);
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

// Clear denominators: returns (primitive integer polynomial, scale) with
// p = primitive * scale, scale rational > 0 unless p is zero.
std::pair<IntPoly, Rat> to_primitive(const RatPoly& p);

// Polynomial with interval coefficients (engineered approximation targets).
struct IvalPoly {
  std::vector<Ival> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  Ival eval(const Ival& x) const;
  Ival sup_norm() const;
  IvalPoly operator*(const IvalPoly& o) const;
  IvalPoly operator-(const IvalPoly& o) const;
  static IvalPoly from_rat(const RatPoly& p, mpfr_prec_t prec);
  static IvalPoly from_int(const IntPoly& p, mpfr_prec_t prec);
};

}  // namespace adw
