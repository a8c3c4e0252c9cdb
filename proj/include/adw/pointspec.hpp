#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adw/interval.hpp"
#include "adw/poly.hpp"

namespace adw {

// Default working precision for point enclosures; doubled on demand when a
// downstream tolerance check cannot be decided.
inline constexpr mpfr_prec_t kDefaultPrecision = 256;

// A point of the completion R = Q_w at the real place: an exact rational, a
// real algebraic number (irreducible integer minimal polynomial + index of
// the real root, ascending), or a named transcendental constant with a
// certified evaluator.
class PointSpec {
 public:
  enum class Kind { Rational, Algebraic, Named };

  static PointSpec rational(const Rat& q);
  static PointSpec algebraic(const IntPoly& minimal_poly, int root_index);
  static PointSpec named(const std::string& name);  // ln2 | e | pi

  // Text syntax: rat:3/2 | alg:[1,0,-2]@root0 | const:ln2, optionally with
  // affine modifiers applied left to right: const:ln2+1, const:e*1/2-3.
  static PointSpec parse(const std::string& text);
  std::string str() const;

  // The affine image scale * this + offset (progression-derived points).
  PointSpec affine(const Rat& scale, const Rat& offset) const;

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  std::optional<Rat> exact() const;
  const IntPoly& minimal_poly() const { return minpoly_; }

  // Certified enclosure; recomputing at higher precision only shrinks it.
  Ival enclosure(mpfr_prec_t prec = kDefaultPrecision) const;
  // The enclosure cached at construction (default precision).
  const Ival& cached() const { return cached_; }

  bool operator==(const PointSpec& o) const;

 private:
  PointSpec() : cached_(Ival::exact_zero()) {}
  Kind kind_ = Kind::Rational;
  Rat rational_value_;
  IntPoly minpoly_;
  int root_index_ = 0;
  std::string name_;
  Rat scale_ = Rat(1), offset_ = Rat(0);  // affine image of the base point
  Ival cached_;
};

// A point handle decouples body construction from the PointSpec variants:
// progression-derived points provide their own evaluators.
struct PointHandle {
  std::function<Ival(mpfr_prec_t)> enclose;
  std::optional<Rat> exact;  // set when the point is an exact rational
  std::string desc;

  static PointHandle from_spec(const PointSpec& spec);
  static PointHandle from_rat(const Rat& q);
};

// Interval evaluation of P at a point with the width contract of the
// enclosure machinery; precision_bits >= 8 required.
Ival eval_poly_at_point(const RatPoly& p, const PointSpec& x,
                        mpfr_prec_t precision_bits);

}  // namespace adw
