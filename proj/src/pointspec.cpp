#include "adw/pointspec.hpp"

#include <cctype>
#include <sstream>

#include "adw/factor.hpp"
#include "adw/roots.hpp"

namespace adw {

PointSpec PointSpec::rational(const Rat& q) {
  PointSpec p;
  p.kind_ = Kind::Rational;
  p.rational_value_ = q;
  p.cached_ = Ival::from_rat(q, kDefaultPrecision);
  return p;
}

PointSpec PointSpec::algebraic(const IntPoly& minimal_poly, int root_index) {
  if (minimal_poly.degree() < 1)
    throw ConfigError("algebraic point needs a non-constant minimal polynomial");
  if (!is_irreducible(minimal_poly))
    throw ConfigError("algebraic point: minimal polynomial is reducible");
  PointSpec p;
  p.kind_ = Kind::Algebraic;
  p.minpoly_ = minimal_poly.primitive_part();
  p.root_index_ = root_index;
  p.cached_ = p.enclosure(kDefaultPrecision);  // also validates the index
  return p;
}

PointSpec PointSpec::named(const std::string& name) {
  if (name != "ln2" && name != "e" && name != "pi")
    throw ConfigError("unknown named constant: " + name);
  PointSpec p;
  p.kind_ = Kind::Named;
  p.name_ = name;
  p.cached_ = p.enclosure(kDefaultPrecision);
  return p;
}

namespace {

// split "base<modifiers>" where modifiers are +q, -q, *q applied in order;
// the base end position must be supplied by the caller
PointSpec apply_modifiers(PointSpec base, const std::string& text, size_t pos) {
  Rat scale(1), offset(0);
  while (pos < text.size()) {
    char op = text[pos];
    if (op != '+' && op != '-' && op != '*')
      throw ConfigError("bad point modifier in: " + text);
    size_t next = pos + 1;
    while (next < text.size() && text[next] != '+' && text[next] != '*' &&
           (text[next] != '-' || text[next - 1] == '/' || next == pos + 1))
      ++next;
    Rat operand = rat_from_string(text.substr(pos + 1, next - pos - 1));
    if (op == '*') {
      scale *= operand;
      offset *= operand;
    } else if (op == '+') {
      offset += operand;
    } else {
      offset -= operand;
    }
    pos = next;
  }
  if (scale == Rat(1) && offset == 0) return base;
  return base.affine(scale, offset);
}

}  // namespace

PointSpec PointSpec::parse(const std::string& text) {
  if (text.rfind("rat:", 0) == 0) return rational(rat_from_string(text.substr(4)));
  if (text.rfind("const:", 0) == 0) {
    std::string rest = text.substr(6);
    size_t end = 0;
    while (end < rest.size() && (std::isalnum(rest[end]) != 0)) ++end;
    return apply_modifiers(named(rest.substr(0, end)), rest, end);
  }
  if (text.rfind("alg:", 0) == 0) {
    std::string rest = text.substr(4);
    auto at = rest.find("@root");
    if (at == std::string::npos || rest.empty() || rest[0] != '[')
      throw ConfigError("bad algebraic point syntax: " + text);
    std::string list = rest.substr(1, rest.rfind(']') - 1);
    std::vector<Int> coeffs;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      Int z;
      if (z.set_str(item, 10) != 0)
        throw ConfigError("bad coefficient in algebraic point: " + item);
      coeffs.push_back(z);
    }
    size_t end = at + 5;
    while (end < rest.size() && std::isdigit(rest[end]) != 0) ++end;
    int index = std::stoi(rest.substr(at + 5, end - at - 5));
    return apply_modifiers(algebraic(IntPoly(std::move(coeffs)), index), rest,
                           end);
  }
  throw ConfigError("unrecognized point syntax: " + text);
}

PointSpec PointSpec::affine(const Rat& scale, const Rat& offset) const {
  if (scale == 0) throw ConfigError("degenerate affine point image");
  PointSpec p = *this;
  if (p.kind_ == Kind::Rational) {
    p.rational_value_ = scale * p.rational_value_ + offset;
  } else {
    p.scale_ *= scale;
    p.offset_ = scale * p.offset_ + offset;
  }
  p.cached_ = p.enclosure(kDefaultPrecision);
  return p;
}

std::string PointSpec::str() const {
  std::string base;
  switch (kind_) {
    case Kind::Rational:
      return "rat:" + rat_to_string(rational_value_);
    case Kind::Named:
      base = "const:" + name_;
      break;
    case Kind::Algebraic: {
      base = "alg:[";
      for (size_t i = 0; i < minpoly_.c.size(); ++i) {
        if (i) base += ",";
        base += minpoly_.c[i].get_str();
      }
      base += "]@root" + std::to_string(root_index_);
      break;
    }
  }
  if (scale_ != 1) base += "*" + rat_to_string(scale_);
  if (offset_ != 0)
    base += (offset_ > 0 ? "+" + rat_to_string(offset_)
                         : rat_to_string(offset_));
  return base;
}

std::optional<Rat> PointSpec::exact() const {
  if (kind_ == Kind::Rational) return rational_value_;
  return std::nullopt;
}

Ival PointSpec::enclosure(mpfr_prec_t prec) const {
  Ival base = Ival::exact_zero(prec);
  switch (kind_) {
    case Kind::Rational:
      return Ival::from_rat(rational_value_, prec);
    case Kind::Algebraic:
      base = real_root_enclosure(minpoly_, root_index_, prec);
      break;
    case Kind::Named:
      if (name_ == "ln2")
        base = const_ln2(prec);
      else if (name_ == "e")
        base = const_e(prec);
      else
        base = const_pi(prec);
      break;
  }
  if (scale_ != 1) base = base.mul_rat(scale_);
  if (offset_ != 0) base = base.add_rat(offset_);
  return base;
}

bool PointSpec::operator==(const PointSpec& o) const {
  if (kind_ != o.kind_) return false;
  if (scale_ != o.scale_ || offset_ != o.offset_) return false;
  switch (kind_) {
    case Kind::Rational:
      return rational_value_ == o.rational_value_;
    case Kind::Algebraic:
      return minpoly_ == o.minpoly_ && root_index_ == o.root_index_;
    case Kind::Named:
      return name_ == o.name_;
  }
  return false;
}

PointHandle PointHandle::from_spec(const PointSpec& spec) {
  PointHandle h;
  h.enclose = [spec](mpfr_prec_t prec) { return spec.enclosure(prec); };
  h.exact = spec.exact();
  h.desc = spec.str();
  return h;
}

PointHandle PointHandle::from_rat(const Rat& q) {
  PointHandle h;
  h.enclose = [q](mpfr_prec_t prec) { return Ival::from_rat(q, prec); };
  h.exact = q;
  h.desc = "rat:" + rat_to_string(q);
  return h;
}

Ival eval_poly_at_point(const RatPoly& p, const PointSpec& x,
                        mpfr_prec_t precision_bits) {
  if (precision_bits < 8)
    throw ConfigError("eval_poly_at_point needs precision_bits >= 8");
  // Evaluate at increasing working precision until the result interval
  // meets the relative-width contract, intersecting to stay monotone.
  Ival result = p.eval(x.enclosure(precision_bits));
  mpfr_prec_t work = precision_bits * 2;
  for (int rounds = 0; rounds < 24; ++rounds) {
    Rat scale = rat_max(Rat(1), rat_abs(result.lo_rat()));
    if (Rat(result.width_rat()) <=
        rat_pow(Rat(1, 2), static_cast<long>(precision_bits) - 1) * scale)
      return result;
    result = result.intersect(p.eval(x.enclosure(work)));
    work *= 2;
  }
  throw PrecisionError("eval_poly_at_point: width contract unreachable");
}

}  // namespace adw
