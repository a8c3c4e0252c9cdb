#include "adw/poly.hpp"

#include <algorithm>
#include <sstream>

namespace adw {

RatPoly::RatPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { normalize(); }

RatPoly RatPoly::constant(const Rat& a) {
  return a == 0 ? RatPoly() : RatPoly({a});
}

RatPoly RatPoly::monomial(int degree, const Rat& a) {
  if (a == 0) return RatPoly();
  std::vector<Rat> v(degree + 1, Rat(0));
  v[degree] = a;
  return RatPoly(std::move(v));
}

Rat RatPoly::coeff(int k) const {
  return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : Rat(0);
}

Rat RatPoly::sup_norm() const {
  Rat m(0);
  for (const Rat& a : c) m = rat_max(m, rat_abs(a));
  return m;
}

void RatPoly::normalize() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat RatPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Ival RatPoly::eval(const Ival& x) const {
  Ival acc = Ival::exact_zero(x.prec());
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    acc = acc * x + Ival::from_rat(*it, x.prec());
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c.size() <= 1) return RatPoly();
  std::vector<Rat> d(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * Rat(static_cast<long>(k));
  return RatPoly(std::move(d));
}

RatPoly RatPoly::translate_additive(const Rat& x) const {
  // Synthetic Horner: P(x+T) built by repeated multiply-by-T-plus-x.
  std::vector<Rat> out;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    // out := out * (T + x) + *it
    std::vector<Rat> next(out.size() + 1, Rat(0));
    for (size_t k = 0; k < out.size(); ++k) {
      next[k + 1] += out[k];
      next[k] += out[k] * x;
    }
    if (next.empty()) next.push_back(Rat(0));
    next[0] += *it;
    out = std::move(next);
  }
  return RatPoly(std::move(out));
}

RatPoly RatPoly::scale_argument(const Rat& x) const {
  std::vector<Rat> out(c.size());
  Rat p(1);
  for (size_t k = 0; k < c.size(); ++k) {
    out[k] = c[k] * p;
    p *= x;
  }
  return RatPoly(std::move(out));
}

RatPoly RatPoly::compose_linear(const Rat& a, const Rat& b) const {
  std::vector<Rat> out;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    std::vector<Rat> next(out.size() + 1, Rat(0));
    for (size_t k = 0; k < out.size(); ++k) {
      next[k + 1] += out[k] * a;
      next[k] += out[k] * b;
    }
    if (next.empty()) next.push_back(Rat(0));
    next[0] += *it;
    out = std::move(next);
  }
  return RatPoly(std::move(out));
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<Rat> out(std::max(c.size(), o.c.size()), Rat(0));
  for (size_t k = 0; k < c.size(); ++k) out[k] += c[k];
  for (size_t k = 0; k < o.c.size(); ++k) out[k] += o.c[k];
  return RatPoly(std::move(out));
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
  std::vector<Rat> out(std::max(c.size(), o.c.size()), Rat(0));
  for (size_t k = 0; k < c.size(); ++k) out[k] += c[k];
  for (size_t k = 0; k < o.c.size(); ++k) out[k] -= o.c[k];
  return RatPoly(std::move(out));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (is_zero() || o.is_zero()) return RatPoly();
  std::vector<Rat> out(c.size() + o.c.size() - 1, Rat(0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) out[i + j] += c[i] * o.c[j];
  return RatPoly(std::move(out));
}

RatPoly RatPoly::operator*(const Rat& s) const {
  std::vector<Rat> out(c.size());
  for (size_t k = 0; k < c.size(); ++k) out[k] = c[k] * s;
  return RatPoly(std::move(out));
}

std::string RatPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (c[k] == 0) continue;
    Rat a = c[k];
    if (!first) os << (a > 0 ? " + " : " - ");
    else if (a < 0) os << "-";
    first = false;
    Rat mag = rat_abs(a);
    if (k == 0 || mag != 1) os << rat_to_string(mag);
    if (k >= 1) {
      if (mag != 1) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

IntPoly::IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { normalize(); }

IntPoly IntPoly::from_longs(const std::vector<long>& coeffs) {
  std::vector<Int> v(coeffs.begin(), coeffs.end());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::monomial(int degree, const Int& a) {
  if (a == 0) return IntPoly();
  std::vector<Int> v(degree + 1, Int(0));
  v[degree] = a;
  return IntPoly(std::move(v));
}

Int IntPoly::coeff(int k) const {
  return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : Int(0);
}

Int IntPoly::leading() const { return c.empty() ? Int(0) : c.back(); }

Int IntPoly::sup_norm() const {
  Int m(0);
  for (const Int& a : c) {
    Int v = abs(a);
    if (v > m) m = v;
  }
  return m;
}

void IntPoly::normalize() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat IntPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

Int IntPoly::eval_int(const Int& x) const {
  Int acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Ival IntPoly::eval(const Ival& x) const {
  Ival acc = Ival::exact_zero(x.prec());
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    acc = acc * x + Ival::from_int(*it, x.prec());
  return acc;
}

IntPoly IntPoly::derivative() const {
  if (c.size() <= 1) return IntPoly();
  std::vector<Int> d(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * Int(static_cast<long>(k));
  return IntPoly(std::move(d));
}

Int IntPoly::content() const {
  Int g(0);
  for (const Int& a : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return IntPoly();
  Int g = content();
  if (sgn(leading()) < 0) g = -g;
  std::vector<Int> out(c.size());
  for (size_t k = 0; k < c.size(); ++k) out[k] = c[k] / g;
  return IntPoly(std::move(out));
}

RatPoly IntPoly::to_rat() const {
  std::vector<Rat> out(c.begin(), c.end());
  return RatPoly(std::move(out));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Int> out(std::max(c.size(), o.c.size()), Int(0));
  for (size_t k = 0; k < c.size(); ++k) out[k] += c[k];
  for (size_t k = 0; k < o.c.size(); ++k) out[k] += o.c[k];
  return IntPoly(std::move(out));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<Int> out(std::max(c.size(), o.c.size()), Int(0));
  for (size_t k = 0; k < c.size(); ++k) out[k] += c[k];
  for (size_t k = 0; k < o.c.size(); ++k) out[k] -= o.c[k];
  return IntPoly(std::move(out));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<Int> out(c.size() + o.c.size() - 1, Int(0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) out[i + j] += c[i] * o.c[j];
  return IntPoly(std::move(out));
}

IntPoly IntPoly::operator*(const Int& s) const {
  std::vector<Int> out(c.size());
  for (size_t k = 0; k < c.size(); ++k) out[k] = c[k] * s;
  return IntPoly(std::move(out));
}

IntPoly IntPoly::operator-() const { return *this * Int(-1); }

std::string IntPoly::str(const std::string& var) const {
  return to_rat().str(var);
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& p, const RatPoly& q) {
  if (q.is_zero()) throw ConfigError("polynomial division by zero");
  RatPoly rem = p;
  std::vector<Rat> quot(
      p.degree() >= q.degree() ? p.degree() - q.degree() + 1 : 0, Rat(0));
  while (!rem.is_zero() && rem.degree() >= q.degree()) {
    int shift = rem.degree() - q.degree();
    Rat factor = rem.c.back() / q.c.back();
    quot[shift] = factor;
    RatPoly sub = RatPoly::monomial(shift, factor) * q;
    rem = rem - sub;
  }
  return {RatPoly(std::move(quot)), rem};
}

std::optional<RatPoly> divide_exact(const RatPoly& p, const RatPoly& q) {
  auto [quot, rem] = divmod(p, q);
  if (!rem.is_zero()) return std::nullopt;
  return quot;
}

std::optional<IntPoly> divide_exact(const IntPoly& p, const IntPoly& q) {
  auto quot = divide_exact(p.to_rat(), q.to_rat());
  if (!quot) return std::nullopt;
  auto [prim, scale] = to_primitive(*quot);
  if (!is_integer(scale)) return std::nullopt;
  return prim * scale.get_num();
}

IntPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  while (!y.is_zero()) {
    auto [q, r] = divmod(x, y);
    x = y;
    y = r;
  }
  if (x.is_zero()) return IntPoly();
  return to_primitive(x).first;
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  return poly_gcd(a.to_rat(), b.to_rat());
}

std::pair<IntPoly, Rat> to_primitive(const RatPoly& p) {
  if (p.is_zero()) return {IntPoly(), Rat(0)};
  Int den(1);
  for (const Rat& a : p.c)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den().get_mpz_t());
  std::vector<Int> ints(p.c.size());
  for (size_t k = 0; k < p.c.size(); ++k) {
    Rat scaled = p.c[k] * Rat(den);
    ints[k] = scaled.get_num();
  }
  IntPoly ip(std::move(ints));
  Int g = ip.content();
  if (sgn(ip.leading()) < 0) g = -g;
  std::vector<Int> out(ip.c.size());
  for (size_t k = 0; k < ip.c.size(); ++k) out[k] = ip.c[k] / g;
  return {IntPoly(std::move(out)), make_rat(g, den)};
}

Ival IvalPoly::eval(const Ival& x) const {
  Ival acc = Ival::exact_zero(x.prec());
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Ival IvalPoly::sup_norm() const {
  Ival m = Ival::exact_zero(c.empty() ? 64 : c.front().prec());
  for (const Ival& a : c) m = m.max(a.abs());
  return m;
}

IvalPoly IvalPoly::operator*(const IvalPoly& o) const {
  IvalPoly out;
  if (c.empty() || o.c.empty()) return out;
  mpfr_prec_t prec = std::max(c.front().prec(), o.c.front().prec());
  out.c.assign(c.size() + o.c.size() - 1, Ival::exact_zero(prec));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j)
      out.c[i + j] = out.c[i + j] + c[i] * o.c[j];
  return out;
}

IvalPoly IvalPoly::operator-(const IvalPoly& o) const {
  IvalPoly out;
  size_t sz = std::max(c.size(), o.c.size());
  mpfr_prec_t prec = 64;
  if (!c.empty()) prec = std::max(prec, c.front().prec());
  if (!o.c.empty()) prec = std::max(prec, o.c.front().prec());
  out.c.assign(sz, Ival::exact_zero(prec));
  for (size_t k = 0; k < c.size(); ++k) out.c[k] = out.c[k] + c[k];
  for (size_t k = 0; k < o.c.size(); ++k) out.c[k] = out.c[k] - o.c[k];
  return out;
}

IvalPoly IvalPoly::from_rat(const RatPoly& p, mpfr_prec_t prec) {
  IvalPoly out;
  out.c.reserve(p.c.size());
  for (const Rat& a : p.c) out.c.push_back(Ival::from_rat(a, prec));
  return out;
}

IvalPoly IvalPoly::from_int(const IntPoly& p, mpfr_prec_t prec) {
  IvalPoly out;
  out.c.reserve(p.c.size());
  for (const Int& a : p.c) out.c.push_back(Ival::from_int(a, prec));
  return out;
}

}  // namespace adw
