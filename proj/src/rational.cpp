#include "adw/rational.hpp"

namespace adw {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw ConfigError("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw ConfigError("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 ||
        den.set_str(s.substr(slash + 1), 10) != 0 || den == 0)
      throw ConfigError("bad rational literal: " + s);
    return make_rat(num, den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    Int num;
    if (digits == "" || digits == "-" || num.set_str(digits, 10) != 0)
      throw ConfigError("bad rational literal: " + s);
    Int den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return make_rat(num, den);
  }
  Int num;
  if (num.set_str(s, 10) != 0) throw ConfigError("bad rational literal: " + s);
  return Rat(num);
}

std::string rat_to_string(const Rat& q) {
  if (is_integer(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_pow(const Rat& q, long e) {
  if (e == 0) return Rat(1);
  if (q == 0 && e < 0) throw ConfigError("0 raised to a negative power");
  Rat base = e < 0 ? Rat(q.get_den(), q.get_num()) : q;
  base.canonicalize();
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e)
                          : static_cast<unsigned long>(e);
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), k);
  out.canonicalize();
  return out;
}

Int floor_rat(const Rat& q) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Int ceil_rat(const Rat& q) {
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Int round_rat(const Rat& q) {
  // floor(|q| + 1/2) with the sign restored: ties round away from zero.
  Rat a = rat_abs(q) + Rat(1, 2);
  Int m = floor_rat(a);
  return sgn(q) < 0 ? Int(-m) : m;
}

std::string int_to_string(const Int& z) { return z.get_str(); }

}  // namespace adw
