#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adw {

// Exact scalars.  Rat is always kept canonical: gcd(num, den) = 1, den >= 1.
using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy shared across modules.  The CLI maps these to exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rat make_rat(const Int& num, const Int& den);
Rat rat_from_string(const std::string& s);  // "p/q", "p", or decimal "1.25"
std::string rat_to_string(const Rat& q);    // "p/q", or "p" when integral

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// q^e with negative exponents allowed (q != 0 in that case).
Rat rat_pow(const Rat& q, long e);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);
// Nearest integer, ties away from zero.
Int round_rat(const Rat& q);

inline Rat rat_abs(const Rat& q) { return abs(q); }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }

std::string int_to_string(const Int& z);

}  // namespace adw
