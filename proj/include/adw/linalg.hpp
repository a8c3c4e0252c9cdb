#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "adw/rational.hpp"

namespace adw {

struct RatMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;  // row major

  RatMat() = default;
  RatMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}
  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static RatMat identity(int n);
  RatMat transpose() const;
  RatMat operator*(const RatMat& o) const;
  std::vector<Rat> apply(const std::vector<Rat>& x) const;  // M x
  bool operator==(const RatMat& o) const = default;
};

struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}
  Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static IntMat identity(int n);
  RatMat to_rat() const;
  IntMat transpose() const;
  IntMat operator*(const IntMat& o) const;
};

// Exact rank by fraction-free (Bareiss) elimination after clearing
// denominators row by row.
int rank(const RatMat& m);
int rank(const IntMat& m);

// Determinant of a square matrix (Bareiss).
Rat determinant(const RatMat& m);
Int determinant(const IntMat& m);

// Basis of {x : M x = 0}, exact over Q.
std::vector<std::vector<Rat>> right_kernel(const RatMat& m);
// Basis of the integer lattice {x in Z^cols : M x = 0} (saturated).
std::vector<std::vector<Int>> right_kernel_integer(const IntMat& m);

// Solve M x = b for square invertible M; nullopt when singular.
std::optional<std::vector<Rat>> solve(const RatMat& m, const std::vector<Rat>& b);
std::optional<RatMat> inverse(const RatMat& m);

// Solve M x = b (mod p^k) for square integer M with gcd(det M, p) = 1.
std::optional<std::vector<Int>> solve_mod_prime_power(const IntMat& m,
                                                      const std::vector<Int>& b,
                                                      const Int& p, unsigned k);

// All maximal minors (order = rows) of a rows x cols matrix, rows <= cols,
// in lexicographic column-subset order.
std::vector<Rat> maximal_minors(const RatMat& m);

// Column-style Hermite normal form; returns (H, U) with M U = H, U unimodular.
std::pair<IntMat, IntMat> hermite_normal_form_cols(const IntMat& m);

// Random unimodular matrix (product of elementary operations), for tests.
IntMat random_unimodular(int n, int steps, const std::function<long()>& rnd);

}  // namespace adw
