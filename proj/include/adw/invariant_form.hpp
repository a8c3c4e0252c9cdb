#pragma once

#include <vector>

#include "adw/linalg.hpp"
#include "adw/poly.hpp"

namespace adw {

// Translation-invariant bilinear forms on E_n for points in arithmetic or
// geometric progression.  The additive case uses nodes gamma_i = i*gamma and
// the argument shift tau_x(P) = P(x+T); the multiplicative case uses
// gamma_i = gamma^i and tau_x(P) = P(xT), and requires gamma^i != 1 for
// i = 1..2n so all nodes gamma_0..gamma_2n stay distinct.

struct ProgressionCase {
  enum class Tag { Additive, Multiplicative };
  Tag tag = Tag::Additive;
  Rat gamma = Rat(1);

  static ProgressionCase additive(const Rat& gamma);
  static ProgressionCase multiplicative(const Rat& gamma, int n);
  bool is_additive() const { return tag == Tag::Additive; }
  Rat node(int i) const;  // gamma_i
  void validate(int n) const;
  std::string str() const;
};

struct InvariantForm {
  int n = 0;
  ProgressionCase progression;
  std::vector<Rat> a;  // relation coefficients a_0..a_{n+1}, a_{n+1} = 1
  Rat rho;             // 1 (additive) or gamma^n (multiplicative)
  // upper-triangular coefficients g_ij for 0 <= i <= j <= n
  std::vector<std::vector<Rat>> g;

  const Rat& g_at(int i, int j) const { return g[i][j - i]; }
};

// Unique a_0..a_{n+1} with a_{n+1}=1 annihilating every P in E_n at the
// nodes gamma_0..gamma_{n+1}; solved as a linear system and cross-checked
// against the Lagrange closed form.
std::vector<Rat> relation_coefficients(int n, const ProgressionCase& c);

// Closed form a_i = -prod_{j != i} (gamma_{n+1}-gamma_j)/(gamma_i-gamma_j).
std::vector<Rat> relation_coefficients_lagrange(int n, const ProgressionCase& c);

InvariantForm build_form(int n, const ProgressionCase& c);

// g(P, Q) evaluated at nodes generated from `base`:
// x_i = base + i*gamma (additive) or base * gamma^i (multiplicative), with
// the prefactor 1 (additive) or base^{-n} (multiplicative).  With
// base = gamma_0 this reproduces the defining sum.
Rat evaluate_form(const InvariantForm& f, const RatPoly& p, const RatPoly& q,
                  const Rat& base);

// tau_x: argument shift P(x+T) or dilation P(xT) per the progression case.
RatPoly translate_poly(const RatPoly& p, const Rat& x, const ProgressionCase& c);

// Gram matrix of the form in the monomial basis, nodes from `base`:
// G_kl such that g(P, Q) = p^T G q on coefficient vectors.
RatMat gram_matrix(const InvariantForm& f, const Rat& base);

}  // namespace adw
