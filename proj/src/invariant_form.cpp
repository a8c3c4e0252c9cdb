#include "adw/invariant_form.hpp"

namespace adw {

ProgressionCase ProgressionCase::additive(const Rat& gamma) {
  if (gamma == 0) throw ConfigError("additive progression requires gamma != 0");
  return {Tag::Additive, gamma};
}

ProgressionCase ProgressionCase::multiplicative(const Rat& gamma, int n) {
  ProgressionCase c{Tag::Multiplicative, gamma};
  c.validate(n);
  return c;
}

Rat ProgressionCase::node(int i) const {
  if (is_additive()) return gamma * Rat(i);
  return rat_pow(gamma, i);
}

void ProgressionCase::validate(int n) const {
  if (gamma == 0) throw ConfigError("progression requires gamma != 0");
  if (!is_additive()) {
    Rat power(1);
    for (int i = 1; i <= 2 * n; ++i) {
      power *= gamma;
      if (power == 1)
        throw ConfigError("multiplicative case needs gamma^i != 1 for i <= " +
                          std::to_string(2 * n) + "; fails at i = " +
                          std::to_string(i));
    }
  }
}

std::string ProgressionCase::str() const {
  return std::string(is_additive() ? "additive" : "multiplicative") +
         "(gamma=" + rat_to_string(gamma) + ")";
}

std::vector<Rat> relation_coefficients(int n, const ProgressionCase& c) {
  if (n < 0) throw ConfigError("relation coefficients need n >= 0");
  c.validate(n);
  // Solve sum_{i=0}^{n} a_i gamma_i^k = -gamma_{n+1}^k for k = 0..n, then
  // append a_{n+1} = 1.
  RatMat m(n + 1, n + 1);
  std::vector<Rat> rhs(n + 1);
  std::vector<Rat> nodes(n + 2);
  for (int i = 0; i <= n + 1; ++i) nodes[i] = c.node(i);
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i <= n; ++i) m.at(k, i) = rat_pow(nodes[i], k);
    rhs[k] = -rat_pow(nodes[n + 1], k);
  }
  auto sol = solve(m, rhs);
  if (!sol) throw ConfigError("degenerate progression nodes");
  sol->push_back(Rat(1));
  // cross-check against the Lagrange closed form
  auto closed = relation_coefficients_lagrange(n, c);
  if (*sol != closed)
    throw ConfigError("relation coefficient cross-check failed");
  return *sol;
}

std::vector<Rat> relation_coefficients_lagrange(int n, const ProgressionCase& c) {
  c.validate(n);
  std::vector<Rat> nodes(n + 2);
  for (int i = 0; i <= n + 1; ++i) nodes[i] = c.node(i);
  std::vector<Rat> a(n + 2);
  for (int i = 0; i <= n; ++i) {
    Rat prod(1);
    for (int j = 0; j <= n; ++j) {
      if (j == i) continue;
      prod *= (nodes[n + 1] - nodes[j]) / (nodes[i] - nodes[j]);
    }
    a[i] = -prod;
  }
  a[n + 1] = Rat(1);
  return a;
}

InvariantForm build_form(int n, const ProgressionCase& c) {
  InvariantForm f;
  f.n = n;
  f.progression = c;
  f.a = relation_coefficients(n, c);
  f.rho = c.is_additive() ? Rat(1) : rat_pow(c.gamma, n);
  f.g.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    f.g[i].resize(n + 1 - i);
    for (int j = i; j <= n; ++j)
      f.g[i][j - i] = rat_pow(f.rho, n - j) * f.a[n + 1 + i - j];
  }
  for (int i = 0; i <= n; ++i)
    if (f.g_at(i, i) == 0) throw ConfigError("degenerate diagonal in form");
  return f;
}

Rat evaluate_form(const InvariantForm& f, const RatPoly& p, const RatPoly& q,
                  const Rat& base) {
  if (p.degree() > f.n || q.degree() > f.n)
    throw ConfigError("evaluate_form: degree exceeds n");
  if (!f.progression.is_additive() && base == 0)
    throw ConfigError("evaluate_form: multiplicative base must be nonzero");
  std::vector<Rat> pv(f.n + 1), qv(f.n + 1);
  for (int i = 0; i <= f.n; ++i) {
    Rat x = f.progression.is_additive() ? Rat(base + f.progression.node(i))
                                        : Rat(base * f.progression.node(i));
    pv[i] = p.eval(x);
    qv[i] = q.eval(x);
  }
  Rat prefactor = f.progression.is_additive() ? Rat(1) : rat_pow(base, -f.n);
  Rat sum(0);
  for (int i = 0; i <= f.n; ++i)
    for (int j = i; j <= f.n; ++j) sum += f.g_at(i, j) * pv[i] * qv[j];
  return prefactor * sum;
}

RatPoly translate_poly(const RatPoly& p, const Rat& x, const ProgressionCase& c) {
  if (c.is_additive()) return p.translate_additive(x);
  if (x == 0)
    throw ConfigError("multiplicative translation requires x != 0");
  return p.scale_argument(x);
}

RatMat gram_matrix(const InvariantForm& f, const Rat& base) {
  if (!f.progression.is_additive() && base == 0)
    throw ConfigError("gram_matrix: multiplicative base must be nonzero");
  int n = f.n;
  std::vector<Rat> x(n + 1);
  for (int i = 0; i <= n; ++i)
    x[i] = f.progression.is_additive() ? Rat(base + f.progression.node(i))
                                       : Rat(base * f.progression.node(i));
  Rat prefactor = f.progression.is_additive() ? Rat(1) : rat_pow(base, -n);
  RatMat gram(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      Rat coeff = prefactor * f.g_at(i, j);
      for (int k = 0; k <= n; ++k) {
        Rat xik = rat_pow(x[i], k);
        for (int l = 0; l <= n; ++l)
          gram.at(k, l) += coeff * xik * rat_pow(x[j], l);
      }
    }
  return gram;
}

}  // namespace adw
