#include "adw/lll.hpp"

namespace adw {

namespace {

// Gram-Schmidt data for the current basis, computed from the current Gram.
struct Gso {
  std::vector<std::vector<Rat>> mu;  // mu[i][j], j < i
  std::vector<Rat> B;                // squared GSO norms

  void compute(const RatMat& gram) {
    int m = gram.rows;
    mu.assign(m, {});
    B.assign(m, Rat(0));
    for (int i = 0; i < m; ++i) {
      mu[i].assign(i, Rat(0));
      for (int j = 0; j < i; ++j) {
        Rat v = gram.at(i, j);
        for (int l = 0; l < j; ++l) v -= mu[j][l] * mu[i][l] * B[l];
        if (B[j] == 0) throw ConfigError("lll: Gram matrix not definite");
        mu[i][j] = v / B[j];
      }
      Rat b = gram.at(i, i);
      for (int j = 0; j < i; ++j) b -= mu[i][j] * mu[i][j] * B[j];
      B[i] = b;
      if (B[i] <= 0) throw ConfigError("lll: Gram matrix not positive definite");
    }
  }
};

}  // namespace

LllResult lll_reduce_gram(const RatMat& gram, const Rat& delta) {
  if (gram.rows != gram.cols) throw ConfigError("lll: Gram must be square");
  const int m = gram.rows;
  IntMat u = IntMat::identity(m);
  RatMat gc = gram;  // current Gram = U G U^T, updated in place
  Gso gso;
  gso.compute(gc);

  auto row_op = [&](int i, int j, const Int& q) {
    // basis_i -= q * basis_j on the transform; Gram refreshed by the caller
    for (int k = 0; k < m; ++k) u.at(i, k) -= q * u.at(j, k);
  };

  auto recompute_row = [&](int i) {
    // refresh row/column i of the current Gram from U and the input
    for (int k = 0; k < m; ++k) {
      Rat v(0);
      for (int a = 0; a < m; ++a) {
        if (u.at(i, a) == 0) continue;
        Rat inner(0);
        for (int b = 0; b < m; ++b) {
          if (u.at(k, b) == 0) continue;
          inner += Rat(u.at(k, b)) * gram.at(a, b);
        }
        v += Rat(u.at(i, a)) * inner;
      }
      gc.at(i, k) = v;
      gc.at(k, i) = v;
    }
  };

  auto reduce_entry = [&](int k, int l) {
    Rat mu_kl = gso.mu[k][l];
    if (rat_abs(mu_kl) <= Rat(1, 2)) return;
    Int q = round_rat(mu_kl);
    row_op(k, l, q);
    recompute_row(k);
    gso.mu[k][l] -= Rat(q);
    for (int j = 0; j < l; ++j) gso.mu[k][j] -= Rat(q) * gso.mu[l][j];
  };

  int k = 1;
  while (k < m) {
    reduce_entry(k, k - 1);
    Rat lhs = gso.B[k];
    Rat rhs = (delta - gso.mu[k][k - 1] * gso.mu[k][k - 1]) * gso.B[k - 1];
    if (lhs >= rhs) {
      for (int l = k - 2; l >= 0; --l) reduce_entry(k, l);
      ++k;
    } else {
      for (int j = 0; j < m; ++j) std::swap(u.at(k, j), u.at(k - 1, j));
      recompute_row(k);
      recompute_row(k - 1);
      gso.compute(gc);
      k = std::max(k - 1, 1);
    }
  }
  return {u, gso.B};
}

IntMat lll_reduce_rows(const IntMat& rows, const Rat& delta) {
  RatMat gram(rows.rows, rows.rows);
  for (int i = 0; i < rows.rows; ++i)
    for (int j = i; j < rows.rows; ++j) {
      Int v(0);
      for (int k = 0; k < rows.cols; ++k) v += rows.at(i, k) * rows.at(j, k);
      gram.at(i, j) = Rat(v);
      gram.at(j, i) = Rat(v);
    }
  LllResult res = lll_reduce_gram(gram, delta);
  IntMat out(rows.rows, rows.cols);
  for (int i = 0; i < rows.rows; ++i)
    for (int j = 0; j < rows.cols; ++j) {
      Int v(0);
      for (int k = 0; k < rows.rows; ++k)
        v += res.transform.at(i, k) * rows.at(k, j);
      out.at(i, j) = v;
    }
  return out;
}

}  // namespace adw
