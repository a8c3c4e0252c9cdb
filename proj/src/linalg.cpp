#include "adw/linalg.hpp"

#include <algorithm>

namespace adw {

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMat RatMat::transpose() const {
  RatMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols != o.rows) throw ConfigError("matrix product shape mismatch");
  RatMat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

std::vector<Rat> RatMat::apply(const std::vector<Rat>& x) const {
  if (static_cast<int>(x.size()) != cols)
    throw ConfigError("matrix apply shape mismatch");
  std::vector<Rat> y(rows, Rat(0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) y[i] += at(i, j) * x[j];
  return y;
}

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMat IntMat::to_rat() const {
  RatMat r(rows, cols);
  for (size_t k = 0; k < a.size(); ++k) r.a[k] = Rat(a[k]);
  return r;
}

IntMat IntMat::transpose() const {
  IntMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols != o.rows) throw ConfigError("matrix product shape mismatch");
  IntMat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

namespace {

IntMat clear_denominators(const RatMat& m) {
  IntMat z(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i) {
    Int l(1);
    for (int j = 0; j < m.cols; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
    for (int j = 0; j < m.cols; ++j) {
      Rat v = m.at(i, j) * Rat(l);
      z.at(i, j) = v.get_num();
    }
  }
  return z;
}

// Bareiss fraction-free elimination.  Returns the rank; when det != nullptr
// the matrix must be square and *det receives the determinant.
int bareiss(IntMat m, Int* det) {
  const int rows = m.rows, cols = m.cols;
  Int prev(1);
  int row = 0;
  int sign = 1;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pivot = -1;
    for (int i = row; i < rows; ++i)
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row) {
      for (int j = 0; j < cols; ++j) std::swap(m.at(pivot, j), m.at(row, j));
      sign = -sign;
    }
    for (int i = row + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j) {
        Int v = m.at(i, j) * m.at(row, col) - m.at(i, col) * m.at(row, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = v;
      }
      m.at(i, col) = 0;
    }
    prev = m.at(row, col);
    ++row;
  }
  if (det != nullptr) {
    if (rows != cols) throw ConfigError("determinant of a non-square matrix");
    *det = (row == rows) ? Int(sign) * prev : Int(0);
  }
  return row;
}

// Reduced row echelon form over Q; returns pivot column indices.
std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pivot = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(row, j));
    Rat inv = Rat(1) / m.at(row, col);
    for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      Rat f = m.at(i, col);
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank(const RatMat& m) { return bareiss(clear_denominators(m), nullptr); }

int rank(const IntMat& m) { return bareiss(m, nullptr); }

Rat determinant(const RatMat& m) {
  if (m.rows != m.cols) throw ConfigError("determinant of a non-square matrix");
  // Track the row scalings introduced by clearing denominators.
  Rat scale(1);
  RatMat work = m;
  IntMat z(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i) {
    Int l(1);
    for (int j = 0; j < m.cols; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), work.at(i, j).get_den().get_mpz_t());
    scale *= Rat(l);
    for (int j = 0; j < m.cols; ++j) z.at(i, j) = Rat(work.at(i, j) * Rat(l)).get_num();
  }
  Int det;
  bareiss(z, &det);
  return Rat(det) / scale;
}

Int determinant(const IntMat& m) {
  Int det;
  bareiss(m, &det);
  return det;
}

std::vector<std::vector<Rat>> right_kernel(const RatMat& m) {
  RatMat work = m;
  std::vector<int> pivots = rref(work);
  std::vector<bool> is_pivot(m.cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(m.cols, Rat(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work.at(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rat>> solve(const RatMat& m, const std::vector<Rat>& b) {
  if (m.rows != m.cols || static_cast<int>(b.size()) != m.rows)
    throw ConfigError("solve expects a square system");
  RatMat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  std::vector<int> pivots = rref(aug);
  if (static_cast<int>(pivots.size()) != m.cols) return std::nullopt;
  std::vector<Rat> x(m.cols);
  for (int i = 0; i < m.cols; ++i) x[i] = aug.at(i, m.cols);
  return x;
}

std::optional<RatMat> inverse(const RatMat& m) {
  if (m.rows != m.cols) throw ConfigError("inverse of a non-square matrix");
  int n = m.rows;
  RatMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  std::vector<int> pivots = rref(aug);
  if (static_cast<int>(pivots.size()) != n) return std::nullopt;
  RatMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::optional<std::vector<Int>> solve_mod_prime_power(const IntMat& m,
                                                      const std::vector<Int>& b,
                                                      const Int& p, unsigned k) {
  if (m.rows != m.cols || static_cast<int>(b.size()) != m.rows)
    throw ConfigError("modular solve expects a square system");
  Int mod;
  mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), k);
  const int n = m.rows;
  IntMat aug(n, n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      aug.at(i, j) = m.at(i, j) % mod;
      if (aug.at(i, j) < 0) aug.at(i, j) += mod;
    }
    aug.at(i, n) = b[i] % mod;
    if (aug.at(i, n) < 0) aug.at(i, n) += mod;
  }
  // Gauss-Jordan over Z/p^k: pivots must be units (not divisible by p).
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i)
      if (aug.at(i, col) % p != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return std::nullopt;
    if (pivot != col)
      for (int j = 0; j <= n; ++j) std::swap(aug.at(pivot, j), aug.at(col, j));
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), aug.at(col, col).get_mpz_t(),
                   mod.get_mpz_t()) == 0)
      return std::nullopt;
    for (int j = col; j <= n; ++j) aug.at(col, j) = (aug.at(col, j) * inv) % mod;
    for (int i = 0; i < n; ++i) {
      if (i == col || aug.at(i, col) == 0) continue;
      Int f = aug.at(i, col);
      for (int j = col; j <= n; ++j) {
        aug.at(i, j) = (aug.at(i, j) - f * aug.at(col, j)) % mod;
        if (aug.at(i, j) < 0) aug.at(i, j) += mod;
      }
    }
  }
  std::vector<Int> x(n);
  for (int i = 0; i < n; ++i) x[i] = aug.at(i, n);
  return x;
}

namespace {
void enumerate_minors(const RatMat& m, int order, std::vector<int>& chosen,
                      int next, std::vector<Rat>& out) {
  if (static_cast<int>(chosen.size()) == order) {
    RatMat sub(order, order);
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j) sub.at(i, j) = m.at(i, chosen[j]);
    out.push_back(determinant(sub));
    return;
  }
  for (int c = next; c <= m.cols - (order - static_cast<int>(chosen.size())); ++c) {
    chosen.push_back(c);
    enumerate_minors(m, order, chosen, c + 1, out);
    chosen.pop_back();
  }
}
}  // namespace

std::vector<Rat> maximal_minors(const RatMat& m) {
  if (m.rows > m.cols)
    throw ConfigError("maximal minors expect rows <= cols");
  std::vector<Rat> out;
  std::vector<int> chosen;
  enumerate_minors(m, m.rows, chosen, 0, out);
  return out;
}

std::pair<IntMat, IntMat> hermite_normal_form_cols(const IntMat& m) {
  IntMat h = m;
  IntMat u = IntMat::identity(m.cols);
  int row = 0, col = 0;
  while (row < h.rows && col < h.cols) {
    // Euclidean sweep: make all entries right of `col` zero in this row.
    for (;;) {
      int nz = -1;
      for (int j = col + 1; j < h.cols; ++j)
        if (h.at(row, j) != 0) {
          nz = j;
          break;
        }
      if (h.at(row, col) == 0 && nz >= 0) {
        for (int i = 0; i < h.rows; ++i) std::swap(h.at(i, col), h.at(i, nz));
        for (int i = 0; i < u.rows; ++i) std::swap(u.at(i, col), u.at(i, nz));
        continue;
      }
      if (nz < 0) break;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(row, nz).get_mpz_t(),
                 h.at(row, col).get_mpz_t());
      for (int i = 0; i < h.rows; ++i) h.at(i, nz) -= q * h.at(i, col);
      for (int i = 0; i < u.rows; ++i) u.at(i, nz) -= q * u.at(i, col);
      if (h.at(row, nz) != 0) {
        for (int i = 0; i < h.rows; ++i) std::swap(h.at(i, col), h.at(i, nz));
        for (int i = 0; i < u.rows; ++i) std::swap(u.at(i, col), u.at(i, nz));
      }
    }
    if (h.at(row, col) != 0) {
      if (h.at(row, col) < 0) {
        for (int i = 0; i < h.rows; ++i) h.at(i, col) = -h.at(i, col);
        for (int i = 0; i < u.rows; ++i) u.at(i, col) = -u.at(i, col);
      }
      ++col;
    }
    ++row;
  }
  return {h, u};
}

std::vector<std::vector<Int>> right_kernel_integer(const IntMat& m) {
  auto [h, u] = hermite_normal_form_cols(m);
  std::vector<std::vector<Int>> basis;
  for (int j = 0; j < h.cols; ++j) {
    bool zero = true;
    for (int i = 0; i < h.rows; ++i)
      if (h.at(i, j) != 0) {
        zero = false;
        break;
      }
    if (!zero) continue;
    std::vector<Int> v(u.rows);
    for (int i = 0; i < u.rows; ++i) v[i] = u.at(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

IntMat random_unimodular(int n, int steps, const std::function<long()>& rnd) {
  IntMat u = IntMat::identity(n);
  for (int s = 0; s < steps; ++s) {
    int i = static_cast<int>(std::abs(rnd())) % n;
    int j = static_cast<int>(std::abs(rnd())) % n;
    if (i == j) {
      for (int k = 0; k < n; ++k) u.at(i, k) = -u.at(i, k);
      continue;
    }
    long f = rnd() % 3 - 1;
    if (f == 0) f = 1;
    for (int k = 0; k < n; ++k) u.at(i, k) += Int(f) * u.at(j, k);
  }
  return u;
}

}  // namespace adw
