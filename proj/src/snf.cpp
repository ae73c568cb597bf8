#include "atlas/snf.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace atlas {

IMat identity_imat(int n) {
  IMat m(n, std::vector<i64>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

namespace {
i64 checked_mul(i64 a, i64 b) {
  i128 p = (i128)a * b;
  if (p > INT64_MAX || p < INT64_MIN) throw std::overflow_error("integer matrix overflow");
  return (i64)p;
}
i64 checked_sub(i64 a, i64 b) {
  i128 d = (i128)a - b;
  if (d > INT64_MAX || d < INT64_MIN) throw std::overflow_error("integer matrix overflow");
  return (i64)d;
}
}  // namespace

IMat imat_mul(const IMat& a, const IMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IMat c(n, std::vector<i64>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) {
      i128 s = 0;
      for (size_t t = 0; t < k; ++t) s += (i128)a[i][t] * b[t][j];
      if (s > INT64_MAX || s < INT64_MIN) throw std::overflow_error("integer matrix overflow");
      c[i][j] = (i64)s;
    }
  return c;
}

SmithResult smith_normal_form(const IMat& a0) {
  int n = (int)a0.size();
  int m = n ? (int)a0[0].size() : 0;
  IMat a = a0;
  IMat u = identity_imat(n), v = identity_imat(m);

  auto row_op = [&](int i, int j, i64 q) {
    // row i -= q * row j
    for (int t = 0; t < m; ++t) a[i][t] = checked_sub(a[i][t], checked_mul(q, a[j][t]));
    for (int t = 0; t < n; ++t) u[i][t] = checked_sub(u[i][t], checked_mul(q, u[j][t]));
  };
  auto col_op = [&](int i, int j, i64 q) {
    // col i -= q * col j
    for (int t = 0; t < n; ++t) a[t][i] = checked_sub(a[t][i], checked_mul(q, a[t][j]));
    for (int t = 0; t < m; ++t) v[t][i] = checked_sub(v[t][i], checked_mul(q, v[t][j]));
  };
  auto row_swap = [&](int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto col_swap = [&](int i, int j) {
    for (int t = 0; t < n; ++t) std::swap(a[t][i], a[t][j]);
    for (int t = 0; t < m; ++t) std::swap(v[t][i], v[t][j]);
  };

  int r = std::min(n, m);
  for (int k = 0; k < r; ++k) {
    // find pivot: smallest nonzero |a[i][j]|, i,j >= k
    int pi = -1, pj = -1;
    i64 best = 0;
    for (int i = k; i < n; ++i)
      for (int j = k; j < m; ++j)
        if (a[i][j] != 0 && (pi < 0 || std::llabs(a[i][j]) < best)) {
          best = std::llabs(a[i][j]);
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    row_swap(k, pi);
    col_swap(k, pj);
    bool again = true;
    while (again) {
      again = false;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          i64 q = a[i][k] / a[k][k];
          row_op(i, k, q);
          if (a[i][k] != 0) {
            row_swap(k, i);
            again = true;
          }
        }
      for (int j = k + 1; j < m; ++j)
        if (a[k][j] != 0) {
          i64 q = a[k][j] / a[k][k];
          col_op(j, k, q);
          if (a[k][j] != 0) {
            col_swap(k, j);
            again = true;
          }
        }
    }
    // divisibility: make a[k][k] divide everything below-right
    bool redo = false;
    for (int i = k + 1; i < n && !redo; ++i)
      for (int j = k + 1; j < m && !redo; ++j)
        if (a[i][j] % a[k][k] != 0) {
          // add row i to row k and redo this pivot
          for (int t = 0; t < m; ++t) a[k][t] = checked_sub(a[k][t], checked_mul(-1, a[i][t]));
          for (int t = 0; t < n; ++t) u[k][t] = checked_sub(u[k][t], checked_mul(-1, u[i][t]));
          redo = true;
        }
    if (redo) --k;
  }
  // normalize signs
  for (int k = 0; k < r; ++k)
    if (a[k][k] < 0) {
      for (int t = 0; t < m; ++t) a[k][t] = -a[k][t];
      for (int t = 0; t < n; ++t) u[k][t] = -u[k][t];
    }
  return {u, v, a};
}

QMat qmat_from_imat(const IMat& a) {
  QMat q(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    q[i].resize(a[i].size());
    for (size_t j = 0; j < a[i].size(); ++j) q[i][j] = Rat(a[i][j]);
  }
  return q;
}

QMat qmat_inverse(const QMat& a0) {
  int n = (int)a0.size();
  QMat a = a0;
  QMat inv(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = Rat(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!a[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) throw std::domain_error("singular matrix");
    std::swap(a[c], a[p]);
    std::swap(inv[c], inv[p]);
    Rat d = a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] = a[c][j] / d;
      inv[c][j] = inv[c][j] / d;
    }
    for (int i = 0; i < n; ++i)
      if (i != c && !a[i][c].is_zero()) {
        Rat f = a[i][c];
        for (int j = 0; j < n; ++j) {
          a[i][j] = a[i][j] - f * a[c][j];
          inv[i][j] = inv[i][j] - f * inv[c][j];
        }
      }
  }
  return inv;
}

Rat qmat_det(QMat a) {
  int n = (int)a.size();
  Rat det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!a[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return Rat(0);
    if (p != c) {
      std::swap(a[c], a[p]);
      det = -det;
    }
    det = det * a[c][c];
    for (int i = c + 1; i < n; ++i)
      if (!a[i][c].is_zero()) {
        Rat f = a[i][c] / a[c][c];
        for (int j = c; j < n; ++j) a[i][j] = a[i][j] - f * a[c][j];
      }
  }
  return det;
}

Signature symmetric_signature(QMat a) {
  int n = (int)a.size();
  Signature s;
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    // pick a remaining index with nonzero diagonal, else fix one up
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && !a[i][i].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) {
      // all remaining diagonals zero: find off-diagonal nonzero pair
      int bi = -1, bj = -1;
      for (int i = 0; i < n && bi < 0; ++i)
        if (!done[i])
          for (int j = i + 1; j < n; ++j)
            if (!done[j] && !a[i][j].is_zero()) {
              bi = i;
              bj = j;
              break;
            }
      if (bi < 0) {
        for (int i = 0; i < n; ++i)
          if (!done[i]) s.zero++;
        return s;
      }
      // row/col i += row/col j makes diagonal nonzero: a_ii' = 2 a_ij
      for (int t = 0; t < n; ++t) a[bi][t] = a[bi][t] + a[bj][t];
      for (int t = 0; t < n; ++t) a[t][bi] = a[t][bi] + a[t][bj];
      p = bi;
    }
    done[p] = true;
    Rat d = a[p][p];
    if (d.num > 0)
      s.plus++;
    else
      s.minus++;
    // clear row/col p against remaining
    for (int i = 0; i < n; ++i)
      if (!done[i] && !a[i][p].is_zero()) {
        Rat f = a[i][p] / d;
        for (int t = 0; t < n; ++t) a[i][t] = a[i][t] - f * a[p][t];
        for (int t = 0; t < n; ++t) a[t][i] = a[t][i] - f * a[t][p];
      }
  }
  return s;
}

}  // namespace atlas
