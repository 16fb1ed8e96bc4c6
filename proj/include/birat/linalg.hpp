#pragma once

#include <optional>
#include <vector>

#include "birat/ring.hpp"

namespace birat {

// ---------------------------------------------------------------------------
// Dense exact matrices over the coefficient field (Q or GF(p)).
// ---------------------------------------------------------------------------

struct QMatrix {
  int rows = 0, cols = 0;
  Field field;
  std::vector<mpq_class> a;

  QMatrix() = default;
  QMatrix(int r, int c, Field f = Field::rationals())
      : rows(r), cols(c), field(f), a(static_cast<size_t>(r) * c, 0) {}

  mpq_class& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const mpq_class& at(int r, int c) const {
    return a[static_cast<size_t>(r) * cols + c];
  }
};

// In-place reduced row echelon form; returns the pivot columns. Deterministic:
// pivots are the first nonzero entry scanning each column top-down.
inline std::vector<int> rref(QMatrix& m) {
  std::vector<int> pivots;
  const Field& F = m.field;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pr = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
    mpq_class inv = F.inv(m.at(r, c));
    for (int j = c; j < m.cols; ++j) m.at(r, j) = F.mul(m.at(r, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      mpq_class f = m.at(i, c);
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(QMatrix m) { return static_cast<int>(rref(m).size()); }

// Solve A x = b (any shape); std::nullopt when inconsistent.
inline std::optional<std::vector<mpq_class>> solve(const QMatrix& A,
                                                   const std::vector<mpq_class>& b) {
  QMatrix m(A.rows, A.cols + 1, A.field);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
    m.at(i, A.cols) = A.field.normalize(b[i]);
  }
  auto piv = rref(m);
  if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
  std::vector<mpq_class> x(A.cols, 0);
  for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = m.at(static_cast<int>(k), A.cols);
  return x;
}

inline std::optional<QMatrix> inverse(const QMatrix& A) {
  if (A.rows != A.cols) return std::nullopt;
  QMatrix m(A.rows, 2 * A.cols, A.field);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
    m.at(i, A.cols + i) = 1;
  }
  auto piv = rref(m);
  if (static_cast<int>(piv.size()) != A.rows) return std::nullopt;
  QMatrix inv(A.rows, A.cols, A.field);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) inv.at(i, j) = m.at(i, A.cols + j);
  return inv;
}

inline mpq_class determinant(QMatrix m) {
  if (m.rows != m.cols) throw HypothesisError("determinant of non-square matrix");
  const Field& F = m.field;
  mpq_class det = 1;
  for (int c = 0; c < m.cols; ++c) {
    int pr = -1;
    for (int i = c; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) return 0;
    if (pr != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, m.at(c, c));
    mpq_class inv = F.inv(m.at(c, c));
    for (int i = c + 1; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      mpq_class f = F.mul(m.at(i, c), inv);
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(c, j)));
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// Integer matrices: column-style Hermite normal form with transform,
// exact lattice solving, Bareiss determinant.
// ---------------------------------------------------------------------------

using ZMat = std::vector<std::vector<mpz_class>>;  // row-major

struct HnfResult {
  ZMat H;                      // A * U = H, column echelon
  ZMat U;                      // unimodular, cols x cols
  std::vector<int> pivot_row;  // per column of H; -1 for zero columns
};

inline ZMat z_identity(int n) {
  ZMat I(n, std::vector<mpz_class>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline HnfResult column_hnf(const ZMat& A) {
  HnfResult res;
  res.H = A;
  const int rows = static_cast<int>(A.size());
  const int cols = rows ? static_cast<int>(A[0].size()) : 0;
  res.U = z_identity(cols);
  res.pivot_row.assign(cols, -1);
  auto col_swap = [&](ZMat& M, int i, int j) {
    for (auto& row : M) std::swap(row[i], row[j]);
  };
  auto col_axpy = [&](ZMat& M, int dst, int src, const mpz_class& q) {
    // col_dst -= q * col_src
    for (auto& row : M) row[dst] -= q * row[src];
  };
  auto col_neg = [&](ZMat& M, int j) {
    for (auto& row : M) row[j] = -row[j];
  };
  int c = 0;
  for (int r = 0; r < rows && c < cols; ++r) {
    // clear row r to a single nonzero at column c (among columns >= c)
    while (true) {
      int best = -1;
      int nonzero = 0;
      for (int j = c; j < cols; ++j) {
        if (res.H[r][j] != 0) {
          ++nonzero;
          if (best < 0 || cmp(abs(res.H[r][j]), abs(res.H[r][best])) < 0)
            best = j;
        }
      }
      if (nonzero == 0) break;
      if (best != c) {
        col_swap(res.H, c, best);
        col_swap(res.U, c, best);
      }
      if (nonzero == 1) break;
      for (int j = c + 1; j < cols; ++j) {
        if (res.H[r][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), res.H[r][j].get_mpz_t(),
                   res.H[r][c].get_mpz_t());
        if (q != 0) {
          col_axpy(res.H, j, c, q);
          col_axpy(res.U, j, c, q);
        }
      }
    }
    if (res.H[r][c] == 0) continue;  // no pivot in this row
    if (res.H[r][c] < 0) {
      col_neg(res.H, c);
      col_neg(res.U, c);
    }
    // canonical: entries left of the pivot in its row reduced into [0, pivot)
    for (int j = 0; j < c; ++j) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), res.H[r][j].get_mpz_t(),
                 res.H[r][c].get_mpz_t());
      if (q != 0) {
        col_axpy(res.H, j, c, q);
        col_axpy(res.U, j, c, q);
      }
    }
    res.pivot_row[c] = r;
    ++c;
  }
  return res;
}

// Smallest-norm-free exact solve of A x = b over the integers (x need not be
// unique; the HNF pivot solution is returned). std::nullopt when unsolvable.
inline std::optional<std::vector<mpz_class>> solve_integer(
    const ZMat& A, const std::vector<mpz_class>& b) {
  const int rows = static_cast<int>(A.size());
  const int cols = rows ? static_cast<int>(A[0].size()) : 0;
  HnfResult h = column_hnf(A);
  std::vector<mpz_class> eta(cols, 0);
  // row -> pivot column
  std::vector<int> pivot_col(rows, -1);
  for (int j = 0; j < cols; ++j)
    if (h.pivot_row[j] >= 0) pivot_col[h.pivot_row[j]] = j;
  for (int r = 0; r < rows; ++r) {
    mpz_class res = b[r];
    for (int j = 0; j < cols; ++j)
      if (h.H[r][j] != 0 && eta[j] != 0) res -= h.H[r][j] * eta[j];
    int pc = pivot_col[r];
    if (pc < 0) {
      if (res != 0) return std::nullopt;
      continue;
    }
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), res.get_mpz_t(),
                h.H[r][pc].get_mpz_t());
    if (rem != 0) return std::nullopt;
    eta[pc] = q;
  }
  std::vector<mpz_class> x(cols, 0);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < cols; ++j)
      if (eta[j] != 0) x[i] += h.U[i][j] * eta[j];
  // paranoia: verify
  for (int r = 0; r < rows; ++r) {
    mpz_class acc = 0;
    for (int j = 0; j < cols; ++j) acc += A[r][j] * x[j];
    if (acc != b[r]) throw InconsistencyError("integer solve verification failed");
  }
  return x;
}

// Bareiss fraction-free determinant.
inline mpz_class determinant_integer(ZMat m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  if (static_cast<int>(m[0].size()) != n)
    throw HypothesisError("determinant of non-square matrix");
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : mpz_class(-m[n - 1][n - 1]);
}

inline int rank_rational(const ZMat& A) {
  const int rows = static_cast<int>(A.size());
  const int cols = rows ? static_cast<int>(A[0].size()) : 0;
  QMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = mpq_class(A[i][j]);
  return rank(std::move(m));
}

}  // namespace birat
