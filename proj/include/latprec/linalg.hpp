#pragma once

// Small exact linear-algebra helpers on dense rational / integer matrices.
// Everything here is desk-scale (N <= 15); plain Gaussian elimination over
// mpq is exact and fast enough.

#include <numeric>
#include <vector>

#include "latprec/rational.hpp"

namespace latprec {

using RatMat = std::vector<std::vector<Rat>>;
using RatVec = std::vector<Rat>;
using IntVec = std::vector<long long>;
using IntMat = std::vector<std::vector<long long>>;

inline RatMat rat_zeros(int r, int c) {
  return RatMat(static_cast<size_t>(r), RatVec(static_cast<size_t>(c), Rat(0)));
}

inline RatMat rat_identity(int n) {
  RatMat m = rat_zeros(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RatMat rat_mul(const RatMat& a, const RatMat& b) {
  int r = static_cast<int>(a.size());
  int k = static_cast<int>(b.size());
  int c = static_cast<int>(b[0].size());
  RatMat out = rat_zeros(r, c);
  for (int i = 0; i < r; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

inline RatMat rat_transpose(const RatMat& a) {
  int r = static_cast<int>(a.size());
  int c = static_cast<int>(a[0].size());
  RatMat out = rat_zeros(c, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) out[j][i] = a[i][j];
  return out;
}

inline Rat rat_det(RatMat a) {
  int n = static_cast<int>(a.size());
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) { piv = r; break; }
    if (piv < 0) return Rat(0);
    if (piv != col) { std::swap(a[piv], a[col]); det = -det; }
    det *= a[col][col];
    Rat inv = 1 / a[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rat f = a[r][col] * inv;
      for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

inline int rat_rank(RatMat a) {
  if (a.empty()) return 0;
  int rows = static_cast<int>(a.size());
  int cols = static_cast<int>(a[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    Rat inv = 1 / a[rank][col];
    for (int r = rank + 1; r < rows; ++r) {
      if (a[r][col] == 0) continue;
      Rat f = a[r][col] * inv;
      for (int j = col; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Congruence Z^T A Z with integer Z, exact.
inline RatMat rat_congruence(const RatMat& a, const IntMat& z) {
  int n = static_cast<int>(a.size());
  RatMat zr = rat_zeros(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) zr[i][j] = rat_of(z[i][j]);
  return rat_mul(rat_transpose(zr), rat_mul(a, zr));
}

inline Int int_det(const IntMat& m) {
  int n = static_cast<int>(m.size());
  RatMat a = rat_zeros(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = rat_of(m[i][j]);
  Rat d = rat_det(a);
  return d.get_num();  // determinant of an integer matrix is an integer
}

// Inverse of a matrix with det = +-1; entries stay integral.
inline IntMat unimodular_inverse(const IntMat& m) {
  int n = static_cast<int>(m.size());
  RatMat a = rat_zeros(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = rat_of(m[i][j]);
    a[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) { piv = r; break; }
    if (piv < 0) throw NumericalError("unimodular_inverse: singular matrix");
    std::swap(a[piv], a[col]);
    Rat inv = 1 / a[col][col];
    for (int j = 0; j < 2 * n; ++j) a[col][j] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  IntMat out(static_cast<size_t>(n), IntVec(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat q = a[i][n + j];
      if (q.get_den() != 1) throw NumericalError("unimodular_inverse: non-integer result");
      out[i][j] = static_cast<long long>(q.get_num().get_si());
    }
  return out;
}

inline IntMat int_mul(const IntMat& a, const IntMat& b) {
  int r = static_cast<int>(a.size());
  int k = static_cast<int>(b.size());
  int c = static_cast<int>(b[0].size());
  IntMat out(static_cast<size_t>(r), IntVec(static_cast<size_t>(c), 0));
  for (int i = 0; i < r; ++i)
    for (int t = 0; t < k; ++t)
      for (int j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
  return out;
}

// gcd over all k x k minors of an N x k integer matrix (columns are vectors).
// Equals 1 iff the columns span a primitive sublattice, i.e. extend to a basis.
inline Int minor_gcd(const IntMat& cols_matrix, int k) {
  int n = static_cast<int>(cols_matrix.size());
  std::vector<int> rows(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) rows[static_cast<size_t>(i)] = i;
  Int g(0);
  while (true) {
    RatMat sub = rat_zeros(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        sub[i][j] = rat_of(cols_matrix[rows[static_cast<size_t>(i)]][j]);
    Int d = rat_det(sub).get_num();
    g = gcd(g, d);
    if (g == 1) return g;
    // next row combination
    int idx = k - 1;
    while (idx >= 0 && rows[static_cast<size_t>(idx)] == n - k + idx) --idx;
    if (idx < 0) break;
    ++rows[static_cast<size_t>(idx)];
    for (int j = idx + 1; j < k; ++j)
      rows[static_cast<size_t>(j)] = rows[static_cast<size_t>(j - 1)] + 1;
  }
  return g;
}

}  // namespace latprec
