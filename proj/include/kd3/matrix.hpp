#pragma once

#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kd3/checked.hpp"

// Exact integer matrices and Smith normal form. No floating point.

namespace kd3 {

struct IntegerMatrix {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntegerMatrix() = default;
  IntegerMatrix(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}

  Int& at(int i, int j) { return a[(size_t)i * cols + j]; }
  Int at(int i, int j) const { return a[(size_t)i * cols + j]; }

  static IntegerMatrix identity(int n) {
    IntegerMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  bool is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }
  bool operator==(const IntegerMatrix&) const = default;
};

inline IntegerMatrix matmul(const IntegerMatrix& x, const IntegerMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul shape");
  IntegerMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        r.at(i, j) =
            checked_add(r.at(i, j), checked_mul(x.at(i, k), y.at(k, j)));
    }
  return r;
}

struct SmithForm {
  std::vector<Int> divisors;  // d1 | d2 | ... | dr, all positive
  int rank = 0;
  std::optional<IntegerMatrix> left, right;  // left * A * right = diag
};

// Standard elimination by smallest pivot with divisibility fix-up.
inline SmithForm smith_normal_form(const IntegerMatrix& input,
                                   bool want_transforms = false) {
  IntegerMatrix A = input;
  int m = A.rows, n = A.cols;
  IntegerMatrix U = IntegerMatrix::identity(m);
  IntegerMatrix V = IntegerMatrix::identity(n);

  auto row_swap = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < n; ++k) std::swap(A.at(i, k), A.at(j, k));
    for (int k = 0; k < m; ++k) std::swap(U.at(i, k), U.at(j, k));
  };
  auto col_swap = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < m; ++k) std::swap(A.at(k, i), A.at(k, j));
    for (int k = 0; k < n; ++k) std::swap(V.at(k, i), V.at(k, j));
  };
  auto row_add = [&](int dst, int src, Int q) {  // row dst += q * row src
    for (int k = 0; k < n; ++k)
      A.at(dst, k) = checked_add(A.at(dst, k), checked_mul(q, A.at(src, k)));
    for (int k = 0; k < m; ++k)
      U.at(dst, k) = checked_add(U.at(dst, k), checked_mul(q, U.at(src, k)));
  };
  auto col_add = [&](int dst, int src, Int q) {
    for (int k = 0; k < m; ++k)
      A.at(k, dst) = checked_add(A.at(k, dst), checked_mul(q, A.at(k, src)));
    for (int k = 0; k < n; ++k)
      V.at(k, dst) = checked_add(V.at(k, dst), checked_mul(q, V.at(k, src)));
  };
  auto row_negate = [&](int i) {
    for (int k = 0; k < n; ++k) A.at(i, k) = checked_neg(A.at(i, k));
    for (int k = 0; k < m; ++k) U.at(i, k) = checked_neg(U.at(i, k));
  };

  int t = 0;
  while (t < m && t < n) {
    // locate smallest nonzero entry in the trailing submatrix
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (A.at(i, j) != 0 &&
            (pi < 0 || std::abs(A.at(i, j)) < std::abs(A.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (A.at(i, t) == 0) continue;
        Int q = A.at(i, t) / A.at(t, t);
        row_add(i, t, checked_neg(q));
        if (A.at(i, t) != 0) {  // remainder becomes the smaller pivot
          row_swap(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (A.at(t, j) == 0) continue;
        Int q = A.at(t, j) / A.at(t, t);
        col_add(j, t, checked_neg(q));
        if (A.at(t, j) != 0) {
          col_swap(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the rest of the submatrix
      for (int i = t + 1; i < m && clean; ++i)
        for (int j = t + 1; j < n && clean; ++j)
          if (A.at(i, j) % A.at(t, t) != 0) {
            row_add(t, i, 1);
            clean = false;
          }
    }
    if (A.at(t, t) < 0) row_negate(t);
    ++t;
  }

  SmithForm s;
  s.rank = t;
  for (int i = 0; i < t; ++i) s.divisors.push_back(A.at(i, i));
  if (want_transforms) {
    s.left = U;
    s.right = V;
  }
  return s;
}

// Linear independence over the 2-element field.
inline bool check_basis_mod2(const std::vector<std::vector<int>>& classes) {
  size_t k = classes.size();
  for (auto& v : classes)
    if (v.size() != k) throw std::invalid_argument("dimension mismatch");
  std::vector<unsigned long long> rows;
  if (k > 64) throw std::invalid_argument("dimension too large");
  for (auto& v : classes) {
    unsigned long long bits = 0;
    for (size_t j = 0; j < k; ++j)
      if (v[j] & 1) bits |= 1ull << j;
    rows.push_back(bits);
  }
  size_t rank = 0;
  for (size_t j = 0; j < k; ++j) {
    size_t piv = rank;
    while (piv < rows.size() && !(rows[piv] >> j & 1)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != rank && (rows[i] >> j & 1)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank == k;
}

// Unimodularity: the vectors form a Z-basis iff det = +-1.
inline bool check_basis_integral(const std::vector<std::vector<Int>>& classes) {
  size_t k = classes.size();
  for (auto& v : classes)
    if (v.size() != k) throw std::invalid_argument("dimension mismatch");
  IntegerMatrix A((int)k, (int)k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) A.at((int)i, (int)j) = classes[i][j];
  SmithForm s = smith_normal_form(A);
  if (s.rank != (int)k) return false;
  for (Int d : s.divisors)
    if (d != 1) return false;
  return true;
}

// Pairing matrix [c_i] . [Sigma_j]; the spheres match the 3-handles
// exactly when it is the Kronecker delta.
inline bool meridian_pairing_check(const IntegerMatrix& P) {
  if (P.rows != P.cols) throw std::invalid_argument("non-square pairing");
  return P.is_identity();
}

}  // namespace kd3
