#pragma once

// Smith normal form over Z with a transformation certificate U*M*V = D.
// U and V are unimodular; D is diagonal with d_i | d_{i+1} and d_i >= 0.

#include "pearl/bigint.hpp"
#include "pearl/matrix.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace pearl {

// Integer coefficient context; enough for Mat<BigInt> arithmetic helpers.
struct ZRing {
  using Elt = BigInt;
  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  Elt from_int(const BigInt& n) const { return n; }
  Elt add(const Elt& a, const Elt& b) const { return a + b; }
  Elt sub(const Elt& a, const Elt& b) const { return a - b; }
  Elt mul(const Elt& a, const Elt& b) const { return a * b; }
  Elt neg(const Elt& a) const { return -a; }
  bool is_zero(const Elt& a) const { return a == 0; }
  bool eq(const Elt& a, const Elt& b) const { return a == b; }
  std::string to_string(const Elt& a) const { return a.str(); }
};

struct SmithForm {
  std::vector<BigInt> diag;  // invariant factors, zeros trimmed
  Mat<BigInt> U, V;          // U*M*V = D
  int rank = 0;
};

namespace detail {

inline void smith_row_op(Mat<BigInt>& A, Mat<BigInt>& U, int dst, int src,
                         const BigInt& f) {
  for (int j = 0; j < A.cols; ++j) A.at(dst, j) += f * A.at(src, j);
  for (int j = 0; j < U.cols; ++j) U.at(dst, j) += f * U.at(src, j);
}

inline void smith_col_op(Mat<BigInt>& A, Mat<BigInt>& V, int dst, int src,
                         const BigInt& f) {
  for (int i = 0; i < A.rows; ++i) A.at(i, dst) += f * A.at(i, src);
  for (int i = 0; i < V.rows; ++i) V.at(i, dst) += f * V.at(i, src);
}

inline void smith_row_swap(Mat<BigInt>& A, Mat<BigInt>& U, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < A.cols; ++j) std::swap(A.at(a, j), A.at(b, j));
  for (int j = 0; j < U.cols; ++j) std::swap(U.at(a, j), U.at(b, j));
}

inline void smith_col_swap(Mat<BigInt>& A, Mat<BigInt>& V, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < A.rows; ++i) std::swap(A.at(i, a), A.at(i, b));
  for (int i = 0; i < V.rows; ++i) std::swap(V.at(i, a), V.at(i, b));
}

}  // namespace detail

inline SmithForm smith_normal_form(const Mat<BigInt>& M) {
  Mat<BigInt> A = M;
  Mat<BigInt> U = mat_identity(ZRing{}, M.rows);
  Mat<BigInt> V = mat_identity(ZRing{}, M.cols);
  int n = std::min(M.rows, M.cols);

  for (int t = 0; t < n; ++t) {
    // locate a nonzero pivot of minimal absolute value in the trailing block
    auto find_pivot = [&](int& pi, int& pj) {
      pi = -1;
      for (int i = t; i < A.rows; ++i)
        for (int j = t; j < A.cols; ++j) {
          if (A.at(i, j) == 0) continue;
          if (pi < 0 || big_abs(A.at(i, j)) < big_abs(A.at(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      return pi >= 0;
    };

    int pi, pj;
    if (!find_pivot(pi, pj)) break;
    detail::smith_row_swap(A, U, t, pi);
    detail::smith_col_swap(A, V, t, pj);

    for (;;) {
      bool dirty = false;
      for (int i = t + 1; i < A.rows; ++i) {
        if (A.at(i, t) == 0) continue;
        BigInt q = A.at(i, t) / A.at(t, t);
        detail::smith_row_op(A, U, i, t, -q);
        if (A.at(i, t) != 0) {  // remainder became the smaller pivot
          detail::smith_row_swap(A, U, t, i);
          dirty = true;
        }
      }
      for (int j = t + 1; j < A.cols; ++j) {
        if (A.at(t, j) == 0) continue;
        BigInt q = A.at(t, j) / A.at(t, t);
        detail::smith_col_op(A, V, j, t, -q);
        if (A.at(t, j) != 0) {
          detail::smith_col_swap(A, V, t, j);
          dirty = true;
        }
      }
      if (dirty) continue;

      // pivot must divide every remaining entry
      bool fixed = false;
      for (int i = t + 1; i < A.rows && !fixed; ++i)
        for (int j = t + 1; j < A.cols && !fixed; ++j)
          if (A.at(i, j) % A.at(t, t) != 0) {
            detail::smith_row_op(A, U, t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }

    if (A.at(t, t) < 0) {
      for (int j = 0; j < A.cols; ++j) A.at(t, j) = -A.at(t, j);
      for (int j = 0; j < U.cols; ++j) U.at(t, j) = -U.at(t, j);
    }
  }

  SmithForm S;
  S.U = U;
  S.V = V;
  for (int t = 0; t < n; ++t) {
    if (A.at(t, t) == 0) break;
    S.diag.push_back(A.at(t, t));
  }
  S.rank = static_cast<int>(S.diag.size());
  return S;
}

// Recomputes U*M*V and checks it is diagonal with the reported factors.
inline bool smith_certificate_ok(const Mat<BigInt>& M, const SmithForm& S) {
  ZRing Z;
  Mat<BigInt> D = mat_mul(Z, mat_mul(Z, S.U, M), S.V);
  for (int i = 0; i < D.rows; ++i)
    for (int j = 0; j < D.cols; ++j) {
      BigInt want = 0;
      if (i == j && i < static_cast<int>(S.diag.size())) want = S.diag[i];
      if (D.at(i, j) != want) return false;
    }
  return true;
}

}  // namespace pearl
