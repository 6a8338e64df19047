#pragma once

// Dense matrices over a field context, with the row-space toolkit used by the
// spectral-sequence engine: rref, rank/kernel, membership functionals, sums,
// intersections, preimages, and quotient coordinates. Subspaces are row-basis
// matrices; a linear map D sends the row vector x to x*D.

#include "pearl/bigint.hpp"

#include <functional>
#include <vector>

namespace pearl {

template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  Mat(int r, int c, T fill) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}
  T& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const T& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

template <class F>
Mat<typename F::Elt> mat_zero(const F& K, int r, int c) {
  return Mat<typename F::Elt>(r, c, K.zero());
}

template <class F>
Mat<typename F::Elt> mat_identity(const F& K, int n) {
  auto m = mat_zero(K, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = K.one();
  return m;
}

template <class T>
Mat<T> mat_transpose(const Mat<T>& m) {
  Mat<T> t;
  t.rows = m.cols;
  t.cols = m.rows;
  t.a.resize(m.a.size());
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) t.a[static_cast<std::size_t>(c) * t.cols + r] = m.at(r, c);
  return t;
}

template <class T>
Mat<T> mat_vstack(const Mat<T>& a, const Mat<T>& b) {
  if (a.rows == 0) return b;
  if (b.rows == 0) return a;
  if (a.cols != b.cols) throw std::logic_error("mat_vstack: column mismatch");
  Mat<T> r = a;
  r.rows = a.rows + b.rows;
  r.a.insert(r.a.end(), b.a.begin(), b.a.end());
  return r;
}

template <class F>
Mat<typename F::Elt> mat_mul(const F& K, const Mat<typename F::Elt>& a,
                             const Mat<typename F::Elt>& b) {
  if (a.cols != b.rows) throw std::logic_error("mat_mul: shape mismatch");
  auto r = mat_zero(K, a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (K.is_zero(a.at(i, k))) continue;
      for (int j = 0; j < b.cols; ++j)
        r.at(i, j) = K.add(r.at(i, j), K.mul(a.at(i, k), b.at(k, j)));
    }
  return r;
}

template <class F>
bool mat_eq(const F& K, const Mat<typename F::Elt>& a, const Mat<typename F::Elt>& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (std::size_t i = 0; i < a.a.size(); ++i)
    if (!K.eq(a.a[i], b.a[i])) return false;
  return true;
}

// Reduced row echelon form. Pivots on the first nonzero entry in column
// order; zero rows are dropped. Returns the canonical row-space basis and
// records pivot columns.
template <class F>
Mat<typename F::Elt> rref(const F& K, Mat<typename F::Elt> m,
                          std::vector<int>* pivots_out = nullptr) {
  int r = 0;
  std::vector<int> pivots;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (!K.is_zero(m.at(i, c))) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    auto s = K.inv(m.at(r, c));
    for (int j = c; j < m.cols; ++j) m.at(r, j) = K.mul(m.at(r, j), s);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || K.is_zero(m.at(i, c))) continue;
      auto f = m.at(i, c);
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = K.sub(m.at(i, j), K.mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  m.rows = r;
  m.a.resize(static_cast<std::size_t>(r) * m.cols);
  if (pivots_out) *pivots_out = pivots;
  return m;
}

struct RankKernel_tag {};

template <class F>
struct RankKernel {
  int rank = 0;
  Mat<typename F::Elt> kernel;  // rows are a basis of {x : M x^T = 0}, x indexed by columns of M
};

// Rank and a right-kernel basis of M (vectors x with M.x = 0, x of length
// M.cols). rank + kernel rows = column count.
template <class F>
RankKernel<F> rank_and_kernel(const F& K, const Mat<typename F::Elt>& m) {
  std::vector<int> pivots;
  auto R = rref(K, m, &pivots);
  RankKernel<F> out;
  out.rank = R.rows;
  std::vector<bool> is_piv(m.cols, false);
  for (int c : pivots) is_piv[c] = true;
  int nfree = m.cols - out.rank;
  out.kernel = mat_zero(K, nfree, m.cols);
  int k = 0;
  for (int c = 0; c < m.cols; ++c) {
    if (is_piv[c]) continue;
    out.kernel.at(k, c) = K.one();
    for (int i = 0; i < R.rows; ++i)
      out.kernel.at(k, pivots[i]) = K.neg(R.at(i, c));
    ++k;
  }
  return out;
}

template <class F>
int mat_rank(const F& K, const Mat<typename F::Elt>& m) {
  return rref(K, m).rows;
}

// Determinant by Gaussian elimination with row swaps.
template <class F>
typename F::Elt mat_det(const F& K, Mat<typename F::Elt> m) {
  if (m.rows != m.cols) throw PreconditionError("mat_det: square matrix required");
  auto det = K.one();
  for (int c = 0; c < m.cols; ++c) {
    int piv = -1;
    for (int i = c; i < m.rows; ++i)
      if (!K.is_zero(m.at(i, c))) { piv = i; break; }
    if (piv < 0) return K.zero();
    if (piv != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(c, j));
      det = K.neg(det);
    }
    det = K.mul(det, m.at(c, c));
    auto s = K.inv(m.at(c, c));
    for (int i = c + 1; i < m.rows; ++i) {
      if (K.is_zero(m.at(i, c))) continue;
      auto f = K.mul(m.at(i, c), s);
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = K.sub(m.at(i, j), K.mul(f, m.at(c, j)));
    }
  }
  return det;
}

// Characteristic polynomial det(xI - M) via Hessenberg reduction; valid over
// any field. Returns coefficients c[0..n] with c[n] = 1.
template <class F>
std::vector<typename F::Elt> charpoly(const F& K, Mat<typename F::Elt> m) {
  if (m.rows != m.cols) throw PreconditionError("charpoly: square matrix required");
  int n = m.rows;
  // Reduce to upper Hessenberg form by similarity transformations.
  for (int c = 0; c + 2 < n; ++c) {
    int piv = -1;
    for (int i = c + 1; i < n; ++i)
      if (!K.is_zero(m.at(i, c))) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != c + 1) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c + 1, j));
      for (int i = 0; i < n; ++i) std::swap(m.at(i, piv), m.at(i, c + 1));
    }
    auto inv = K.inv(m.at(c + 1, c));
    for (int i = c + 2; i < n; ++i) {
      if (K.is_zero(m.at(i, c))) continue;
      auto f = K.mul(m.at(i, c), inv);
      for (int j = 0; j < n; ++j) m.at(i, j) = K.sub(m.at(i, j), K.mul(f, m.at(c + 1, j)));
      for (int j = 0; j < n; ++j) m.at(j, c + 1) = K.add(m.at(j, c + 1), K.mul(f, m.at(j, i)));
    }
  }
  // p_k = charpoly of leading k x k block, by the Hessenberg recurrence.
  std::vector<std::vector<typename F::Elt>> p(n + 1);
  p[0] = {K.one()};
  for (int k = 1; k <= n; ++k) {
    // p_k(x) = (x - m[k-1][k-1]) p_{k-1}(x) - sum_{i<k-1} m[i][k-1] (prod subdiag) p_i(x)
    std::vector<typename F::Elt> pk(k + 1, K.zero());
    for (int i = 0; i < k; ++i) {
      pk[i + 1] = K.add(pk[i + 1], p[k - 1][i]);
      pk[i] = K.sub(pk[i], K.mul(m.at(k - 1, k - 1), p[k - 1][i]));
    }
    auto prod = K.one();
    for (int i = k - 2; i >= 0; --i) {
      prod = K.mul(prod, m.at(i + 1, i));
      auto coef = K.mul(m.at(i, k - 1), prod);
      if (K.is_zero(coef)) continue;
      for (int j = 0; j <= i; ++j) pk[j] = K.sub(pk[j], K.mul(coef, p[i][j]));
    }
    p[k] = std::move(pk);
  }
  return p[n];
}

// ---- Row-space (subspace) toolkit ----

// Basis of {x : x * A = 0} as rows.
template <class F>
Mat<typename F::Elt> left_kernel(const F& K, const Mat<typename F::Elt>& A) {
  return rank_and_kernel(K, mat_transpose(A)).kernel;
}

// Membership functionals of the row space of W: y lies in rowspace(W) iff
// y * C^T = 0 where C's rows are the returned functionals.
template <class F>
Mat<typename F::Elt> membership_conditions(const F& K, const Mat<typename F::Elt>& W, int ambient) {
  std::vector<int> piv;
  auto R = rref(K, W, &piv);
  std::vector<bool> is_piv(ambient, false);
  for (int c : piv) is_piv[c] = true;
  auto C = mat_zero(K, ambient - R.rows, ambient);
  int k = 0;
  for (int c = 0; c < ambient; ++c) {
    if (is_piv[c]) continue;
    C.at(k, c) = K.one();
    for (int i = 0; i < R.rows; ++i) C.at(k, piv[i]) = K.neg(R.at(i, c));
    ++k;
  }
  return C;
}

template <class F>
bool in_rowspace(const F& K, const Mat<typename F::Elt>& W, const Mat<typename F::Elt>& y) {
  auto C = membership_conditions(K, W, y.cols);
  auto t = mat_mul(K, y, mat_transpose(C));
  for (const auto& v : t.a)
    if (!K.is_zero(v)) return false;
  return true;
}

template <class F>
Mat<typename F::Elt> sum_rows(const F& K, const Mat<typename F::Elt>& A,
                              const Mat<typename F::Elt>& B) {
  return rref(K, mat_vstack(A, B));
}

template <class F>
Mat<typename F::Elt> intersect_rows(const F& K, const Mat<typename F::Elt>& A,
                                    const Mat<typename F::Elt>& B, int ambient) {
  auto CA = membership_conditions(K, A, ambient);
  auto CB = membership_conditions(K, B, ambient);
  auto C = mat_vstack(CA, CB);
  // x with x * C^T = 0
  return rref(K, left_kernel(K, mat_transpose(C)));
}

template <class F>
Mat<typename F::Elt> intersect_rows(const F& K, const Mat<typename F::Elt>& A,
                                    const Mat<typename F::Elt>& B) {
  if (A.cols != B.cols) throw std::logic_error("intersect_rows: ambient mismatch");
  return intersect_rows(K, A, B, A.cols);
}

// {x : x * D in rowspace(W)}; D maps ambient_dom -> ambient_cod row vectors.
template <class F>
Mat<typename F::Elt> preimage_rows(const F& K, const Mat<typename F::Elt>& D,
                                   const Mat<typename F::Elt>& W) {
  auto C = membership_conditions(K, W, D.cols);
  auto M = mat_mul(K, D, mat_transpose(C));
  return rref(K, left_kernel(K, M));
}

// Extend basis: rows of 'inside' must span a subspace of rowspace(superset).
// Returns rows extending 'inside' to a basis of rowspace(superset); returned
// rows lie in rowspace(superset).
template <class F>
Mat<typename F::Elt> complement_in(const F& K, const Mat<typename F::Elt>& inside,
                                   const Mat<typename F::Elt>& superset) {
  auto acc = inside;
  auto comp = mat_zero(K, 0, superset.cols);
  comp.cols = superset.cols;
  int base_rank = mat_rank(K, acc);
  for (int i = 0; i < superset.rows; ++i) {
    Mat<typename F::Elt> row = mat_zero(K, 1, superset.cols);
    for (int j = 0; j < superset.cols; ++j) row.at(0, j) = superset.at(i, j);
    auto test = mat_vstack(acc, row);
    if (mat_rank(K, test) > base_rank) {
      acc = std::move(test);
      ++base_rank;
      comp = mat_vstack(comp, row);
    }
  }
  return comp;
}

// Horizontal concatenation [A | B].
template <class T>
Mat<T> mat_hstack(const Mat<T>& a, const Mat<T>& b) {
  if (a.rows != b.rows) throw std::logic_error("mat_hstack: row mismatch");
  Mat<T> r(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols; ++j) r.at(i, a.cols + j) = b.at(i, j);
  }
  return r;
}

// Inverse by row reduction on [M | I]; throws on a singular matrix.
template <class F>
Mat<typename F::Elt> mat_inverse(const F& K, const Mat<typename F::Elt>& m) {
  if (m.rows != m.cols) throw std::logic_error("mat_inverse: square matrix required");
  auto aug = mat_hstack(m, mat_identity(K, m.rows));
  std::vector<int> piv;
  auto R = rref(K, aug, &piv);
  if (static_cast<int>(piv.size()) != m.rows || (m.rows > 0 && piv.back() >= m.rows))
    throw std::logic_error("mat_inverse: singular matrix");
  Mat<typename F::Elt> inv(m.rows, m.cols, K.zero());
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) inv.at(i, j) = R.at(i, m.cols + j);
  return inv;
}

// Coordinates of y in the given row basis; throws if y is outside the span.
template <class F>
std::vector<typename F::Elt> coords_in(const F& K, const Mat<typename F::Elt>& basis,
                                       const Mat<typename F::Elt>& y) {
  // Solve c * basis = y by rref on [basis^T | y^T].
  auto Bt = mat_transpose(basis);
  auto aug = mat_zero(K, Bt.rows, Bt.cols + 1);
  for (int i = 0; i < Bt.rows; ++i) {
    for (int j = 0; j < Bt.cols; ++j) aug.at(i, j) = Bt.at(i, j);
    aug.at(i, Bt.cols) = y.at(0, i);
  }
  std::vector<int> piv;
  auto R = rref(K, aug, &piv);
  std::vector<typename F::Elt> c(basis.rows, K.zero());
  for (int i = 0; i < R.rows; ++i) {
    if (piv[i] == Bt.cols)
      throw std::logic_error("coords_in: vector outside the span");
    c[piv[i]] = R.at(i, Bt.cols);
  }
  return c;
}

}  // namespace pearl
