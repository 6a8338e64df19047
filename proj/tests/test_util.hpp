#pragma once

// Shared helpers for the test binaries: deterministic randomness and
// independent brute-force oracles (minor-expansion rank, Laplace
// determinants, gcd-of-minors invariant factors).

#include "pearl/bigint.hpp"
#include "pearl/fields.hpp"
#include "pearl/matrix.hpp"
#include "pearl/poly.hpp"
#include "pearl/smith.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace testutil {

using namespace pearl;

inline std::mt19937_64 make_rng(uint64_t salt) {
  return std::mt19937_64(0x9e3779b97f4a7c15ull ^ salt);
}

inline int rand_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

inline BigRat rand_rat(std::mt19937_64& rng) {
  int num = rand_int(rng, -9, 9);
  int den = rand_int(rng, 1, 9);
  return BigRat(num, den);
}

template <class F>
Mat<typename F::Elt> rand_mat(const F& K, std::mt19937_64& rng, int r, int c,
                              int lo = -5, int hi = 5) {
  Mat<typename F::Elt> M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M.at(i, j) = K.from_int(rand_int(rng, lo, hi));
  return M;
}

// Laplace expansion along the first row; exponential, oracle use only.
template <class F>
typename F::Elt laplace_det(const F& K, const Mat<typename F::Elt>& M) {
  int n = M.rows;
  if (n == 0) return K.one();
  if (n == 1) return M.at(0, 0);
  typename F::Elt acc = K.zero();
  for (int j = 0; j < n; ++j) {
    if (K.is_zero(M.at(0, j))) continue;
    Mat<typename F::Elt> sub(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        sub.at(i - 1, cc++) = M.at(i, c);
      }
    }
    auto term = K.mul(M.at(0, j), laplace_det(K, sub));
    acc = (j % 2 == 0) ? K.add(acc, term) : K.sub(acc, term);
  }
  return acc;
}

// Rank as the largest k admitting a nonzero k x k minor.
template <class F>
int minor_rank(const F& K, const Mat<typename F::Elt>& M) {
  int best = 0;
  int n = std::min(M.rows, M.cols);
  // enumerate all row and column subsets of each size k
  for (int k = 1; k <= n; ++k) {
    bool found = false;
    std::vector<int> rows(k), cols(k);
    std::function<void(int, int)> pick_rows = [&](int pos, int start) {
      if (found) return;
      if (pos == k) {
        std::function<void(int, int)> pick_cols = [&](int cpos, int cstart) {
          if (found) return;
          if (cpos == k) {
            Mat<typename F::Elt> sub(k, k);
            for (int i = 0; i < k; ++i)
              for (int j = 0; j < k; ++j) sub.at(i, j) = M.at(rows[i], cols[j]);
            if (!K.is_zero(laplace_det(K, sub))) found = true;
            return;
          }
          for (int v = cstart; v < M.cols; ++v) {
            cols[cpos] = v;
            pick_cols(cpos + 1, v + 1);
          }
        };
        pick_cols(0, 0);
        return;
      }
      for (int v = start; v < M.rows; ++v) {
        rows[pos] = v;
        pick_rows(pos + 1, v + 1);
      }
    };
    pick_rows(0, 0);
    if (found)
      best = k;
    else
      break;
  }
  return best;
}

// gcd of all k x k minors of an integer matrix; 0 when every minor vanishes.
inline BigInt minor_gcd(const Mat<BigInt>& M, int k) {
  BigInt g = 0;
  int n = k;
  std::vector<int> rows(n), cols(n);
  ZRing Z;
  std::function<void(int, int)> pick_rows = [&](int pos, int start) {
    if (pos == n) {
      std::function<void(int, int)> pick_cols = [&](int cpos, int cstart) {
        if (cpos == n) {
          Mat<BigInt> sub(n, n);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sub.at(i, j) = M.at(rows[i], cols[j]);
          g = big_gcd(g, laplace_det(Z, sub));
          return;
        }
        for (int v = cstart; v < M.cols; ++v) {
          cols[cpos] = v;
          pick_cols(cpos + 1, v + 1);
        }
      };
      pick_cols(0, 0);
      return;
    }
    for (int v = start; v < M.rows; ++v) {
      rows[pos] = v;
      pick_rows(pos + 1, v + 1);
    }
  };
  pick_rows(0, 0);
  return big_abs(g);
}

// F_{p^2} = F_p[s]/(s^2 - nr) for a fixed non-residue nr; p odd. Test-only
// context used to check that dimension outputs are stable under scalar
// extension.
struct QuadExtField {
  using Elt = std::array<std::uint64_t, 2>;  // c0 + c1*s
  PrimeField base;
  std::uint64_t nr;

  explicit QuadExtField(std::uint64_t p) : base(p), nr(0) {
    if (p == 2) throw PreconditionError("QuadExtField: p must be odd");
    for (std::uint64_t a = 2; a < p; ++a) {
      if (base.pow(a, (p - 1) / 2) != 1) {
        nr = a;
        break;
      }
    }
    if (nr == 0) throw PreconditionError("QuadExtField: no non-residue found");
  }

  Elt zero() const { return {0, 0}; }
  Elt one() const { return {base.one(), 0}; }
  Elt from_int(const BigInt& n) const { return {base.from_int(n), 0}; }
  Elt from_base(std::uint64_t a) const { return {a, 0}; }
  Elt gen() const { return {0, base.one()}; }
  Elt add(const Elt& a, const Elt& b) const {
    return {base.add(a[0], b[0]), base.add(a[1], b[1])};
  }
  Elt sub(const Elt& a, const Elt& b) const {
    return {base.sub(a[0], b[0]), base.sub(a[1], b[1])};
  }
  Elt mul(const Elt& a, const Elt& b) const {
    return {base.add(base.mul(a[0], b[0]), base.mul(nr, base.mul(a[1], b[1]))),
            base.add(base.mul(a[0], b[1]), base.mul(a[1], b[0]))};
  }
  Elt neg(const Elt& a) const { return {base.neg(a[0]), base.neg(a[1])}; }
  Elt inv(const Elt& a) const {
    // (c0 - c1 s) / (c0^2 - nr c1^2); the norm vanishes only at zero
    auto norm = base.sub(base.mul(a[0], a[0]), base.mul(nr, base.mul(a[1], a[1])));
    if (norm == 0) throw PreconditionError("QuadExtField: division by zero");
    auto ni = base.inv(norm);
    return {base.mul(a[0], ni), base.mul(base.neg(a[1]), ni)};
  }
  bool is_zero(const Elt& a) const { return a[0] == 0 && a[1] == 0; }
  bool eq(const Elt& a, const Elt& b) const { return a == b; }
  std::int64_t characteristic() const { return base.characteristic(); }
  std::string to_string(const Elt& a) const {
    return std::to_string(a[0]) + "+" + std::to_string(a[1]) + "s mod " +
           std::to_string(base.p);
  }
};

// det(xI - M) by Laplace expansion over the polynomial ring; oracle for the
// Hessenberg characteristic polynomial.
template <class F>
Poly<F> charpoly_oracle(const F& K, const Mat<typename F::Elt>& M) {
  int n = M.rows;
  std::vector<std::vector<Poly<F>>> A(n, std::vector<Poly<F>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly<F> e = poly_from(K, {K.neg(M.at(i, j))});
      if (i == j) e = poly_add(K, e, poly_x_pow(K, 1));
      A[i][j] = e;
    }
  std::function<Poly<F>(std::vector<std::vector<Poly<F>>>&)> det =
      [&](std::vector<std::vector<Poly<F>>>& B) -> Poly<F> {
    int m = static_cast<int>(B.size());
    if (m == 1) return B[0][0];
    Poly<F> acc;  // zero
    for (int j = 0; j < m; ++j) {
      std::vector<std::vector<Poly<F>>> sub(m - 1, std::vector<Poly<F>>(m - 1));
      for (int i = 1; i < m; ++i) {
        int cc = 0;
        for (int c = 0; c < m; ++c) {
          if (c == j) continue;
          sub[i - 1][cc++] = B[i][c];
        }
      }
      Poly<F> term = poly_mul(K, B[0][j], det(sub));
      if (j % 2 == 1) term = poly_scale(K, term, K.neg(K.one()));
      acc = poly_add(K, acc, term);
    }
    return acc;
  };
  return det(A);
}

}  // namespace testutil
