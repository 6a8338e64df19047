#pragma once

// Quotient models of quantum cohomology for products of projective spaces,
// with the top power of each hyperplane class deformed by a unit weight:
//
//   H_j^(m_j + 1) = w_j * T^(2(m_j+1)/deg T) * 1      (Novikov retained)
//   H_j^(m_j + 1) = w_j * 1                           (T set to 1)
//
// The ring is free over the scalars with basis the monomials H^a,
// 0 <= a_j <= m_j, so products reduce to a unique normal form. On top of
// the ring arithmetic this header provides the multiplication-operator
// analysis (matrix, rank, determinant, prime-field eigenvalues), the
// dimension bookkeeping for the long exact sequence of a circle bundle,
// Poincare-dual classes of diagonal-degeneracy loci as complete homogeneous
// polynomials, and the integer consistency constraints that evaluation
// relations impose on the coefficient characteristic.
//
// Grading. Monomial H^a T^k has degree 2|a| + k * t_degree. Setting T = 1
// collapses the grading to Z / t_degree; t_degree must divide every
// relation drop 2(m_j + 1) so that the quotient stays graded. All matrix
// analyses are performed in the T-trivialised basis H^a; for an element
// homogeneous in the graded sense this matches the action on every graded
// piece at once, since multiplication by T is an isomorphism.
//
// Determinant convention: the basis is ordered graded-lex (total degree,
// then lexicographic exponent order), and the determinant is reported for
// that ordering. It is only canonical up to the sign of a basis
// permutation, so consumers needing a sign-free quantity take |det|.

#include "pearl/bigint.hpp"
#include "pearl/config.hpp"
#include "pearl/fields.hpp"
#include "pearl/matrix.hpp"
#include "pearl/poly.hpp"
#include "pearl/roots.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace pearl {

// ---- Ring description ----

template <class F>
struct QHRing {
  const F* K = nullptr;
  int N = 0;                          // number of projective factors
  std::vector<int> m;                 // factor j is P^(m[j])
  std::vector<typename F::Elt> w;     // weight in the top-power relation
  bool novikov = false;               // keep T explicitly, or set T = 1
  int t_degree = 2;                   // degree of T
  std::vector<int> tpow;              // T-exponent gained per reduction

  // Free rank over the scalars (with T retained, over the Laurent ring).
  long long rank() const {
    long long r = 1;
    for (int mj : m) r *= mj + 1;
    return r;
  }

  // 0 means Z-graded; otherwise degrees live in Z / modulus.
  int grading_modulus() const { return novikov ? 0 : t_degree; }
};

template <class F>
QHRing<F> make_qh_ring(const F& K, std::vector<int> dims,
                       std::vector<typename F::Elt> weights,
                       bool novikov = false, int t_degree = 2) {
  if (dims.empty()) throw PreconditionError("qh ring needs at least one factor");
  if (dims.size() != weights.size())
    throw PreconditionError("qh ring: one weight per factor required");
  if (t_degree < 1) throw PreconditionError("qh ring: T degree must be positive");
  QHRing<F> R;
  R.K = &K;
  R.N = static_cast<int>(dims.size());
  R.m = std::move(dims);
  R.w = std::move(weights);
  R.novikov = novikov;
  R.t_degree = t_degree;
  R.tpow.resize(R.N);
  for (int j = 0; j < R.N; ++j) {
    if (R.m[j] < 1) throw PreconditionError("qh ring: factor dimension must be at least 1");
    int drop = 2 * (R.m[j] + 1);
    if (drop % t_degree != 0)
      throw PreconditionError("qh ring: T degree must divide every relation degree");
    R.tpow[j] = novikov ? drop / t_degree : 0;
  }
  return R;
}

// Weights of the standard boundary-deformed family: w_j is the product of
// the unit parameters over all other factors.
template <class F>
std::vector<typename F::Elt> deformed_weights(const F& K,
                                              const std::vector<typename F::Elt>& t) {
  for (const auto& tj : t)
    if (K.is_zero(tj)) throw PreconditionError("deformed weights need unit parameters");
  std::vector<typename F::Elt> w(t.size(), K.one());
  for (std::size_t j = 0; j < t.size(); ++j)
    for (std::size_t k = 0; k < t.size(); ++k)
      if (k != j) w[j] = K.mul(w[j], t[k]);
  return w;
}

// ---- Elements ----

// Key is (hyperplane exponents, T-power); values are nonzero scalars.
// Normal form keeps 0 <= a_j <= m_j; the T-power is identically zero in a
// T = 1 ring.
template <class F>
struct QHElt {
  using Key = std::pair<std::vector<int>, int>;
  std::map<Key, typename F::Elt> terms;

  bool is_zero() const { return terms.empty(); }
};

namespace detail {

template <class F>
void qh_accumulate(const F& K, QHElt<F>& e, const typename QHElt<F>::Key& key,
                   const typename F::Elt& c) {
  if (K.is_zero(c)) return;
  auto it = e.terms.find(key);
  if (it == e.terms.end()) {
    e.terms.emplace(key, c);
    return;
  }
  it->second = K.add(it->second, c);
  if (K.is_zero(it->second)) e.terms.erase(it);
}

// Reduce one monomial to normal form and add it to the output. Each step
// lowers the total hyperplane exponent, so this terminates.
template <class F>
void qh_reduce_into(const QHRing<F>& R, QHElt<F>& out, std::vector<int> a,
                    int tp, typename F::Elt c) {
  const F& K = *R.K;
  for (int j = 0; j < R.N; ++j) {
    while (a[j] > R.m[j]) {
      a[j] -= R.m[j] + 1;
      c = K.mul(c, R.w[j]);
      tp += R.tpow[j];
      if (K.is_zero(c)) return;
    }
  }
  qh_accumulate(K, out, {std::move(a), tp}, c);
}

}  // namespace detail

template <class F>
QHElt<F> qh_zero(const QHRing<F>&) {
  return {};
}

// General term constructor; exponents may exceed the box and are reduced.
template <class F>
QHElt<F> qh_term(const QHRing<F>& R, std::vector<int> exps, int t_power,
                 typename F::Elt c) {
  if (static_cast<int>(exps.size()) != R.N)
    throw PreconditionError("qh term: one exponent per factor required");
  for (int aj : exps)
    if (aj < 0) throw PreconditionError("qh term: exponents must be nonnegative");
  if (!R.novikov && t_power != 0)
    throw PreconditionError("qh term: T-power in a ring with T = 1");
  QHElt<F> e;
  detail::qh_reduce_into(R, e, std::move(exps), t_power, std::move(c));
  return e;
}

template <class F>
QHElt<F> qh_const(const QHRing<F>& R, typename F::Elt c) {
  return qh_term(R, std::vector<int>(R.N, 0), 0, std::move(c));
}

template <class F>
QHElt<F> qh_one(const QHRing<F>& R) {
  return qh_const(R, R.K->one());
}

// j is 1-based.
template <class F>
QHElt<F> qh_hyperplane(const QHRing<F>& R, int j) {
  if (j < 1 || j > R.N) throw PreconditionError("qh hyperplane: factor index out of range");
  std::vector<int> a(R.N, 0);
  a[j - 1] = 1;
  return qh_term(R, std::move(a), 0, R.K->one());
}

// T^k times the unit; requires the Novikov variable to be retained.
template <class F>
QHElt<F> qh_novikov(const QHRing<F>& R, int k) {
  if (!R.novikov) throw PreconditionError("qh novikov: ring has T = 1");
  return qh_term(R, std::vector<int>(R.N, 0), k, R.K->one());
}

template <class F>
QHElt<F> qh_add(const QHRing<F>& R, const QHElt<F>& a, const QHElt<F>& b) {
  QHElt<F> r = a;
  for (const auto& [key, c] : b.terms) detail::qh_accumulate(*R.K, r, key, c);
  return r;
}

template <class F>
QHElt<F> qh_neg(const QHRing<F>& R, const QHElt<F>& a) {
  QHElt<F> r = a;
  for (auto& [key, c] : r.terms) c = R.K->neg(c);
  return r;
}

template <class F>
QHElt<F> qh_sub(const QHRing<F>& R, const QHElt<F>& a, const QHElt<F>& b) {
  return qh_add(R, a, qh_neg(R, b));
}

template <class F>
QHElt<F> qh_scale(const QHRing<F>& R, const QHElt<F>& a, const typename F::Elt& s) {
  QHElt<F> r;
  for (const auto& [key, c] : a.terms) detail::qh_accumulate(*R.K, r, key, R.K->mul(c, s));
  return r;
}

template <class F>
bool qh_eq(const QHRing<F>& R, const QHElt<F>& a, const QHElt<F>& b) {
  return qh_sub(R, a, b).is_zero();
}

template <class F>
QHElt<F> qh_multiply(const QHRing<F>& R, const QHElt<F>& a, const QHElt<F>& b) {
  const F& K = *R.K;
  QHElt<F> r;
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      std::vector<int> e = ka.first;
      for (int j = 0; j < R.N; ++j) e[j] += kb.first[j];
      detail::qh_reduce_into(R, r, std::move(e), ka.second + kb.second, K.mul(ca, cb));
    }
  return r;
}

template <class F>
QHElt<F> qh_pow(const QHRing<F>& R, const QHElt<F>& a, int n) {
  if (n < 0) throw PreconditionError("qh pow: nonnegative exponent required");
  QHElt<F> r = qh_one(R);
  for (int i = 0; i < n; ++i) r = qh_multiply(R, r, a);
  return r;
}

template <class F>
std::string qh_to_string(const QHRing<F>& R, const QHElt<F>& a) {
  if (a.terms.empty()) return "0";
  const F& K = *R.K;
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : a.terms) {
    if (!first) os << " + ";
    first = false;
    os << K.to_string(c);
    for (int j = 0; j < R.N; ++j) {
      if (key.first[j] == 0) continue;
      os << "*H" << j + 1;
      if (key.first[j] > 1) os << "^" << key.first[j];
    }
    if (key.second != 0) {
      os << "*T";
      if (key.second != 1) os << "^" << key.second;
    }
  }
  return os.str();
}

// ---- Monomial basis ----

// All exponent boxes, ordered by total degree then lexicographically.
template <class F>
std::vector<std::vector<int>> qh_basis(const QHRing<F>& R) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(R.N, 0);
  for (;;) {
    out.push_back(a);
    int j = R.N - 1;
    while (j >= 0 && a[j] == R.m[j]) a[j--] = 0;
    if (j < 0) break;
    ++a[j];
  }
  std::sort(out.begin(), out.end(), [](const std::vector<int>& x, const std::vector<int>& y) {
    int sx = std::accumulate(x.begin(), x.end(), 0);
    int sy = std::accumulate(y.begin(), y.end(), 0);
    if (sx != sy) return sx < sy;
    return x < y;
  });
  return out;
}

// ---- Multiplication operators ----

template <class F>
struct MultOperator {
  Mat<typename F::Elt> matrix;   // columns are images of basis monomials
  int rank = 0;
  typename F::Elt det;
  bool invertible = false;
  std::vector<std::uint64_t> roots;  // prime-field eigenvalues; else empty
};

// Matrix of multiplication by alpha in the T-trivialised graded-lex basis.
// Eigenvalues are reported only for prime-field scalars, and only those
// lying in the field itself.
template <class F>
MultOperator<F> mult_operator(const QHRing<F>& R, const QHElt<F>& alpha) {
  const F& K = *R.K;
  auto basis = qh_basis(R);
  const int D = static_cast<int>(basis.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < D; ++i) index.emplace(basis[i], i);

  MultOperator<F> out;
  out.matrix = mat_zero(K, D, D);
  for (int col = 0; col < D; ++col) {
    QHElt<F> img = qh_multiply(R, alpha, qh_term(R, basis[col], 0, K.one()));
    for (const auto& [key, c] : img.terms) {
      // T = 1 collapse: rows are indexed by the hyperplane exponents alone.
      int row = index.at(key.first);
      out.matrix.at(row, col) = K.add(out.matrix.at(row, col), c);
    }
  }
  out.rank = mat_rank(K, out.matrix);
  out.det = mat_det(K, out.matrix);
  out.invertible = !K.is_zero(out.det);
  if constexpr (std::is_same_v<F, PrimeField>) {
    Poly<PrimeField> cp = poly_from(K, charpoly(K, out.matrix));
    out.roots = roots_in_prime_field(K, cp);
  }
  return out;
}

// ---- Circle-bundle long exact sequence ----

// Per-degree dimensions of the third term in the long exact sequence
//
//   ... -> QH^(k-2) --*e--> QH^k -> HF^k -> QH^(k-1) --*e--> ...
//
// so dim HF^k = dim coker(*e into degree k) + dim ker(*e out of degree
// k-1). Everything is T-periodic with period deg T, so one period of
// degrees k = 0, ..., deg T - 1 is returned. Requires e homogeneous of
// degree 2 modulo the T-grading.
template <class F>
std::vector<int> gysin_hf_dims(const QHRing<F>& R, const QHElt<F>& ehat) {
  const F& K = *R.K;
  const int t = R.t_degree;
  for (const auto& [key, c] : ehat.terms) {
    (void)c;
    int deg = 2 * std::accumulate(key.first.begin(), key.first.end(), 0) + t * key.second;
    if (((deg - 2) % t + t) % t != 0)
      throw PreconditionError("gysin dims: class must be homogeneous of degree 2");
  }

  auto basis = qh_basis(R);
  // Partition the T-trivialised basis by degree residue mod deg T.
  std::vector<std::vector<std::vector<int>>> piece(t);
  std::vector<std::map<std::vector<int>, int>> index(t);
  for (const auto& a : basis) {
    int r = (2 * std::accumulate(a.begin(), a.end(), 0)) % t;
    index[r].emplace(a, static_cast<int>(piece[r].size()));
    piece[r].push_back(a);
  }

  // rankr[r] = rank of *e from residue r to residue r+2.
  std::vector<int> rankr(t, 0), dimr(t, 0);
  for (int r = 0; r < t; ++r) dimr[r] = static_cast<int>(piece[r].size());
  for (int r = 0; r < t; ++r) {
    if (piece[r].empty()) continue;
    int s = (r + 2) % t;
    Mat<typename F::Elt> M = mat_zero(K, dimr[s], dimr[r]);
    for (int col = 0; col < dimr[r]; ++col) {
      QHElt<F> img = qh_multiply(R, ehat, qh_term(R, piece[r][col], 0, K.one()));
      for (const auto& [key, c] : img.terms) {
        int row = index[s].at(key.first);
        M.at(row, col) = K.add(M.at(row, col), c);
      }
    }
    rankr[r] = mat_rank(K, M);
  }

  std::vector<int> dims(t, 0);
  for (int k = 0; k < t; ++k) {
    int into = ((k - 2) % t + t) % t;    // source residue of the map into degree k
    int outof = ((k - 1) % t + t) % t;   // source residue of the map out of degree k-1
    dims[k] = (dimr[k % t] - rankr[into]) + (dimr[outof] - rankr[outof]);
  }
  return dims;
}

// ---- Poincare-dual classes of degeneracy loci ----

// Complete homogeneous polynomial of degree N - |I| in the hyperplane
// classes indexed by I (1-based), reduced to normal form. The full subset
// gives the unit; the empty subset is rejected.
template <class F>
QHElt<F> pd_class(const QHRing<F>& R, const std::vector<int>& I) {
  if (I.empty()) throw PreconditionError("pd class: subset must be nonempty");
  std::vector<bool> seen(R.N, false);
  for (int i : I) {
    if (i < 1 || i > R.N) throw PreconditionError("pd class: index out of range");
    if (seen[i - 1]) throw PreconditionError("pd class: duplicate index");
    seen[i - 1] = true;
  }
  const int k = R.N - static_cast<int>(I.size());
  // h_d accumulation over the chosen variables, one variable at a time.
  std::vector<QHElt<F>> h(k + 1, qh_zero(R));
  h[0] = qh_one(R);
  for (int i : I) {
    QHElt<F> x = qh_hyperplane(R, i);
    for (int d = 1; d <= k; ++d) h[d] = qh_add(R, h[d], qh_multiply(R, x, h[d - 1]));
  }
  return h[k];
}

// ---- Characteristic constraints from evaluation relations ----

// One asserted relation: evaluation of coeff * H_factor equals unit times
// the Floer unit. factor is 1-based.
struct EvalRelation {
  int factor = 1;
  long long coeff = 1;
  long long unit = 1;
};

// The top-power law of one factor with integer weight: H^order = lambda.
struct IntFactorLaw {
  int order = 2;        // m + 1
  long long lambda = 1;
};

struct ObstructionReport {
  BigInt forced;                          // nonnegative generator of the constraint
  std::vector<long long> prime_divisors;  // characteristics where consistency survives
  bool all_excluded = false;              // forced == 1
  bool no_constraint = false;             // forced == 0

  std::string verdict() const {
    if (all_excluded) return "all characteristics excluded";
    if (no_constraint) return "no constraint";
    std::ostringstream os;
    os << "characteristic must divide " << forced.str();
    return os.str();
  }
};

namespace detail {

inline BigInt ipow(BigInt b, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace detail

// Raising coeff * CO(H_j) = unit to the power order and applying the ring
// law H_j^order = lambda forces coeff^order * lambda - unit^order to vanish
// in the coefficient ring. Pairs of relations on the same factor force the
// cross-difference as well, by linearity of the evaluation map. The report
// combines all forced integers by gcd.
inline ObstructionReport characteristic_obstruction(
    const std::vector<IntFactorLaw>& laws, const std::vector<EvalRelation>& rels) {
  if (rels.empty()) throw PreconditionError("obstruction: at least one relation required");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    const auto& r = rels[i];
    if (r.factor < 1 || r.factor > static_cast<int>(laws.size()))
      throw PreconditionError("obstruction: factor index out of range");
    if (laws[r.factor - 1].order < 2)
      throw PreconditionError("obstruction: factor law needs order at least 2");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& s = rels[j];
      if (s.factor == r.factor && s.coeff == r.coeff && s.unit != r.unit)
        throw PreconditionError("obstruction: contradictory units on one class");
    }
  }

  BigInt g = 0;
  for (const auto& r : rels) {
    const auto& law = laws[r.factor - 1];
    BigInt forced = detail::ipow(BigInt(r.coeff), law.order) * BigInt(law.lambda) -
                    detail::ipow(BigInt(r.unit), law.order);
    g = big_gcd(g, big_abs(forced));
  }
  for (std::size_t i = 0; i < rels.size(); ++i)
    for (std::size_t j = i + 1; j < rels.size(); ++j) {
      if (rels[i].factor != rels[j].factor) continue;
      BigInt cross = BigInt(rels[i].coeff) * BigInt(rels[j].unit) -
                     BigInt(rels[j].coeff) * BigInt(rels[i].unit);
      g = big_gcd(g, big_abs(cross));
    }

  ObstructionReport out;
  out.forced = g;
  if (g == 0) {
    out.no_constraint = true;
  } else if (g == 1) {
    out.all_excluded = true;
  } else {
    if (g > BigInt(std::int64_t(1) << 62))
      throw BoundError("obstruction: forced integer too large to factor");
    for (auto [p, e] : factorize(static_cast<std::int64_t>(g))) {
      (void)e;
      out.prime_divisors.push_back(p);
    }
  }
  return out;
}

// A degree-2 class nilpotent of order equal to the odd-prime part bound
// cannot evaluate to something whose large power is invertible. The
// nilpotence hypothesis is available exactly when N is not a power of p,
// and then the Floer unit is forced to vanish.
inline bool narrow_by_nilpotence(long long N, long long p) {
  if (N < 2) throw PreconditionError("nilpotence: N must be at least 2");
  if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
    throw PreconditionError("nilpotence: p must be prime");
  long long q = N;
  while (q % p == 0) q /= p;
  return q != 1;
}

}  // namespace pearl
