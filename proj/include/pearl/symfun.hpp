#pragma once
// Symmetric-function evaluators and the weight-vector constraint analysis.
//
// Three layers share this header. Scalar evaluators compute e_k, h_k, p_k at
// concrete field elements by coefficient recursion. Formal subset
// constructors extend the range versions from quotient.hpp to arbitrary
// variable subsets. On top of both sit the weight-vector classifiers: the
// wideness test (all e_k vanish below the top degree), the two-sided ideal
// equivalence between the subset relation system and the triangular
// elementary system, and the congruence classifier for signatures of
// plus/minus-one weight splits in positive characteristic.
//
// Ideal memberships are certified over the integers, degree by degree, via
// lattice echelon forms. An integral certificate specializes to every
// characteristic at once, which is what the classifier consumers need.

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pearl/bigint.hpp"
#include "pearl/config.hpp"
#include "pearl/cyclotomic.hpp"
#include "pearl/gring.hpp"
#include "pearl/quotient.hpp"
#include "pearl/smith.hpp"
#include "pearl/sparse.hpp"

namespace pearl {

// ---------------------------------------------------------------------------
// scalar evaluators

// e_k(xs): coefficient of z^k in prod_j (1 + x_j z).
template <class F>
typename F::Elt sym_e(const F& K, int k,
                      const std::vector<typename F::Elt>& xs) {
  if (k < 0) throw PreconditionError("sym_e: index must be nonnegative");
  require_degree_within(k, "elementary symmetric evaluation");
  const int n = static_cast<int>(xs.size());
  if (k > n) return K.zero();
  std::vector<typename F::Elt> c(k + 1, K.zero());
  c[0] = K.one();
  for (int j = 0; j < n; ++j)
    for (int i = std::min(k, j + 1); i >= 1; --i)
      c[i] = K.add(c[i], K.mul(xs[j], c[i - 1]));
  return c[k];
}

// h_k(xs): coefficient of z^k in prod_j 1/(1 - x_j z).
template <class F>
typename F::Elt sym_h(const F& K, int k,
                      const std::vector<typename F::Elt>& xs) {
  if (k < 0) throw PreconditionError("sym_h: index must be nonnegative");
  require_degree_within(k, "complete symmetric evaluation");
  if (k == 0) return K.one();
  if (xs.empty()) return K.zero();
  std::vector<typename F::Elt> c(k + 1, K.zero());
  c[0] = K.one();
  for (const auto& x : xs)
    for (int i = 1; i <= k; ++i) c[i] = K.add(c[i], K.mul(x, c[i - 1]));
  return c[k];
}

// p_k(xs) = sum_j x_j^k; p_0 counts the variables.
template <class F>
typename F::Elt sym_p(const F& K, int k,
                      const std::vector<typename F::Elt>& xs) {
  if (k < 0) throw PreconditionError("sym_p: index must be nonnegative");
  require_degree_within(k, "power sum evaluation");
  if (k == 0) return K.from_int(BigInt(static_cast<long long>(xs.size())));
  auto s = K.zero();
  for (const auto& x : xs) {
    auto pw = x;
    for (int i = 1; i < k; ++i) pw = K.mul(pw, x);
    s = K.add(s, pw);
  }
  return s;
}

// ---------------------------------------------------------------------------
// formal subset constructors

namespace detail {

inline void check_subset(const RingDesc& R, const std::vector<int>& vars,
                         const char* what) {
  std::vector<int> s = vars;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= R.m)
      throw PreconditionError(std::string(what) + ": variable index out of range");
    if (i > 0 && s[i] == s[i - 1])
      throw PreconditionError(std::string(what) + ": repeated variable index");
  }
}

template <class F>
GrElt<F> gr_var(const F& K, const RingDesc& R, int j) {
  ExpVec e(R.m, 0);
  e[j] = 1;
  return gr_term(K, R, e, K.one());
}

}  // namespace detail

// e_k of the chosen variables, as a polynomial.
template <class F>
GrElt<F> gr_elementary_subset(const F& K, const RingDesc& R, int k,
                              const std::vector<int>& vars) {
  if (k < 0) throw PreconditionError("gr_elementary_subset: negative index");
  detail::check_subset(R, vars, "gr_elementary_subset");
  if (k > static_cast<int>(vars.size())) return gr_zero(K);
  std::vector<GrElt<F>> c(k + 1, gr_zero(K));
  c[0] = gr_one(K, R);
  int seen = 0;
  for (int j : vars) {
    ++seen;
    auto x = detail::gr_var(K, R, j);
    for (int i = std::min(k, seen); i >= 1; --i)
      c[i] = gr_add(K, c[i], gr_mul(K, R, x, c[i - 1]));
  }
  return c[k];
}

// h_k of the chosen variables, as a polynomial.
template <class F>
GrElt<F> gr_complete_subset(const F& K, const RingDesc& R, int k,
                            const std::vector<int>& vars) {
  if (k < 0) throw PreconditionError("gr_complete_subset: negative index");
  detail::check_subset(R, vars, "gr_complete_subset");
  if (k == 0) return gr_one(K, R);
  if (vars.empty()) return gr_zero(K);
  std::vector<GrElt<F>> c(k + 1, gr_zero(K));
  c[0] = gr_one(K, R);
  for (int j : vars) {
    auto x = detail::gr_var(K, R, j);
    for (int i = 1; i <= k; ++i)
      c[i] = gr_add(K, c[i], gr_mul(K, R, x, c[i - 1]));
  }
  return c[k];
}

// ---------------------------------------------------------------------------
// integral ideal membership, one degree at a time

// Degree-d slice of the ideal generated by homogeneous integer polynomials:
// the lattice spanned by all monomial multiples landing in degree d.
// Membership certifies integral coefficients, so a positive answer
// specializes to every coefficient ring.
class ZIdealSlice {
 public:
  ZIdealSlice(const RingDesc& R, const std::vector<GrElt<ZRing>>& gens,
              long long d)
      : R_(R), d_(d) {
    auto mons = monomials_of_degree(R, d);
    std::sort(mons.begin(), mons.end(),
              [](const ExpVec& a, const ExpVec& b) { return a > b; });
    for (int c = 0; c < static_cast<int>(mons.size()); ++c)
      index_.emplace(mons[c], c);
    std::vector<LatticeEchelon::Row> rows;
    for (const auto& g : gens) {
      long long dg = 0;
      if (!gr_homogeneous(R, g, &dg))
        throw PreconditionError("ideal slice: generators must be homogeneous");
      if (g.is_zero() || dg > d) continue;
      for (const auto& m : monomials_of_degree(R, d - dg)) {
        LatticeEchelon::Row row;
        for (const auto& [e, coef] : g.terms) {
          ExpVec prod(R.m);
          for (int j = 0; j < R.m; ++j) prod[j] = e[j] + m[j];
          row[index_.at(prod)] = coef;
        }
        rows.push_back(std::move(row));
      }
    }
    // unclaimed-lead rows first, as in the quotient engine
    std::vector<const LatticeEchelon::Row*> deferred;
    for (const auto& row : rows) {
      if (row.empty()) continue;
      if (ech_.has_pivot(row.begin()->first))
        deferred.push_back(&row);
      else
        ech_.insert(row);
    }
    for (const auto* row : deferred) ech_.insert(*row);
  }

  bool contains(const GrElt<ZRing>& f) const {
    if (f.is_zero()) return true;
    long long df = 0;
    if (!gr_homogeneous(R_, f, &df) || df != d_)
      throw PreconditionError("ideal slice: element has the wrong degree");
    LatticeEchelon::Row row;
    for (const auto& [e, coef] : f.terms) row[index_.at(e)] = coef;
    return ech_.contains(std::move(row));
  }

  int rank() const { return ech_.rank(); }

 private:
  RingDesc R_;
  long long d_;
  std::map<ExpVec, int> index_;
  LatticeEchelon ech_;
};

// ---------------------------------------------------------------------------
// the subset-relation / triangular-system equivalence

namespace detail {

struct EtaRing {
  RingDesc R;
  int N;
  ZRing Z;
  // variables 0..N-1 are eta_1..eta_N, variable N is the barycentre etabar
  GrElt<ZRing> etabar;
  std::vector<int> all_eta;

  explicit EtaRing(int N_) : N(N_) {
    std::vector<int> degs(N + 1, 1);
    std::vector<std::string> names;
    for (int j = 1; j <= N; ++j) names.push_back("eta" + std::to_string(j));
    names.push_back("etabar");
    R = build_ring_polynomial(degs, std::move(names));
    etabar = gr_var(Z, R, N);
    all_eta.resize(N);
    std::iota(all_eta.begin(), all_eta.end(), 0);
  }

  // e_1(eta) - etabar, then e_k(eta) for 2 <= k <= N-1
  std::vector<GrElt<ZRing>> triangular() const {
    std::vector<GrElt<ZRing>> tri;
    tri.push_back(gr_sub(Z, gr_elementary_subset(Z, R, 1, all_eta), etabar));
    for (int k = 2; k <= N - 1; ++k)
      tri.push_back(gr_elementary_subset(Z, R, k, all_eta));
    return tri;
  }

  // prod over the given eta indices of (etabar - eta_j)
  GrElt<ZRing> complement_product(const std::vector<int>& out) const {
    auto prod = gr_one(Z, R);
    for (int j : out)
      prod = gr_mul(Z, R, prod, gr_sub(Z, etabar, gr_var(Z, R, j)));
    return prod;
  }
};

}  // namespace detail

struct YogaReport {
  int N = 0;
  bool forward = false;   // every subset relation lies in the triangular ideal
  bool backward = false;  // every triangular relation lies in the subset ideal
  std::vector<std::vector<int>> failing_subsets;  // forward failures, 1-based
  std::vector<int> failing_degrees;               // backward failures
  bool ok() const { return forward && backward; }
};

// Two-sided ideal equivalence in Z[eta_1..eta_N, etabar], all variables of
// degree one. The subset system consists of
//     h_{N-|I|}(eta_I) - prod_{j notin I} (etabar - eta_j)
// over nonempty I (the full subset gives the trivial relation); the
// triangular system is e_1(eta) - etabar together with e_k(eta) for
// 2 <= k <= N-1. Each side must reduce to zero modulo the other, degree by
// degree, over the integers.
inline YogaReport yoga_check(int N) {
  if (N < 3 || N > 8)
    throw PreconditionError("yoga_check: N must lie in [3, 8]");
  detail::EtaRing E(N);
  auto tri = E.triangular();

  struct SubsetRel {
    std::vector<int> members;  // 1-based
    GrElt<ZRing> rel;
    int degree;
  };
  std::vector<SubsetRel> subs;
  for (unsigned mask = 1; mask + 1 < (1u << N); ++mask) {
    std::vector<int> in, out, members;
    for (int j = 0; j < N; ++j) {
      if ((mask >> j) & 1) {
        in.push_back(j);
        members.push_back(j + 1);
      } else {
        out.push_back(j);
      }
    }
    const int k = static_cast<int>(out.size());
    auto rel = gr_sub(E.Z, gr_complete_subset(E.Z, E.R, k, in),
                      E.complement_product(out));
    subs.push_back({std::move(members), std::move(rel), k});
  }

  YogaReport rep;
  rep.N = N;
  rep.forward = rep.backward = true;

  std::map<int, std::unique_ptr<ZIdealSlice>> slices;
  for (const auto& s : subs) {
    auto it = slices.find(s.degree);
    if (it == slices.end())
      it = slices
               .emplace(s.degree,
                        std::make_unique<ZIdealSlice>(E.R, tri, s.degree))
               .first;
    if (!it->second->contains(s.rel)) {
      rep.forward = false;
      rep.failing_subsets.push_back(s.members);
    }
  }

  // Backward pass. The chain takes one subset per codegree, I_j = {j+1..N};
  // its ideal sits inside the full subset ideal, so chain membership is a
  // sound certificate at a fraction of the echelon size. Only a chain miss
  // forces the full system.
  std::vector<GrElt<ZRing>> chain;
  for (int j = 1; j <= N - 1; ++j) {
    std::vector<int> in, out;
    for (int i = 0; i < N; ++i) (i >= j ? in : out).push_back(i);
    chain.push_back(gr_sub(E.Z, gr_complete_subset(E.Z, E.R, j, in),
                           E.complement_product(out)));
  }
  std::vector<GrElt<ZRing>> full;
  for (int k = 1; k <= N - 1; ++k) {
    bool member = ZIdealSlice(E.R, chain, k)
                      .contains(tri[static_cast<std::size_t>(k) - 1]);
    if (!member) {
      if (full.empty())
        for (auto& s : subs) full.push_back(s.rel);
      member = ZIdealSlice(E.R, full, k)
                   .contains(tri[static_cast<std::size_t>(k) - 1]);
    }
    if (!member) {
      rep.backward = false;
      rep.failing_degrees.push_back(k);
    }
  }
  return rep;
}

// prod_j (etabar - eta_j) - (-1)^N e_N(eta) lies in the triangular ideal:
// the product of the recentred weights is determined by the top elementary
// symmetric function alone.
inline bool char_corner_identity(int N) {
  if (N < 3 || N > 16)
    throw PreconditionError("char_corner_identity: N must lie in [3, 16]");
  detail::EtaRing E(N);
  auto prod = E.complement_product(E.all_eta);
  auto eN = gr_elementary_subset(E.Z, E.R, N, E.all_eta);
  auto target = gr_sub(E.Z, prod, N % 2 == 0 ? eN : gr_neg(E.Z, eN));
  // Membership certificate: expanding the product gives
  //   prod - (-1)^N e_N = -(e_1 - etabar) etabar^(N-1)
  //                       + sum_{k=2}^{N-1} (-1)^k e_k etabar^(N-k),
  // an explicit combination of the triangular generators. Verifying the
  // equation term by term proves membership without a lattice search.
  auto tri = E.triangular();
  auto cert = gr_neg(E.Z, gr_mul(E.Z, E.R, tri[0], gr_pow(E.Z, E.R, E.etabar, N - 1)));
  for (int k = 2; k <= N - 1; ++k) {
    auto piece = gr_mul(E.Z, E.R, tri[k - 1], gr_pow(E.Z, E.R, E.etabar, N - k));
    cert = gr_add(E.Z, cert, k % 2 == 0 ? piece : gr_neg(E.Z, piece));
  }
  return gr_eq(E.Z, target, cert);
}

// In Q(zeta_N), for every nonempty proper subset I and k = N - |I|:
//     h_k(zeta^i : i in I) = (-1)^k prod_{j notin I} zeta^j.
// The full subset is the empty statement. The sign is forced: substituting
// eta_j = zeta^j into the subset system puts the barycentre at zero, so the
// complementary weights are the negated roots.
inline bool sign_ambiguity_identity(int N) {
  if (N < 3 || N > 12)
    throw PreconditionError("sign_ambiguity_identity: N must lie in [3, 12]");
  CycField C(N);
  std::vector<CycField::Elt> zs;
  for (int i = 1; i <= N; ++i) zs.push_back(C.zeta(i));
  for (unsigned mask = 1; mask + 1 < (1u << N); ++mask) {
    std::vector<CycField::Elt> in;
    CycField::Elt rhs = C.one();
    for (int j = 0; j < N; ++j) {
      if ((mask >> j) & 1)
        in.push_back(zs[j]);
      else
        rhs = C.mul(rhs, zs[j]);
    }
    const int k = N - static_cast<int>(in.size());
    if (k % 2 != 0) rhs = C.neg(rhs);
    if (!C.eq(sym_h(C, k, in), rhs)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// weight vectors

// A tuple of N >= 3 invertible scalars.
template <class F>
struct WeightVector {
  int N = 0;
  std::vector<typename F::Elt> t;
};

template <class F>
WeightVector<F> make_weights(const F& K, std::vector<typename F::Elt> t) {
  if (t.size() < 3)
    throw PreconditionError("weight vector: need at least three weights");
  for (const auto& x : t)
    if (K.is_zero(x))
      throw PreconditionError("weight vector: weights must be invertible");
  return WeightVector<F>{static_cast<int>(t.size()), std::move(t)};
}

// Wide exactly when e_k(t) = 0 for every k = 1..N-1. Equivalently
// prod_j (z + t_j) = z^N + prod_j t_j. Failing indices are reported through
// the optional out-parameter.
template <class F>
bool wideness_test(const F& K, const WeightVector<F>& w,
                   std::vector<int>* failing = nullptr) {
  bool wide = true;
  for (int k = 1; k <= w.N - 1; ++k) {
    if (!K.is_zero(sym_e(K, k, w.t))) {
      wide = false;
      if (failing) failing->push_back(k);
    }
  }
  return wide;
}

// Inner: e_1..e_{N-1}(t) all vanish. Outer: recentre by e_1(t)/(N-1) and ask
// that e_2..e_{N-1} of the recentred tuple vanish. Inner membership implies
// outer. Needs N - 1 invertible in the field.
struct VarietyMembership {
  bool inner = false;
  bool outer = false;
  std::vector<int> inner_failing;
  std::vector<int> outer_failing;
};

template <class F>
VarietyMembership wide_variety_membership(const F& K,
                                          const WeightVector<F>& w) {
  auto nm1 = K.from_int(BigInt(w.N - 1));
  if (K.is_zero(nm1))
    throw PreconditionError(
        "wide variety membership: N - 1 must be invertible");
  VarietyMembership r;
  r.inner = r.outer = true;
  for (int k = 1; k <= w.N - 1; ++k) {
    if (!K.is_zero(sym_e(K, k, w.t))) {
      r.inner = false;
      r.inner_failing.push_back(k);
    }
  }
  auto shift = K.mul(sym_e(K, 1, w.t), K.inv(nm1));
  std::vector<typename F::Elt> centred;
  centred.reserve(w.t.size());
  for (const auto& x : w.t) centred.push_back(K.sub(x, shift));
  for (int k = 2; k <= w.N - 1; ++k) {
    if (!K.is_zero(sym_e(K, k, centred))) {
      r.outer = false;
      r.outer_failing.push_back(k);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// signature classifier

// For weights splitting as a ones and b minus-ones (a + b = N) over a field
// of characteristic p, decide whether the wideness congruences are
// satisfiable. Every congruence is evaluated and reported; the verdict is
// "excluded" as soon as one fails.
struct SignatureVerdict {
  int N = 0;
  long long p = 0;
  int a = 0;
  int b = 0;
  bool excluded = true;
  std::vector<std::string> witness;
  std::string verdict() const { return excluded ? "excluded" : "not-excluded"; }
};

namespace detail {

inline std::string first_failure(const std::vector<int>& bad) {
  if (bad.empty()) return std::string();
  return " [first failure k = " + std::to_string(bad.front()) + "]";
}

}  // namespace detail

inline SignatureVerdict signature_classifier(int N, long long p, int a,
                                             int b) {
  if (N < 3)
    throw PreconditionError("signature classifier: N must be at least 3");
  if (a < 0 || b < 0 || a + b != N)
    throw PreconditionError(
        "signature classifier: signature parts must be nonnegative and sum "
        "to N");
  if (p < 0 || (p > 0 && !is_prime_u64(static_cast<std::uint64_t>(p))))
    throw PreconditionError(
        "signature classifier: characteristic must be zero or a prime");

  SignatureVerdict v;
  v.N = N;
  v.p = p;
  v.a = a;
  v.b = b;

  if (p == 0) {
    // the congruence chain forces p | N, which no characteristic-zero field
    // can satisfy
    v.excluded = true;
    v.witness.push_back("N ≡ 0 mod p unsatisfiable");
    return v;
  }

  bool ok = true;
  auto note = [&](const std::string& what, bool holds) {
    v.witness.push_back(what + (holds ? ": holds" : ": fails"));
    ok = ok && holds;
  };
  const std::string ps = std::to_string(p);

  if (p == 2) {
    // both weight values coincide in characteristic 2, so the signature is
    // immaterial and only the binomial column of N matters
    v.witness.push_back("signature ignored in characteristic 2");
    note("N ≡ 0 (mod 2)", N % 2 == 0);
    std::vector<int> bad;
    for (int k = 2; k <= N - 1; ++k)
      if (binom_mod_lucas(N, k, 2) != 0) bad.push_back(k);
    note("C(N, k) ≡ 0 (mod 2) for k = 2..N-1" + detail::first_failure(bad),
         bad.empty());
    v.excluded = !ok;
    return v;
  }

  if (N == 3) {
    // only the quadratic congruence survives at N = 3: the square of the
    // signature gap must equal 6
    const long long gap = a - b;
    const long long lhs = ((gap * gap) % p + p) % p;
    note("(a - b)^2 ≡ 6 (mod " + ps + ")", lhs == 6 % p);
    v.excluded = !ok;
    return v;
  }

  if (a == 0 || b == 0) {
    note("N ≡ 0 (mod " + ps + ")", N % p == 0);
    std::vector<int> bad;
    for (int k = 2; k <= N - 1; ++k)
      if (binom_mod_lucas(N, k, p) != 0) bad.push_back(k);
    note("C(N, k) ≡ 0 (mod " + ps + ") for k = 2..N-1" +
             detail::first_failure(bad),
         bad.empty());
    v.excluded = !ok;
    return v;
  }

  note("N ≡ 0 (mod " + ps + ")", N % p == 0);
  note("a ≡ 0 (mod " + ps + ")", a % p == 0);
  note("b ≡ 0 (mod " + ps + ")", b % p == 0);
  std::vector<int> bad;
  for (int k = 2; k <= N - 1; ++k) {
    long long s = 0;
    for (int j = 0; j <= k; ++j) {
      const long long term =
          binom_mod_lucas(a, j, p) * binom_mod_lucas(b, k - j, p) % p;
      s = (j % 2 == 0) ? (s + term) % p : (s - term + p) % p;
    }
    if (s != 0) bad.push_back(k);
  }
  note("sum_j (-1)^j C(a, j) C(b, k - j) ≡ 0 (mod " + ps +
           ") for k = 2..N-1" + detail::first_failure(bad),
       bad.empty());
  v.excluded = !ok;
  return v;
}

// Closed-form comparator for sweeps. The congruence system is satisfiable
// exactly when: p = 2 and N is a power of two (any signature); p odd and
// N = p^r with a one-sided signature; p odd and N = 2 p^r with the balanced
// signature; or the exceptional pair N = 3, p = 5 with signature (2, 1) or
// (1, 2).
inline bool signature_closed_form(int N, long long p, int a, int b) {
  if (N < 3 || a < 0 || b < 0 || a + b != N) return false;
  if (p == 0) return false;
  if (p == 2) return is_power_of(N, 2);
  if (is_power_of(N, p) && (a == N || b == N)) return true;
  if (N % 2 == 0 && is_power_of(N / 2, p) && a == b) return true;
  if (N == 3 && p == 5 && a >= 1 && b >= 1) return true;
  return false;
}

}  // namespace pearl
