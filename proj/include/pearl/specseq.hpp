#pragma once

// Filtered cochain complexes with differentials split by column shift, and
// the associated spectral sequence computed by exact linear algebra.
//
// Conventions. A complex stores blocks C^{p,q} for columns p in a window
// [pmin, pmax]; the component d_j has bidegree (j, 1 - NL*j), so the total
// degree n = NL*p + q rises by exactly 1 under every component. All vectors
// are rows; a map D sends x to x*D. The "slab" of total degree n is the
// direct sum of the window blocks with NL*p + q = n, ordered by ascending p,
// and the filtration F^s keeps the blocks with p >= s.
//
// Page formula. E_r at column p is
//     (Z + F^{p+1}) / (B + F^{p+1}),
//   Z = {z in F^p : Dz in F^{p+r}},   B = D(F^{p-r+1}) ∩ F^p,
// realized concretely inside C^{p,q} by projecting Z and Z ∩ (B + F^{p+1})
// onto the leading block; the projection induces an isomorphism because
// Z ∩ F^{p+1} is contained in the projected denominator.
//
// Window correctness. Without an emptiness guarantee outside the window, the
// formula at column p only matches the ambient complex when
//     p - r + 1 >= pmin   and   p + r <= pmax + 1:
// the first keeps every potential boundary source inside the window, the
// second makes the cycle condition insensitive to unstored blocks above the
// window (they sit in F^{p+r} already). Columns failing this are not
// reported; if none remain the computation fails loudly.

#include "pearl/bigint.hpp"
#include "pearl/fields.hpp"
#include "pearl/gring.hpp"
#include "pearl/matrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pearl {

using PQ = std::pair<int, int>;

template <class F>
struct FilteredComplex {
  using Elt = typename F::Elt;

  F K;
  int NL = 2;
  int pmin = 0, pmax = 0;
  bool zero_outside = false;  // caller guarantees the complex vanishes outside the window
  std::map<PQ, int> dims;
  std::map<PQ, std::vector<std::string>> labels;         // optional
  std::map<int, std::map<PQ, Mat<Elt>>> diff;            // shift j -> blocks

  explicit FilteredComplex(const F& K_) : K(K_) {}

  int dim(int p, int q) const {
    auto it = dims.find({p, q});
    return it == dims.end() ? 0 : it->second;
  }

  const Mat<Elt>* block(int j, int p, int q) const {
    auto jt = diff.find(j);
    if (jt == diff.end()) return nullptr;
    auto it = jt->second.find({p, q});
    return it == jt->second.end() ? nullptr : &it->second;
  }

  int max_shift() const {
    int s = 0;
    for (const auto& [j, blocks] : diff)
      if (!blocks.empty()) s = std::max(s, j);
    return s;
  }
};

// Structural validation: window sanity, block shapes, and d o d = 0 checked
// per bidegree and per total column shift.
template <class F>
void validate_complex(const FilteredComplex<F>& C) {
  const F& K = C.K;
  if (C.NL < 1) throw PreconditionError("complex: NL must be positive");
  if (C.pmin > C.pmax) throw PreconditionError("complex: empty column window");
  for (const auto& [pq, n] : C.dims)
    if (n < 0 || pq.first < C.pmin || pq.first > C.pmax)
      throw PreconditionError("complex: block outside the declared window");
  for (const auto& [j, blocks] : C.diff) {
    if (j < 0) throw PreconditionError("complex: negative column shift");
    for (const auto& [pq, M] : blocks) {
      auto [p, q] = pq;
      if (M.rows != C.dim(p, q) || M.cols != C.dim(p + j, q + 1 - C.NL * j))
        throw PreconditionError("complex: differential block shape mismatch");
    }
  }
  // sum over i+j = k of the composite through (p+j, q+1-NL*j) must vanish
  int S = C.max_shift();
  for (const auto& [pq, n] : C.dims) {
    auto [p, q] = pq;
    if (n == 0) continue;
    for (int k = 0; k <= 2 * S; ++k) {
      int tp = p + k, tq = q + 2 - C.NL * k;
      int tn = C.dim(tp, tq);
      if (tn == 0) continue;
      auto acc = mat_zero(K, n, tn);
      bool any = false;
      for (int j = 0; j <= k; ++j) {
        const auto* A = C.block(j, p, q);
        const auto* B = C.block(k - j, p + j, q + 1 - C.NL * j);
        if (!A || !B) continue;
        auto AB = mat_mul(K, *A, *B);
        for (int t = 0; t < n * tn; ++t) acc.a[t] = K.add(acc.a[t], AB.a[t]);
        any = true;
      }
      if (!any) continue;
      for (const auto& v : acc.a)
        if (!K.is_zero(v)) throw PreconditionError("complex: differential does not square to zero");
    }
  }
}

namespace detail {

// Direct sum of the blocks of one total degree, restricted to columns
// [plo, phi]; records per-column offsets into the concatenated coordinates.
template <class F>
struct Slab {
  int n = 0;
  int plo = 0, phi = -1;
  std::vector<int> off;  // size phi-plo+2; off.back() = total dimension
  int total = 0;

  int q_of(int NL, int p) const { return n - NL * p; }
  int block_dim(int p) const { return off[p - plo + 1] - off[p - plo]; }
  int offset(int p) const { return off[p - plo]; }
};

template <class F>
Slab<F> build_slab(const FilteredComplex<F>& C, int n, int plo, int phi) {
  Slab<F> s;
  s.n = n;
  s.plo = plo;
  s.phi = phi;
  s.off.assign(std::max(0, phi - plo + 1) + 1, 0);
  for (int p = plo; p <= phi; ++p)
    s.off[p - plo + 1] = s.off[p - plo] + C.dim(p, n - C.NL * p);
  s.total = s.off.back();
  return s;
}

// Total differential of the slab as one matrix (row convention).
template <class F>
Mat<typename F::Elt> slab_matrix(const FilteredComplex<F>& C, const Slab<F>& src,
                                 const Slab<F>& dst) {
  auto D = mat_zero(C.K, src.total, dst.total);
  for (int p = src.plo; p <= src.phi; ++p) {
    int q = src.n - C.NL * p;
    if (C.dim(p, q) == 0) continue;
    for (const auto& [j, blocks] : C.diff) {
      int tp = p + j;
      if (tp < dst.plo || tp > dst.phi) continue;
      const auto* B = C.block(j, p, q);
      if (!B) continue;
      for (int r = 0; r < B->rows; ++r)
        for (int c = 0; c < B->cols; ++c)
          D.at(src.offset(p) + r, dst.offset(tp) + c) = B->at(r, c);
    }
  }
  return D;
}

// Identity rows spanning the filtration piece F^s of a slab.
template <class F>
Mat<typename F::Elt> filtration_rows(const F& K, const Slab<F>& s, int fs) {
  int start = 0;
  if (fs > s.phi) return mat_zero(K, 0, s.total);
  if (fs > s.plo) start = s.offset(fs);
  auto M = mat_zero(K, s.total - start, s.total);
  for (int i = 0; i < M.rows; ++i) M.at(i, start + i) = K.one();
  return M;
}

}  // namespace detail

template <class F>
struct PageEntry {
  using Elt = typename F::Elt;
  Mat<Elt> cycles;      // basis rows inside C^{p,q}: projected relative cycles
  Mat<Elt> boundaries;  // basis rows inside C^{p,q}: projected denominator
  Mat<Elt> reps;        // one representative row per page basis vector
  int dim = 0;          // cycles.rows - boundaries.rows
  std::optional<Mat<Elt>> d;  // page differential in the reps bases, when the target column is covered
};

template <class F>
struct SpectralPage {
  int r = 1;
  int plo = 0, phi = -1;  // columns covered by this page
  int NL = 2;
  std::map<PQ, PageEntry<F>> entries;

  int dim(int p, int q) const {
    auto it = entries.find({p, q});
    return it == entries.end() ? 0 : it->second.dim;
  }
};

namespace detail {

// Page data at every nonzero bidegree with column in [plo, phi]. Caller
// asserts that this range is exact for the ambient complex.
template <class F>
SpectralPage<F> compute_page_range(const FilteredComplex<F>& C, int r, int plo, int phi) {
  const F& K = C.K;
  SpectralPage<F> page;
  page.r = r;
  page.NL = C.NL;
  page.plo = plo;
  page.phi = phi;

  // cycle/denominator data in slab coordinates, kept for the d_r pass
  struct Raw {
    detail::Slab<F> slab;
    Mat<typename F::Elt> Z, Nfull, comp;
  };
  std::map<PQ, Raw> raw;

  // number of slab coordinates strictly below column t
  auto cut_at = [](const detail::Slab<F>& s, int t) {
    if (t <= s.plo) return 0;
    if (t > s.phi) return s.total;
    return s.offset(t);
  };

  for (const auto& [pq, nblk] : C.dims) {
    auto [p, q] = pq;
    if (nblk == 0 || p < plo || p > phi) continue;
    int n = C.NL * p + q;
    auto sm = detail::build_slab(C, n - 1, C.pmin, C.pmax);
    auto sn = detail::build_slab(C, n, C.pmin, C.pmax);
    auto sn1 = detail::build_slab(C, n + 1, C.pmin, C.pmax);
    auto Dprev = detail::slab_matrix(C, sm, sn);
    auto D = detail::slab_matrix(C, sn, sn1);

    // Z = {x supported in F^p : (xD) has zero coordinates below column p+r}
    int cut = cut_at(sn, p);
    int cut1 = cut_at(sn1, p + r);
    auto M = mat_zero(K, sn.total, cut + cut1);
    for (int i = 0; i < cut; ++i) M.at(i, i) = K.one();
    for (int i = 0; i < sn.total; ++i)
      for (int j = 0; j < cut1; ++j) M.at(i, cut + j) = D.at(i, j);
    auto Z = left_kernel(K, M);

    // B = D(F^{p-r+1} of slab n-1), then denominator N = Z ∩ (B + F^{p+1})
    auto Bsrc = detail::filtration_rows(K, sm, p - r + 1);
    auto B = mat_mul(K, Bsrc, Dprev);
    auto Fp1 = detail::filtration_rows(K, sn, p + 1);
    auto Nfull = intersect_rows(K, Z, sum_rows(K, B, Fp1), sn.total);

    // project to the leading block C^{p,q}
    int boff = sn.offset(p);
    auto slice = [&](const Mat<typename F::Elt>& W) {
      auto S = mat_zero(K, W.rows, nblk);
      for (int i = 0; i < W.rows; ++i)
        for (int j = 0; j < nblk; ++j) S.at(i, j) = W.at(i, boff + j);
      return rref(K, S);
    };
    PageEntry<F> ent;
    ent.cycles = slice(Z);
    ent.boundaries = slice(Nfull);
    ent.dim = ent.cycles.rows - ent.boundaries.rows;
    auto comp = complement_in(K, Nfull, Z);
    ent.reps = mat_zero(K, comp.rows, nblk);
    for (int i = 0; i < comp.rows; ++i)
      for (int j = 0; j < nblk; ++j) ent.reps.at(i, j) = comp.at(i, boff + j);
    raw.emplace(pq, Raw{sn, Z, Nfull, comp});
    page.entries.emplace(pq, std::move(ent));
  }

  // d_r: follow each representative through the total differential and read
  // its coordinates against the target representatives modulo the target
  // denominator.
  for (auto& [pq, ent] : page.entries) {
    auto [p, q] = pq;
    PQ tgt{p + r, q + 1 - C.NL * r};
    int n = C.NL * p + q;
    const Raw& src = raw.at(pq);
    if (p + r > phi) {
      // target beyond covered columns: known zero only when the complex
      // vanishes there
      if (C.zero_outside && C.dim(tgt.first, tgt.second) == 0)
        ent.d = mat_zero(K, ent.dim, 0);
      continue;
    }
    auto it = page.entries.find(tgt);
    int tdim = (it == page.entries.end()) ? 0 : it->second.dim;
    if (it == page.entries.end()) {
      ent.d = mat_zero(K, ent.dim, 0);
      continue;
    }
    const Raw& dst = raw.at(tgt);
    auto sn1 = detail::build_slab(C, n + 1, C.pmin, C.pmax);
    auto D = detail::slab_matrix(C, src.slab, sn1);
    auto img = mat_mul(K, src.comp, D);
    // basis of the target Z: denominators first, then representatives
    auto stack = mat_vstack(rref(K, dst.Nfull), dst.comp);
    auto dmat = mat_zero(K, ent.dim, tdim);
    int nden = stack.rows - dst.comp.rows;
    for (int i = 0; i < img.rows; ++i) {
      Mat<typename F::Elt> y(1, img.cols, K.zero());
      for (int j = 0; j < img.cols; ++j) y.at(0, j) = img.at(i, j);
      auto c = coords_in(K, stack, y);
      for (int t = 0; t < tdim; ++t) dmat.at(i, t) = c[nden + t];
    }
    ent.d = std::move(dmat);
  }
  return page;
}

}  // namespace detail

// Spectral page of the window complex. With the vanishing guarantee the full
// window is covered; otherwise only the columns whose page data is provably
// insensitive to unstored blocks, and an empty such range is an error.
template <class F>
SpectralPage<F> compute_page(const FilteredComplex<F>& C, int r) {
  if (r < 1) throw PreconditionError("compute_page: page index must be >= 1");
  validate_complex(C);
  int plo = C.pmin, phi = C.pmax;
  if (!C.zero_outside) {
    plo = C.pmin + r - 1;
    phi = C.pmax + 1 - r;
    if (plo > phi)
      throw BoundError("compute_page: window too small for page " + std::to_string(r));
  }
  return detail::compute_page_range(C, r, plo, phi);
}

// One period of a column-periodic complex: blocks and differentials repeat
// under p -> p + period. Pages are reported on the residue columns
// [0, period-1] after materializing enough margin for exactness.
template <class F>
struct PeriodicComplex {
  FilteredComplex<F> base;  // columns [0, period-1]
  int period = 1;
};

template <class F>
SpectralPage<F> compute_page_periodic(const PeriodicComplex<F>& PC, int r) {
  if (r < 1) throw PreconditionError("compute_page: page index must be >= 1");
  if (PC.period < 1 || PC.base.pmin != 0 || PC.base.pmax != PC.period - 1)
    throw PreconditionError("periodic complex: stored window must be [0, period-1]");
  const auto& B = PC.base;
  // wide enough that columns [0, period-1+r] are exact, so every residue
  // column gets its page differential (targets land on margin copies)
  int margin = 2 * r + PC.period;
  FilteredComplex<F> ext(B.K);
  ext.NL = B.NL;
  ext.pmin = -margin;
  ext.pmax = PC.period - 1 + margin;
  ext.zero_outside = false;
  auto mod = [&](int p) {
    int m = p % PC.period;
    return m < 0 ? m + PC.period : m;
  };
  for (int p = ext.pmin; p <= ext.pmax; ++p) {
    int p0 = mod(p);
    for (const auto& [pq, nblk] : B.dims) {
      if (pq.first != p0) continue;
      ext.dims[{p, pq.second}] = nblk;
      auto lab = B.labels.find(pq);
      if (lab != B.labels.end()) ext.labels[{p, pq.second}] = lab->second;
    }
    for (const auto& [j, blocks] : B.diff)
      for (const auto& [pq, M] : blocks) {
        if (pq.first != p0) continue;
        if (p + j > ext.pmax) continue;
        ext.diff[j][{p, pq.second}] = M;
      }
  }
  validate_complex(ext);
  auto page = detail::compute_page_range(ext, r, 0, PC.period - 1 + r);
  for (auto it = page.entries.begin(); it != page.entries.end();)
    it = (it->first.first >= PC.period) ? page.entries.erase(it) : std::next(it);
  page.plo = 0;
  page.phi = PC.period - 1;
  return page;
}

// Circle model: one even and one odd generator per column, the odd one
// mapped to twice the next even one. Stored as a single periodic column.
template <class F>
PeriodicComplex<F> s1_model(const F& K) {
  PeriodicComplex<F> PC{FilteredComplex<F>(K), 1};
  PC.base.NL = 2;
  PC.base.pmin = 0;
  PC.base.pmax = 0;
  PC.base.dims[{0, 0}] = 1;
  PC.base.dims[{0, 1}] = 1;
  PC.base.labels[{0, 0}] = {"unit"};
  PC.base.labels[{0, 1}] = {"point"};
  PC.base.diff[1][{0, 1}] = Mat<typename F::Elt>(1, 1, K.from_int(2));
  return PC;
}

// ---- degeneration bookkeeping ----

enum class Degeneration { ForcedWide, WideOrNarrowDichotomy, Inconclusive };

inline const char* to_string(Degeneration d) {
  switch (d) {
    case Degeneration::ForcedWide: return "forced-wide";
    case Degeneration::WideOrNarrowDichotomy: return "wide-or-narrow-dichotomy";
    case Degeneration::Inconclusive: return "inconclusive";
  }
  return "?";
}

// Pure degree combinatorics: with algebra generators of degree at most m,
// every page differential out of a generator column vanishes when
// m < NL - 1, and m = NL - 1 leaves exactly the borderline case.
inline Degeneration degeneration_verdict(const std::vector<int>& generator_degrees, int NL) {
  if (generator_degrees.empty())
    throw PreconditionError("degeneration_verdict: empty generator degree list");
  if (NL < 2) throw PreconditionError("degeneration_verdict: NL must be >= 2");
  int m = 0;
  for (int d : generator_degrees) {
    if (d < 0) throw PreconditionError("degeneration_verdict: negative generator degree");
    m = std::max(m, d);
  }
  if (m < NL - 1) return Degeneration::ForcedWide;
  if (m == NL - 1) return Degeneration::WideOrNarrowDichotomy;
  return Degeneration::Inconclusive;
}

// ---- page endomorphisms from symplectomorphism data ----

// Element of H*(L) ⊗ R[classes]: (basis index, exponent vector) -> scalar.
template <class F>
using PageElt = std::map<std::pair<int, ExpVec>, typename F::Elt>;

template <class F>
void page_add_term(const F& K, PageElt<F>& e, int idx, const ExpVec& a,
                   const typename F::Elt& c) {
  auto key = std::make_pair(idx, a);
  auto it = e.find(key);
  if (it == e.end()) {
    if (!K.is_zero(c)) e.emplace(key, c);
  } else {
    it->second = K.add(it->second, c);
    if (K.is_zero(it->second)) e.erase(it);
  }
}

template <class F>
bool page_eq(const F& K, const PageElt<F>& a, const PageElt<F>& b) {
  if (a.size() != b.size()) return false;
  auto it = a.begin(), jt = b.begin();
  for (; it != a.end(); ++it, ++jt)
    if (it->first != jt->first || !K.eq(it->second, jt->second)) return false;
  return true;
}

// Data of the induced page endomorphism: pullback on the H*(L) basis,
// integer action on the class lattice, spin-difference parities, and
// invertible monodromy weight ratios per class generator.
template <class F>
struct McgPageMap {
  using Elt = typename F::Elt;
  F K;
  Mat<Elt> pullback;        // row i = coordinates of the image of basis element i
  Mat<BigInt> class_action; // row j = image of class generator j
  std::vector<int> eps;     // spin-difference pairing with each generator, mod 2
  std::vector<Elt> weights; // invertible weight per generator

  McgPageMap(const F& K_, Mat<Elt> pb, Mat<BigInt> act, std::vector<int> eps_,
             std::vector<Elt> w)
      : K(K_), pullback(std::move(pb)), class_action(std::move(act)),
        eps(std::move(eps_)), weights(std::move(w)) {
    int m = class_action.rows;
    if (class_action.cols != m || static_cast<int>(eps.size()) != m ||
        static_cast<int>(weights.size()) != m)
      throw PreconditionError("page map: class data sizes disagree");
    for (const auto& wv : weights)
      if (K.is_zero(wv)) throw PreconditionError("page map: weight not invertible");
    // the class action must be invertible over the integers
    RatField Q;
    Mat<BigRat> MQ(m, m, BigRat(0));
    for (int i = 0; i < m * m; ++i) MQ.a[i] = BigRat(class_action.a[i]);
    BigRat det = mat_det(Q, MQ);
    if (!(det == BigRat(1) || det == BigRat(-1)))
      throw PreconditionError("page map: class action not invertible over the integers");
  }

  int classes() const { return class_action.rows; }

  ExpVec push_exponent(const ExpVec& a) const {
    int m = classes();
    ExpVec out(m, 0);
    for (int j = 0; j < m; ++j)
      for (int t = 0; t < m; ++t)
        out[t] += a[j] * static_cast<int>(static_cast<long long>(class_action.at(j, t)));
    return out;
  }

  // a_i ⊗ T^A  ->  (-1)^{<eps,A>} (prod_j w_j^{A_j}) φ*(a_i) ⊗ T^{φ_*A}
  PageElt<F> apply(const PageElt<F>& x) const {
    PageElt<F> out;
    int m = classes();
    for (const auto& [key, c] : x) {
      auto [idx, a] = key;
      if (static_cast<int>(a.size()) != m)
        throw PreconditionError("page map: exponent length mismatch");
      long long par = 0;
      Elt w = c;
      for (int j = 0; j < m; ++j) {
        par += static_cast<long long>(eps[j]) * a[j];
        int k = a[j];
        if (k >= 0)
          for (int i = 0; i < k; ++i) w = K.mul(w, weights[j]);
        else {
          Elt inv = K.inv(weights[j]);
          for (int i = 0; i < -k; ++i) w = K.mul(w, inv);
        }
      }
      if (((par % 2) + 2) % 2 == 1) w = K.neg(w);
      ExpVec pa = push_exponent(a);
      for (int t = 0; t < pullback.cols; ++t) {
        auto v = K.mul(w, pullback.at(idx, t));
        if (!K.is_zero(v)) page_add_term(K, out, t, pa, v);
      }
    }
    return out;
  }
};

// Composite of two page maps: apply(phi) then apply(psi) equals
// apply(compose(psi, phi)).
template <class F>
McgPageMap<F> mcg_compose(const McgPageMap<F>& psi, const McgPageMap<F>& phi) {
  const F& K = psi.K;
  int m = phi.classes();
  auto pullback = mat_mul(K, phi.pullback, psi.pullback);
  // exponent actions compose as matrices on row vectors
  Mat<BigInt> act(m, m, BigInt(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      BigInt s = 0;
      for (int t = 0; t < m; ++t) s += phi.class_action.at(i, t) * psi.class_action.at(t, j);
      act.at(i, j) = s;
    }
  // parity: <eps_comp, A> = <eps_phi, A> + <eps_psi, phi_*A>
  std::vector<int> eps(m, 0);
  for (int j = 0; j < m; ++j) {
    long long s = phi.eps[j];
    for (int t = 0; t < m; ++t)
      s += psi.eps[t] * static_cast<long long>(phi.class_action.at(j, t));
    eps[j] = static_cast<int>(((s % 2) + 2) % 2);
  }
  // weights: w_comp,j = w_phi,j * prod_t w_psi,t^{(phi_*)_{jt}}
  std::vector<typename F::Elt> w(m, K.one());
  for (int j = 0; j < m; ++j) {
    typename F::Elt v = phi.weights[j];
    for (int t = 0; t < m; ++t) {
      long long e = static_cast<long long>(phi.class_action.at(j, t));
      if (e >= 0)
        for (long long i = 0; i < e; ++i) v = K.mul(v, psi.weights[t]);
      else {
        auto inv = K.inv(psi.weights[t]);
        for (long long i = 0; i < -e; ++i) v = K.mul(v, inv);
      }
    }
    w[j] = v;
  }
  return McgPageMap<F>(K, std::move(pullback), std::move(act), std::move(eps), std::move(w));
}

template <class F>
McgPageMap<F> mcg_identity(const F& K, int basis_dim, int classes) {
  Mat<BigInt> act(classes, classes, BigInt(0));
  for (int i = 0; i < classes; ++i) act.at(i, i) = 1;
  return McgPageMap<F>(K, mat_identity(K, basis_dim), std::move(act),
                       std::vector<int>(classes, 0),
                       std::vector<typename F::Elt>(classes, K.one()));
}

// ---- equivariant map dimensions ----

// Dimension of {X : G_V(g) X = X G_W(g) for all generators g}. When the
// group order is invertible in the field the averaging projector rank is
// computed as a cross-check.
template <class F>
int equivariant_hom_dimension(const F& K, const std::vector<Mat<typename F::Elt>>& gv,
                              const std::vector<Mat<typename F::Elt>>& gw) {
  if (gv.size() != gw.size())
    throw PreconditionError("equivariant maps: generator lists differ in length");
  if (gv.empty()) throw PreconditionError("equivariant maps: no generators");
  int nv = gv[0].rows, nw = gw[0].rows;
  for (const auto& M : gv)
    if (M.rows != nv || M.cols != nv) throw PreconditionError("equivariant maps: V shape");
  for (const auto& M : gw)
    if (M.rows != nw || M.cols != nw) throw PreconditionError("equivariant maps: W shape");
  int unknowns = nv * nw;
  int eqs = static_cast<int>(gv.size()) * unknowns;
  auto A = mat_zero(K, eqs, unknowns);
  int row = 0;
  for (size_t g = 0; g < gv.size(); ++g) {
    for (int a = 0; a < nv; ++a)
      for (int b = 0; b < nw; ++b) {
        // sum_i GV[a,i] X[i,b] - sum_j X[a,j] GW[j,b] = 0
        for (int i = 0; i < nv; ++i)
          A.at(row, i * nw + b) = K.add(A.at(row, i * nw + b), gv[g].at(a, i));
        for (int j = 0; j < nw; ++j)
          A.at(row, a * nw + j) = K.sub(A.at(row, a * nw + j), gw[g].at(j, b));
        ++row;
      }
  }
  int dim = unknowns - rank_and_kernel(K, A).rank;

  // close the group; cross-check by averaging when |G| is invertible
  std::vector<std::pair<Mat<typename F::Elt>, Mat<typename F::Elt>>> group;
  group.emplace_back(mat_identity(K, nv), mat_identity(K, nw));
  std::vector<size_t> frontier{0};
  const size_t kGroupCap = 4096;
  bool closed = true;
  while (!frontier.empty()) {
    std::vector<size_t> next;
    for (size_t idx : frontier) {
      for (size_t g = 0; g < gv.size(); ++g) {
        auto pv = mat_mul(K, group[idx].first, gv[g]);
        auto pw = mat_mul(K, group[idx].second, gw[g]);
        bool seen = false;
        for (const auto& [qv, qw] : group)
          if (mat_eq(K, qv, pv) && mat_eq(K, qw, pw)) {
            seen = true;
            break;
          }
        if (!seen) {
          group.emplace_back(std::move(pv), std::move(pw));
          next.push_back(group.size() - 1);
          if (group.size() > kGroupCap) {
            closed = false;
            break;
          }
        }
      }
      if (!closed) break;
    }
    if (!closed) break;
    frontier = std::move(next);
  }
  if (closed && !K.is_zero(K.from_int(static_cast<long long>(group.size())))) {
    // Reynolds: X -> (1/|G|) sum_g GV(g) X GW(g)^{-1}; its rank equals dim
    auto P = mat_zero(K, unknowns, unknowns);
    for (const auto& [qv, qw] : group) {
      auto qwi = mat_inverse(K, qw);
      // E_{ij} -> qv E_{ij} qwi: image entry (a,b) = qv[a,i] * qwi[j,b]
      for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nw; ++j)
          for (int a = 0; a < nv; ++a)
            for (int b = 0; b < nw; ++b)
              P.at(i * nw + j, a * nw + b) =
                  K.add(P.at(i * nw + j, a * nw + b),
                        K.mul(qv.at(a, i), qwi.at(j, b)));
    }
    auto scale = K.inv(K.from_int(static_cast<long long>(group.size())));
    for (auto& v : P.a) v = K.mul(v, scale);
    if (mat_rank(K, P) != dim)
      throw std::logic_error("equivariant maps: averaging disagrees with the linear system");
  }
  return dim;
}

// ---- boundary-class component of the first page differential ----

template <class F>
struct BoundaryClassDifferential {
  Mat<typename F::Elt> matrix;  // dim H^1 x 1, the functional <., D1> followed by T
  bool zero = true;
};

// d_1 component pairing degree-one classes with the boundary class D1.
// The pairing matrix (loop basis x H^1 basis) must be nondegenerate over Z.
template <class F>
BoundaryClassDifferential<F> boundary_class_differential(
    const F& K, const std::vector<BigInt>& d1, const Mat<BigInt>& pairing) {
  if (static_cast<int>(d1.size()) != pairing.rows)
    throw PreconditionError("boundary differential: loop coordinate length mismatch");
  if (pairing.rows != pairing.cols)
    throw PreconditionError("boundary differential: pairing matrix must be square");
  RatField Q;
  Mat<BigRat> PQm(pairing.rows, pairing.cols, BigRat(0));
  for (int i = 0; i < pairing.rows * pairing.cols; ++i) PQm.a[i] = BigRat(pairing.a[i]);
  if (Q.is_zero(mat_det(Q, PQm)))
    throw PreconditionError("boundary differential: degenerate pairing");
  BoundaryClassDifferential<F> out;
  out.matrix = mat_zero(K, pairing.cols, 1);
  for (int i = 0; i < pairing.cols; ++i) {
    // <h_i, D1> = sum_j pairing[j][i] * d1[j]
    BigInt s = 0;
    for (int j = 0; j < pairing.rows; ++j) s += pairing.at(j, i) * d1[j];
    // exact integer image in the field; chunked to stay within long long
    bool neg = s < 0;
    BigInt abs = neg ? BigInt(-s) : s;
    auto v = K.zero();
    BigInt base = 1000000000;
    std::vector<long long> digits;
    BigInt t = abs;
    while (t > 0) {
      digits.push_back(static_cast<long long>(t % base));
      t /= base;
    }
    auto bval = K.from_int(1000000000);
    for (auto it = digits.rbegin(); it != digits.rend(); ++it)
      v = K.add(K.mul(v, bval), K.from_int(*it));
    if (neg) v = K.neg(v);
    out.matrix.at(i, 0) = v;
    if (!K.is_zero(v)) out.zero = false;
  }
  return out;
}

// ---- exterior algebra helpers (torus cohomology models) ----

// Basis of Λ(x_1..x_n): subsets encoded as bitmasks, ordered by (popcount,
// mask). Index lookup and wedge/interior-product signs.
struct ExtBasis {
  int n;
  std::vector<int> masks;
  std::map<int, int> index;

  explicit ExtBasis(int n_) : n(n_) {
    for (int k = 0; k <= n; ++k)
      for (int m = 0; m < (1 << n); ++m)
        if (__builtin_popcount(m) == k) masks.push_back(m);
    for (int i = 0; i < static_cast<int>(masks.size()); ++i) index.emplace(masks[i], i);
  }

  int size() const { return static_cast<int>(masks.size()); }

  // sign of x_j ⌟ x_S (factors ordered by ascending index): (-1)^{#(i<j in S)}
  static int interior_sign(int mask, int j) {
    return (__builtin_popcount(mask & ((1 << j) - 1)) % 2 == 0) ? 1 : -1;
  }
};

// Interior product with sum_j c_j x_j on the subset basis (row convention).
template <class F>
Mat<typename F::Elt> ext_interior_product(const F& K, const ExtBasis& B,
                                          const std::vector<typename F::Elt>& c) {
  auto M = mat_zero(K, B.size(), B.size());
  for (int i = 0; i < B.size(); ++i) {
    int mask = B.masks[i];
    for (int j = 0; j < B.n; ++j) {
      if (!(mask & (1 << j))) continue;
      int tgt = B.index.at(mask & ~(1 << j));
      auto v = K.mul(c[j], K.from_int(ExtBasis::interior_sign(mask, j)));
      M.at(i, tgt) = K.add(M.at(i, tgt), v);
    }
  }
  return M;
}

// Functor Λ applied to a linear map on the degree-one generators
// (x_i -> row i of M): the (S, T) entry is the minor det M[S, T].
template <class F>
Mat<typename F::Elt> ext_linear_pullback(const F& K, const ExtBasis& B,
                                         const Mat<typename F::Elt>& M) {
  if (M.rows != B.n || M.cols != B.n)
    throw PreconditionError("exterior pullback: matrix size mismatch");
  auto out = mat_zero(K, B.size(), B.size());
  for (int i = 0; i < B.size(); ++i) {
    int smask = B.masks[i];
    std::vector<int> rows;
    for (int j = 0; j < B.n; ++j)
      if (smask & (1 << j)) rows.push_back(j);
    for (int t = 0; t < B.size(); ++t) {
      int tmask = B.masks[t];
      if (__builtin_popcount(tmask) != static_cast<int>(rows.size())) continue;
      std::vector<int> cols;
      for (int j = 0; j < B.n; ++j)
        if (tmask & (1 << j)) cols.push_back(j);
      auto sub = mat_zero(K, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
      for (size_t a = 0; a < rows.size(); ++a)
        for (size_t b = 0; b < cols.size(); ++b) sub.at(a, b) = M.at(rows[a], cols[b]);
      out.at(i, t) = sub.rows == 0 ? K.one() : mat_det(K, sub);
    }
  }
  return out;
}

}  // namespace pearl
