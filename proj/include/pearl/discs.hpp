#pragma once

// Exact model of the symmetric marker configuration in C^{N-1} and of the
// rotation-limit discs attached to it, over the cyclotomic field Q(zeta_N).
//
// The configuration consists of N markers v_j = (zeta^j, zeta^{2j}, ...,
// zeta^{(N-1)j}), j = 1..N.  Under the Hermitian pairing <u,w> = sum u_i
// conj(w_i) every marker has squared length N-1, any two distinct markers
// pair to -1, and the markers sum to zero; these three facts drive all of
// the structure below.  Configurations of N projective vectors stratify by
// linear dependence: a point is generic when every proper subcollection is
// independent, lies in the open stratum of a proper support I when its
// unique dependence has support exactly I and the vectors still span, and
// is a boundary point otherwise.
//
// A rotation disc is specified by an eigenvalue ladder: an integer delta, a
// strictly increasing ladder lambda_1 < ... < lambda_m, and pairwise
// orthogonal eigenspaces V_1..V_m spanning C^{N-1}, subject to the
// trace-free condition delta + sum lambda_r dim V_r = 0.  The generator
// acts on V_r with eigenvalue i(lambda_r + delta/(N-1)); shifting every
// rung by c while moving delta by -(N-1)c fixes the eigenvalues, so ladders
// are reported with top rung 0.  The limit point of the disc replaces each
// marker by its projection onto the first eigenspace that sees it, and the
// index is the even integer
//
//   mu = -2 N delta - 2 (N-1) sum_j lambda_{jmin(v_j)}.
//
// Extremal discs (index 2k through the codimension-k stratum) are
// enumerated over the subspace family generated by marker spans and their
// orthogonal complements; the search is a pure fold over that family and
// parallelizes over subsets if ever needed.  Homology classes of extremal
// discs are recorded against the basis dual to the boundary divisor
// components: away from the limit point the disc stays in the open
// stratum, so the class vector is supported exactly off the dependence
// support, and the index normalization mu = 2 * (sum of coefficients)
// pins every coefficient to 1.

#include "pearl/bigint.hpp"
#include "pearl/cyclotomic.hpp"
#include "pearl/matrix.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pearl {

using CycVec = std::vector<CycField::Elt>;

// ---- Hermitian vector helpers ----

inline bool vec_is_zero(const CycField& C, const CycVec& u) {
  for (const auto& c : u)
    if (!C.is_zero(c)) return false;
  return true;
}

inline CycVec vec_add(const CycField& C, const CycVec& u, const CycVec& w) {
  if (u.size() != w.size()) throw PreconditionError("vec_add: dimension mismatch");
  CycVec r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = C.add(u[i], w[i]);
  return r;
}

inline CycVec vec_sub(const CycField& C, const CycVec& u, const CycVec& w) {
  if (u.size() != w.size()) throw PreconditionError("vec_sub: dimension mismatch");
  CycVec r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = C.sub(u[i], w[i]);
  return r;
}

inline CycVec vec_scale(const CycField& C, const CycField::Elt& c, const CycVec& u) {
  CycVec r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = C.mul(c, u[i]);
  return r;
}

inline bool vec_eq(const CycField& C, const CycVec& u, const CycVec& w) {
  if (u.size() != w.size()) return false;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!C.eq(u[i], w[i])) return false;
  return true;
}

// <u,w> = sum u_i conj(w_i); conjugate-linear in the second slot.
inline CycField::Elt herm(const CycField& C, const CycVec& u, const CycVec& w) {
  if (u.size() != w.size()) throw PreconditionError("herm: dimension mismatch");
  auto s = C.zero();
  for (std::size_t i = 0; i < u.size(); ++i) s = C.add(s, C.mul(u[i], C.conj(w[i])));
  return s;
}

// Scale so the first nonzero coordinate becomes 1.
inline CycVec projective_normalize(const CycField& C, const CycVec& u) {
  for (const auto& c : u)
    if (!C.is_zero(c)) return vec_scale(C, C.inv(c), u);
  throw PreconditionError("projective_normalize: zero vector");
}

namespace detail {

// Hermitian Gram-Schmidt; dependent generators are dropped.  The pairing is
// anisotropic on Q(zeta_N)^d (every embedding makes <v,v> a positive real),
// so a vanishing norm on a nonzero vector is a genuine internal error.
inline std::vector<CycVec> gram_schmidt(const CycField& C, const std::vector<CycVec>& gen) {
  std::vector<CycVec> basis;
  std::vector<CycField::Elt> norms;
  for (const auto& g : gen) {
    CycVec w = g;
    for (std::size_t r = 0; r < basis.size(); ++r) {
      auto coef = C.mul(herm(C, w, basis[r]), C.inv(norms[r]));
      w = vec_sub(C, w, vec_scale(C, coef, basis[r]));
    }
    if (vec_is_zero(C, w)) continue;
    auto n = herm(C, w, w);
    if (C.is_zero(n)) throw std::logic_error("gram_schmidt: isotropic nonzero vector");
    basis.push_back(std::move(w));
    norms.push_back(std::move(n));
  }
  return basis;
}

// Basis of {w : <w, g> = 0 for all generators g} in ambient dimension n.
inline std::vector<CycVec> orth_complement(const CycField& C, const std::vector<CycVec>& gen,
                                           int n) {
  auto M = mat_zero(C, static_cast<int>(gen.size()), n);
  for (std::size_t r = 0; r < gen.size(); ++r) {
    if (static_cast<int>(gen[r].size()) != n)
      throw PreconditionError("orth_complement: dimension mismatch");
    for (int i = 0; i < n; ++i) M.at(static_cast<int>(r), i) = C.conj(gen[r][i]);
  }
  auto rk = rank_and_kernel(C, M);
  std::vector<CycVec> out;
  for (int r = 0; r < rk.kernel.rows; ++r) {
    CycVec w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = rk.kernel.at(r, i);
    out.push_back(std::move(w));
  }
  return out;
}

// Orthogonal projection onto the span of a Hermitian-orthogonal basis.
inline CycVec project_onto(const CycField& C, const std::vector<CycVec>& obasis,
                           const CycVec& u) {
  CycVec out(u.size(), C.zero());
  for (const auto& b : obasis) {
    auto coef = C.mul(herm(C, u, b), C.inv(herm(C, b, b)));
    out = vec_add(C, out, vec_scale(C, coef, b));
  }
  return out;
}

}  // namespace detail

// ---- The marker configuration ----

struct BasePoint {
  int N = 0;
  CycField C{1};
  std::vector<CycVec> v;  // v[j-1] is the j-th marker
};

inline BasePoint make_base_point(int N) {
  if (N < 3) throw PreconditionError("make_base_point: need N >= 3");
  BasePoint x;
  x.N = N;
  x.C = CycField(N);
  for (int j = 1; j <= N; ++j) {
    CycVec vj;
    for (int i = 1; i <= N - 1; ++i)
      vj.push_back(x.C.zeta(static_cast<std::int64_t>(i) * j));
    x.v.push_back(std::move(vj));
  }
  return x;
}

struct BasePointReport {
  bool moment_zero = false;
  bool orbit_free = false;
};

// Checks an arbitrary configuration of nonzero vectors of equal dimension d:
// moment_zero demands sum_j v_j v_j^dagger / <v_j,v_j> = (n/d) * Identity
// exactly (the trace pins the scalar), orbit_free demands pairwise
// non-orthogonality together with a full span.
inline BasePointReport base_point_report(const CycField& C, const std::vector<CycVec>& pts) {
  if (pts.empty()) throw PreconditionError("base_point_report: empty configuration");
  const int d = static_cast<int>(pts[0].size());
  for (const auto& p : pts) {
    if (static_cast<int>(p.size()) != d)
      throw PreconditionError("base_point_report: dimension mismatch");
    if (vec_is_zero(C, p)) throw PreconditionError("base_point_report: zero vector");
  }
  const int n = static_cast<int>(pts.size());

  BasePointReport rep;
  auto target = C.from_rat(BigRat(n) / BigRat(d));
  rep.moment_zero = true;
  for (int a = 0; a < d && rep.moment_zero; ++a) {
    for (int b = 0; b < d && rep.moment_zero; ++b) {
      auto s = C.zero();
      for (const auto& p : pts) {
        auto term = C.mul(p[static_cast<std::size_t>(a)], C.conj(p[static_cast<std::size_t>(b)]));
        s = C.add(s, C.mul(term, C.inv(herm(C, p, p))));
      }
      auto want = (a == b) ? target : C.zero();
      if (!C.eq(s, want)) rep.moment_zero = false;
    }
  }

  rep.orbit_free = true;
  for (int i = 0; i < n && rep.orbit_free; ++i)
    for (int j = i + 1; j < n && rep.orbit_free; ++j)
      if (C.is_zero(herm(C, pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)])))
        rep.orbit_free = false;
  if (rep.orbit_free) {
    auto M = mat_zero(C, d, n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < n; ++j)
        M.at(i, j) = pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    if (mat_rank(C, M) != d) rep.orbit_free = false;
  }
  return rep;
}

inline BasePointReport base_point_check(int N) {
  auto x = make_base_point(N);
  return base_point_report(x.C, x.v);
}

// ---- Dependence strata ----

struct OrbitClass {
  // Minimal dependent subcollections with proper support, 1-based and
  // sorted.  The full collection's global relation (the markers sum to
  // zero) is not a stratum condition and is not listed.
  std::vector<std::vector<int>> minimal_dependent;
  bool spans = false;
  std::vector<int> orbit_support;  // filled exactly when stratum == "orbit"
  std::string stratum;             // "generic" | "orbit" | "boundary stratum"
};

namespace detail {

inline std::vector<int> kernel_row_support(const CycField& C, const Mat<CycField::Elt>& kernel,
                                           int row) {
  std::vector<int> supp;
  for (int j = 0; j < kernel.cols; ++j)
    if (!C.is_zero(kernel.at(row, j))) supp.push_back(j + 1);
  return supp;
}

}  // namespace detail

inline OrbitClass orbit_classify(const CycField& C, const std::vector<CycVec>& pts) {
  if (pts.empty()) throw PreconditionError("orbit_classify: empty configuration");
  const int d = static_cast<int>(pts[0].size());
  const int n = static_cast<int>(pts.size());
  for (const auto& p : pts) {
    if (static_cast<int>(p.size()) != d)
      throw PreconditionError("orbit_classify: dimension mismatch");
    if (vec_is_zero(C, p)) throw PreconditionError("orbit_classify: zero vector");
  }

  auto M = mat_zero(C, d, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < n; ++j)
      M.at(i, j) = pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  auto rk = rank_and_kernel(C, M);

  OrbitClass oc;
  oc.spans = (rk.rank == d);

  const int kdim = rk.kernel.rows;
  if (kdim <= 1) {
    // At most one dependence: its support is the unique minimal dependent
    // subcollection, and the open-stratum conditions read off directly.
    std::vector<int> supp;
    if (kdim == 1) supp = detail::kernel_row_support(C, rk.kernel, 0);
    if (static_cast<int>(supp.size()) < n && !supp.empty()) oc.minimal_dependent.push_back(supp);
    if (oc.spans && oc.minimal_dependent.empty()) {
      oc.stratum = "generic";
    } else if (oc.spans && oc.minimal_dependent.size() == 1) {
      oc.stratum = "orbit";
      oc.orbit_support = oc.minimal_dependent[0];
    } else {
      oc.stratum = "boundary stratum";
    }
    return oc;
  }

  // Several independent dependences: enumerate minimal dependent
  // subcollections by increasing size, pruning supersets of found ones.
  if (n > 16) throw BoundError("orbit_classify: too many vectors for circuit enumeration");
  std::vector<unsigned> circuits;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<int>(mask) == (1 << n) - 1) continue;  // proper supports only
    bool dominated = false;
    for (unsigned c : circuits)
      if ((c & mask) == c) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    int sz = 0;
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) ++sz;
    auto S = mat_zero(C, d, sz);
    int col = 0;
    for (int j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      for (int i = 0; i < d; ++i) S.at(i, col) = M.at(i, j);
      ++col;
    }
    if (mat_rank(C, S) < sz) circuits.push_back(mask);
  }
  std::sort(circuits.begin(), circuits.end(), [n](unsigned a, unsigned b) {
    int ca = 0, cb = 0;
    for (int j = 0; j < n; ++j) {
      ca += (a >> j) & 1u;
      cb += (b >> j) & 1u;
    }
    if (ca != cb) return ca < cb;
    return a < b;
  });
  for (unsigned mask : circuits) {
    std::vector<int> supp;
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) supp.push_back(j + 1);
    oc.minimal_dependent.push_back(supp);
  }
  oc.stratum = "boundary stratum";
  return oc;
}

// ---- Rotation-disc specifications ----

struct AxialDiscSpec {
  int N = 0;
  long long delta = 0;
  std::vector<long long> lambda;         // strictly increasing rungs
  std::vector<std::vector<CycVec>> eig;  // Hermitian-orthogonal basis per eigenspace
  std::vector<int> dim;
};

inline AxialDiscSpec make_axial_spec(const CycField& C, int N, long long delta,
                                     const std::vector<long long>& lambda,
                                     const std::vector<std::vector<CycVec>>& spans) {
  if (N < 3) throw PreconditionError("make_axial_spec: need N >= 3");
  if (lambda.empty() || lambda.size() != spans.size())
    throw PreconditionError("make_axial_spec: ladder and eigenspace counts differ");
  for (std::size_t r = 1; r < lambda.size(); ++r)
    if (lambda[r] <= lambda[r - 1])
      throw PreconditionError("make_axial_spec: ladder must be strictly increasing");

  AxialDiscSpec spec;
  spec.N = N;
  spec.delta = delta;
  spec.lambda = lambda;
  for (const auto& gen : spans) {
    for (const auto& g : gen)
      if (static_cast<int>(g.size()) != N - 1)
        throw PreconditionError("make_axial_spec: eigenspace vector of wrong dimension");
    auto basis = detail::gram_schmidt(C, gen);
    if (basis.empty()) throw PreconditionError("make_axial_spec: zero eigenspace");
    spec.dim.push_back(static_cast<int>(basis.size()));
    spec.eig.push_back(std::move(basis));
  }
  for (std::size_t r = 0; r < spec.eig.size(); ++r)
    for (std::size_t s = r + 1; s < spec.eig.size(); ++s)
      for (const auto& br : spec.eig[r])
        for (const auto& bs : spec.eig[s])
          if (!C.is_zero(herm(C, br, bs)))
            throw PreconditionError("make_axial_spec: eigenspaces must be pairwise orthogonal");
  int total = 0;
  for (int dr : spec.dim) total += dr;
  if (total != N - 1) throw PreconditionError("make_axial_spec: eigenspaces must span");
  long long tr = delta;
  for (std::size_t r = 0; r < lambda.size(); ++r)
    tr += lambda[r] * spec.dim[r];
  if (tr != 0) throw PreconditionError("make_axial_spec: trace-free condition violated");
  return spec;
}

// Imaginary parts of the generator's eigenvalues, kept over the common
// (unreduced) denominator N-1: the r-th eigenvalue is i * num_r / (N-1).
inline std::vector<std::pair<long long, long long>> axial_eigenvalues(const AxialDiscSpec& spec) {
  std::vector<std::pair<long long, long long>> out;
  for (long long l : spec.lambda)
    out.push_back({l * (spec.N - 1) + spec.delta, spec.N - 1});
  return out;
}

namespace detail {

// Index of the first eigenspace with a nonzero projection of u, or -1.
inline int first_visible(const CycField& C, const AxialDiscSpec& spec, const CycVec& u) {
  for (std::size_t r = 0; r < spec.eig.size(); ++r)
    for (const auto& b : spec.eig[r])
      if (!C.is_zero(herm(C, u, b))) return static_cast<int>(r);
  return -1;
}

inline int first_visible_checked(const CycField& C, const AxialDiscSpec& spec, const CycVec& u) {
  int r = first_visible(C, spec, u);
  // Unreachable for validated specs: spanning eigenspaces see every nonzero
  // vector.
  if (r < 0) throw std::logic_error("axial spec: marker orthogonal to every eigenspace");
  return r;
}

// first_visible scans eigenspaces in ladder order, but the projection of u
// onto eigenspace r vanishes exactly when u is orthogonal to its basis, so
// the first visible eigenspace is found without assembling any projection.

}  // namespace detail

// Limit point of the rotation disc: each marker is replaced by its
// projection onto the first eigenspace that sees it, scaled canonically.
inline std::vector<CycVec> axial_limit(const AxialDiscSpec& spec, const BasePoint& x) {
  if (spec.N != x.N) throw PreconditionError("axial_limit: marker count mismatch");
  const auto& C = x.C;
  std::vector<CycVec> out;
  for (const auto& vj : x.v) {
    int r = detail::first_visible_checked(C, spec, vj);
    out.push_back(projective_normalize(
        C, detail::project_onto(C, spec.eig[static_cast<std::size_t>(r)], vj)));
  }
  return out;
}

inline long long axial_index(const AxialDiscSpec& spec, const BasePoint& x) {
  if (spec.N != x.N) throw PreconditionError("axial_index: marker count mismatch");
  const auto& C = x.C;
  long long s = 0;
  for (const auto& vj : x.v)
    s += spec.lambda[static_cast<std::size_t>(detail::first_visible_checked(C, spec, vj))];
  return -2LL * spec.N * spec.delta - 2LL * (spec.N - 1) * s;
}

// ---- Extremal discs ----

struct ExtremalDisc {
  AxialDiscSpec spec;           // ladder canonicalized with top rung 0
  std::vector<int> span_subset;  // top eigenspace = span of these markers, when applicable
  long long index = 0;
  std::vector<int> orbit_support;  // dependence support of the limit point
  std::vector<int> class_vector;   // divisor incidences: 1 exactly off the support
};

// The extremal spec through the stratum of support I: top eigenspace the
// span of the markers off I, bottom eigenspace its orthogonal complement,
// ladder (-1, 0).
inline AxialDiscSpec extremal_spec_for_support(const BasePoint& x, const std::vector<int>& I) {
  const int N = x.N;
  std::vector<int> sorted = I;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() != I.size() || sorted.empty() || sorted.front() < 1 || sorted.back() > N)
    throw PreconditionError("extremal_spec_for_support: support must be a subset of the markers");
  const int k = N - static_cast<int>(sorted.size());
  if (k < 1 || k > N - 2)
    throw PreconditionError("extremal_spec_for_support: support size out of range");

  std::vector<CycVec> top_gen;
  std::size_t pos = 0;
  for (int j = 1; j <= N; ++j) {
    if (pos < sorted.size() && sorted[pos] == j) {
      ++pos;
      continue;
    }
    top_gen.push_back(x.v[static_cast<std::size_t>(j - 1)]);
  }
  auto bottom = detail::orth_complement(x.C, top_gen, N - 1);
  return make_axial_spec(x.C, N, N - 1 - k, {-1, 0}, {bottom, top_gen});
}

// Divisor incidences of a degree-one curve on the j-th factor: it crosses
// every boundary component once except the j-th.
inline std::vector<int> line_class_vector(int N, int j) {
  if (N < 3 || j < 1 || j > N) throw PreconditionError("line_class_vector: factor out of range");
  std::vector<int> c(static_cast<std::size_t>(N), 1);
  c[static_cast<std::size_t>(j - 1)] = 0;
  return c;
}

// Class of a disc in the divisor-dual basis.  Requires the limit point to
// lie in an open dependence stratum and the index to equal twice the
// stratum codimension; the incidence rule then places a single transverse
// crossing on each divisor component off the support.
inline std::vector<int> disc_class_vector(const AxialDiscSpec& spec, const BasePoint& x) {
  auto u0 = axial_limit(spec, x);
  auto oc = orbit_classify(x.C, u0);
  if (oc.stratum != "orbit")
    throw PreconditionError("disc_class_vector: limit point is not in an open stratum");
  const int k = x.N - static_cast<int>(oc.orbit_support.size());
  if (axial_index(spec, x) != 2LL * k)
    throw PreconditionError("disc_class_vector: index does not normalize the incidences");
  std::vector<int> c(static_cast<std::size_t>(x.N), 1);
  for (int j : oc.orbit_support) c[static_cast<std::size_t>(j - 1)] = 0;
  return c;
}

namespace detail {

struct FamilySubspace {
  std::vector<CycVec> gen;     // generating set (markers, or marker differences)
  CycVec tail;                 // (1/(N-|S|)) sum_{t in S} v_t, kinds 0 and 1 only
  int dim = 0;
  int kind = 0;                // 0 = marker span, 1 = complement, 2 = full space
  unsigned mask = 0;           // defining marker subset as a bitmask
  std::vector<int> subset;     // defining marker subset, 1-based
};

// Orthogonality inside the family is combinatorial.  Writing w = sum a_j v_j
// (coefficients defined up to a constant, since the only relation among the
// markers is that they sum to zero), <w, v_s> = N a_s - sum_j a_j; hence the
// complement of span{v_j : j in S} consists of the zero-sum combinations of
// the markers off S.  Comparing coefficient supports then gives: two marker
// spans are never orthogonal (distinct markers pair to -1), a span is
// orthogonal to a complement exactly when its subset is contained in the
// complement's, and two complements are orthogonal exactly when their
// subsets cover all markers.  The rules are cross-checked against the exact
// pairing in the test suite.
inline bool family_orthogonal(const FamilySubspace& a, const FamilySubspace& b, unsigned all) {
  if (a.kind == 2 || b.kind == 2) return false;
  if (a.kind == 0 && b.kind == 0) return false;
  if (a.kind == 0) return (a.mask & ~b.mask) == 0;
  if (b.kind == 0) return (b.mask & ~a.mask) == 0;
  return (a.mask | b.mask) == all;
}

// Marker j projects to zero exactly on complements of subsets containing it:
// v_j lies in span{v_j : j in S} only for j in S, and pairs nontrivially
// with every marker span.
inline bool family_sees(const FamilySubspace& f, int j) {
  if (f.kind == 1) return (f.mask & (1u << (j - 1))) == 0;
  return true;
}

// Projection of marker j onto a family member, in closed form.  For j off S
// the Gram matrix of {v_t : t in S} is N I - J, whose inverse sends the
// constant pairing vector <v_j, v_t> = -1 to the constant coefficient
// -1/(N-|S|); hence
//
//   pi_{span S} v_j = -(1/(N-|S|)) sum_{t in S} v_t        (j off S)
//
// and the projection onto the complement is v_j minus that.  Markers in S
// project to themselves on the span and to zero on the complement, and the
// full space fixes everything.  Cross-checked against orthogonal-basis
// projections in the test suite.
inline CycVec family_proj(const CycField& C, const FamilySubspace& f,
                          const std::vector<CycVec>& v, int j) {
  const auto& vj = v[static_cast<std::size_t>(j - 1)];
  if (f.kind == 2) return vj;
  const bool inside = (f.mask & (1u << (j - 1))) != 0;
  if (f.kind == 0) return inside ? vj : vec_scale(C, C.from_int(-1), f.tail);
  return inside ? CycVec(vj.size(), C.zero()) : vec_add(C, vj, f.tail);
}

inline void require_canonical(const BasePoint& x) {
  if (x.C.N != x.N || static_cast<int>(x.v.size()) != x.N)
    throw PreconditionError("enumerate_extremal_discs: configuration is not canonical");
  for (int j = 1; j <= x.N; ++j) {
    const auto& vj = x.v[static_cast<std::size_t>(j - 1)];
    if (static_cast<int>(vj.size()) != x.N - 1)
      throw PreconditionError("enumerate_extremal_discs: configuration is not canonical");
    for (int i = 1; i <= x.N - 1; ++i)
      if (!x.C.eq(vj[static_cast<std::size_t>(i - 1)],
                  x.C.zeta(static_cast<std::int64_t>(i) * j)))
        throw PreconditionError("enumerate_extremal_discs: configuration is not canonical");
  }
}

// Serialized canonical form (reduced row echelon basis), for deduplication.
inline std::string subspace_key(const CycField& C, const std::vector<CycVec>& basis, int n) {
  auto M = mat_zero(C, static_cast<int>(basis.size()), n);
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (int i = 0; i < n; ++i) M.at(static_cast<int>(r), i) = basis[r][static_cast<std::size_t>(i)];
  auto R = rref(C, M);
  std::string key;
  for (int r = 0; r < R.rows; ++r)
    for (int i = 0; i < R.cols; ++i) key += C.to_string(R.at(r, i)) + ";";
  return key;
}

}  // namespace detail

// Exhaustive search for discs of index 2k whose limit lands in the open
// stratum of support {1..N-k}.  Eigenspaces are drawn from the family of
// marker spans and their orthogonal complements; ladders are enumerated in
// canonical form (top rung 0, rungs bounded below by -2(k+1), which covers
// every ladder within |lambda_r| <= k+1 up to the eigenvalue-preserving
// shift).  Results carry index 2k <= index_bound; the default budget is 2k
// itself, and a budget below 2k admits no disc through a codimension-k
// stratum.
inline std::vector<ExtremalDisc> enumerate_extremal_discs(const BasePoint& x, int k,
                                                          long long index_bound = -1) {
  const int N = x.N;
  const auto& C = x.C;
  if (k < 1 || k > N - 2) throw PreconditionError("enumerate_extremal_discs: k out of range");
  if (index_bound < 0) index_bound = 2LL * k;
  detail::require_canonical(x);
  const unsigned all_markers = (1u << N) - 1u;

  std::vector<int> target;  // expected dependence support {1..N-k}
  for (int j = 1; j <= N - k; ++j) target.push_back(j);

  // The subspace family: spans of proper marker subsets, their orthogonal
  // complements, and the full space.  Any subset of at most N-2 markers is
  // independent, so it is its own basis, and the complement of its span is
  // generated by the differences of the markers off it (the zero-sum
  // combinations of those markers; see family_orthogonal).
  std::vector<detail::FamilySubspace> fam;
  for (unsigned mask = 1; mask < (1u << N); ++mask) {
    int sz = 0;
    for (int j = 0; j < N; ++j)
      if (mask & (1u << j)) ++sz;
    if (sz > N - 2) continue;
    detail::FamilySubspace sp;
    sp.kind = 0;
    sp.mask = mask;
    sp.dim = sz;
    detail::FamilySubspace co;
    co.kind = 1;
    co.mask = mask;
    co.dim = N - 1 - sz;
    CycVec sum(static_cast<std::size_t>(N - 1), C.zero());
    int j0 = -1;
    for (int j = 0; j < N; ++j) {
      if (mask & (1u << j)) {
        sp.subset.push_back(j + 1);
        sp.gen.push_back(x.v[static_cast<std::size_t>(j)]);
        sum = vec_add(C, sum, x.v[static_cast<std::size_t>(j)]);
      } else if (j0 < 0) {
        j0 = j;
      } else {
        co.gen.push_back(
            vec_sub(C, x.v[static_cast<std::size_t>(j)], x.v[static_cast<std::size_t>(j0)]));
      }
    }
    co.subset = sp.subset;
    sp.tail = vec_scale(C, C.inv(C.from_int(N - sz)), sum);
    co.tail = sp.tail;
    fam.push_back(std::move(sp));
    fam.push_back(std::move(co));
  }
  {
    detail::FamilySubspace full;
    full.gen = x.v;
    full.dim = N - 1;
    full.kind = 2;
    fam.push_back(std::move(full));
  }
  const int F = static_cast<int>(fam.size());

  // The dependence support of the limit point depends only on the map
  // (marker -> first visible eigenspace), so kernel results are shared
  // across ladder orders inducing the same assignment.
  std::map<std::vector<int>, std::optional<std::vector<int>>> limit_cache;
  auto limit_support = [&](const std::vector<int>& assign) -> const std::optional<std::vector<int>>& {
    auto it = limit_cache.find(assign);
    if (it != limit_cache.end()) return it->second;
    std::optional<std::vector<int>> supp;
    // The limit cannot span, and so cannot have a one-dimensional kernel,
    // unless the eigenspaces actually receiving markers jointly fill the
    // ambient space.
    std::set<int> used(assign.begin(), assign.end());
    int used_dim = 0;
    for (int f : used) used_dim += fam[static_cast<std::size_t>(f)].dim;
    if (used_dim == N - 1) {
      auto M = mat_zero(C, N - 1, N);
      for (int j = 0; j < N; ++j) {
        auto pj = detail::family_proj(
            C, fam[static_cast<std::size_t>(assign[static_cast<std::size_t>(j)])], x.v, j + 1);
        for (int i = 0; i < N - 1; ++i) M.at(i, j) = pj[static_cast<std::size_t>(i)];
      }
      auto rk = rank_and_kernel(C, M);
      if (rk.rank == N - 1 && rk.kernel.rows == 1)
        supp = detail::kernel_row_support(C, rk.kernel, 0);
    }
    it = limit_cache.emplace(assign, std::move(supp)).first;
    return it->second;
  };

  // Ladders have at most 2k+3 rungs in canonical form.
  const int max_pieces = std::min(N - 1, 2 * k + 3);

  std::map<std::string, ExtremalDisc> found;

  auto process_order = [&](const std::vector<int>& order) {
    const int m = static_cast<int>(order.size());
    // Assignment of each marker to its first visible eigenspace.
    std::vector<int> assign(static_cast<std::size_t>(N), -1);
    for (int j = 0; j < N; ++j)
      for (int r = 0; r < m; ++r)
        if (detail::family_sees(fam[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])],
                                j + 1)) {
          assign[static_cast<std::size_t>(j)] = order[static_cast<std::size_t>(r)];
          break;
        }
    for (int j = 0; j < N; ++j)
      if (assign[static_cast<std::size_t>(j)] < 0) return;  // cannot happen for spanning tuples

    const auto& supp = limit_support(assign);
    if (!supp || *supp != target) return;

    // Rung weights: mu = 2 sum_r lambda_r (N d_r - (N-1) c_r).
    std::vector<long long> weight(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
      long long d_r = fam[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])].dim;
      long long c_r = 0;
      for (int j = 0; j < N; ++j)
        if (assign[static_cast<std::size_t>(j)] == order[static_cast<std::size_t>(r)]) ++c_r;
      weight[static_cast<std::size_t>(r)] = N * d_r - static_cast<long long>(N - 1) * c_r;
    }

    // Canonical ladders: lambda_{m-1} = 0, lower rungs strictly increasing
    // down to -2(k+1); keep those with mu = 2k within the index budget.
    std::vector<long long> rungs(static_cast<std::size_t>(m));
    rungs[static_cast<std::size_t>(m - 1)] = 0;
    const long long floor_rung = -2LL * (k + 1);
    auto emit = [&](const std::vector<long long>& lambda) {
      long long acc = 0;
      for (int r = 0; r < m; ++r) acc += lambda[static_cast<std::size_t>(r)] * weight[static_cast<std::size_t>(r)];
      if (acc != k) return;
      if (2LL * k > index_bound) return;
      long long delta = 0;
      for (int r = 0; r < m; ++r)
        delta -= lambda[static_cast<std::size_t>(r)] *
                 fam[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])].dim;
      std::vector<std::vector<CycVec>> spans;
      for (int r = 0; r < m; ++r)
        spans.push_back(fam[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])].gen);
      ExtremalDisc disc;
      disc.spec = make_axial_spec(C, N, delta, lambda, spans);
      disc.index = axial_index(disc.spec, x);
      if (disc.index != 2LL * k) throw std::logic_error("enumerate_extremal_discs: index drift");
      const auto& top = fam[static_cast<std::size_t>(order[static_cast<std::size_t>(m - 1)])];
      if (top.kind == 0) disc.span_subset = top.subset;
      disc.orbit_support = target;
      disc.class_vector.assign(static_cast<std::size_t>(N), 1);
      for (int j : target) disc.class_vector[static_cast<std::size_t>(j - 1)] = 0;
      std::string key;
      for (int r = 0; r < m; ++r)
        key += std::to_string(lambda[static_cast<std::size_t>(r)]) + "|" +
               detail::subspace_key(C, disc.spec.eig[static_cast<std::size_t>(r)], N - 1) + "#";
      found.emplace(std::move(key), std::move(disc));
    };
    auto rec_ladder = [&](auto&& self, int pos, long long hi) -> void {
      if (pos < 0) {
        emit(rungs);
        return;
      }
      for (long long l = hi - 1; l >= floor_rung; --l) {
        rungs[static_cast<std::size_t>(pos)] = l;
        self(self, pos - 1, l);
      }
    };
    rec_ladder(rec_ladder, m - 2, 1);
  };

  // Unordered orthogonal spanning tuples, then every ladder order.
  std::vector<int> chosen;
  auto rec_tuple = [&](auto&& self, int start, int dimsum) -> void {
    if (dimsum == N - 1) {
      std::vector<int> order = chosen;
      std::sort(order.begin(), order.end());
      do {
        process_order(order);
      } while (std::next_permutation(order.begin(), order.end()));
      return;
    }
    if (static_cast<int>(chosen.size()) >= max_pieces) return;
    for (int f = start; f < F; ++f) {
      if (fam[static_cast<std::size_t>(f)].dim > N - 1 - dimsum) continue;
      bool ok = true;
      for (int g : chosen)
        if (!detail::family_orthogonal(fam[static_cast<std::size_t>(g)],
                                       fam[static_cast<std::size_t>(f)], all_markers)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(f);
      self(self, f + 1, dimsum + fam[static_cast<std::size_t>(f)].dim);
      chosen.pop_back();
    }
  };
  rec_tuple(rec_tuple, 0, 0);

  std::vector<ExtremalDisc> out;
  for (auto& [key, disc] : found) out.push_back(std::move(disc));
  return out;
}

}  // namespace pearl
