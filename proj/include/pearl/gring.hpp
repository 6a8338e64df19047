#pragma once

// Graded commutative rings on exponent lattices: Laurent rings in one or
// many variables, monoid rings restricted to a positivity cone, and plain
// polynomial rings. Elements are finitely supported coefficient maps.

#include "pearl/bigint.hpp"
#include "pearl/config.hpp"

#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace pearl {

using ExpVec = std::vector<int>;

enum class Cone {
  Full,     // all of Z^m
  NonNeg,   // exponents >= 0 (polynomial ring)
  Positive  // zero exponent or strictly positive degree (monoid ring cone)
};

struct RingDesc {
  int m = 0;                 // variable count
  std::vector<int> degrees;  // per-variable degree
  Cone cone = Cone::Full;
  std::vector<std::string> names;  // optional variable names for printing

  long long degree_of(const ExpVec& a) const {
    long long d = 0;
    for (int j = 0; j < m; ++j) d += static_cast<long long>(a[j]) * degrees[j];
    return d;
  }

  bool admits(const ExpVec& a) const {
    if (static_cast<int>(a.size()) != m) return false;
    switch (cone) {
      case Cone::Full:
        return true;
      case Cone::NonNeg:
        for (int x : a)
          if (x < 0) return false;
        return true;
      case Cone::Positive: {
        bool zero = true;
        for (int x : a)
          if (x != 0) zero = false;
        return zero || degree_of(a) > 0;
      }
    }
    return false;
  }
};

// novikov(N_L): one Laurent variable T of degree N_L
inline RingDesc build_ring_novikov(int NL) {
  if (NL <= 0) throw PreconditionError("build_ring: N_L must be positive");
  return RingDesc{1, {NL}, Cone::Full, {"T"}};
}

// group_ring: class basis with Maslov degrees, exponents restricted to the
// positivity cone; every basis degree must be positive
inline RingDesc build_ring_group(const std::vector<int>& maslov_degrees,
                                 Cone cone = Cone::Positive) {
  RingDesc d;
  d.m = static_cast<int>(maslov_degrees.size());
  d.degrees = maslov_degrees;
  d.cone = cone;
  for (int j = 0; j < d.m; ++j) d.names.push_back("T" + std::to_string(j + 1));
  if (cone == Cone::Positive)
    for (int x : maslov_degrees)
      if (x <= 0)
        throw PreconditionError("build_ring: positivity cone needs positive degrees");
  return d;
}

inline RingDesc build_ring_polynomial(const std::vector<int>& degrees,
                                      std::vector<std::string> names = {}) {
  RingDesc d;
  d.m = static_cast<int>(degrees.size());
  d.degrees = degrees;
  d.cone = Cone::NonNeg;
  if (names.empty())
    for (int j = 0; j < d.m; ++j) names.push_back("x" + std::to_string(j + 1));
  d.names = std::move(names);
  return d;
}

template <class F>
struct GrElt {
  using Elt = typename F::Elt;
  std::map<ExpVec, Elt> terms;  // no zero coefficients stored

  bool is_zero() const { return terms.empty(); }
};

template <class F>
GrElt<F> gr_zero(const F&) {
  return {};
}

template <class F>
GrElt<F> gr_term(const F& K, const RingDesc& R, ExpVec a, typename F::Elt c) {
  if (!R.admits(a)) throw PreconditionError("exponent outside the ring cone");
  GrElt<F> e;
  if (!K.is_zero(c)) e.terms.emplace(std::move(a), std::move(c));
  return e;
}

template <class F>
GrElt<F> gr_const(const F& K, const RingDesc& R, typename F::Elt c) {
  return gr_term(K, R, ExpVec(R.m, 0), std::move(c));
}

template <class F>
GrElt<F> gr_one(const F& K, const RingDesc& R) {
  return gr_const(K, R, K.one());
}

template <class F>
void gr_add_term(const F& K, GrElt<F>& e, const ExpVec& a, const typename F::Elt& c) {
  auto it = e.terms.find(a);
  if (it == e.terms.end()) {
    if (!K.is_zero(c)) e.terms.emplace(a, c);
  } else {
    it->second = K.add(it->second, c);
    if (K.is_zero(it->second)) e.terms.erase(it);
  }
}

template <class F>
GrElt<F> gr_add(const F& K, const GrElt<F>& a, const GrElt<F>& b) {
  GrElt<F> r = a;
  for (const auto& [e, c] : b.terms) gr_add_term(K, r, e, c);
  return r;
}

template <class F>
GrElt<F> gr_neg(const F& K, const GrElt<F>& a) {
  GrElt<F> r = a;
  for (auto& [e, c] : r.terms) c = K.neg(c);
  return r;
}

template <class F>
GrElt<F> gr_sub(const F& K, const GrElt<F>& a, const GrElt<F>& b) {
  return gr_add(K, a, gr_neg(K, b));
}

template <class F>
GrElt<F> gr_scale(const F& K, const GrElt<F>& a, const typename F::Elt& s) {
  GrElt<F> r;
  if (K.is_zero(s)) return r;
  for (const auto& [e, c] : a.terms) {
    auto v = K.mul(c, s);
    if (!K.is_zero(v)) r.terms.emplace(e, v);
  }
  return r;
}

template <class F>
GrElt<F> gr_mul(const F& K, const RingDesc& R, const GrElt<F>& a, const GrElt<F>& b) {
  GrElt<F> r;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      ExpVec e(R.m);
      for (int j = 0; j < R.m; ++j) e[j] = ea[j] + eb[j];
      if (!R.admits(e)) throw PreconditionError("product exponent outside the ring cone");
      gr_add_term(K, r, e, K.mul(ca, cb));
    }
  return r;
}

template <class F>
GrElt<F> gr_pow(const F& K, const RingDesc& R, const GrElt<F>& a, int n) {
  if (n < 0) throw PreconditionError("gr_pow: negative exponent");
  GrElt<F> r = gr_one(K, R);
  for (int i = 0; i < n; ++i) r = gr_mul(K, R, r, a);
  return r;
}

template <class F>
bool gr_eq(const F& K, const GrElt<F>& a, const GrElt<F>& b) {
  if (a.terms.size() != b.terms.size()) return false;
  auto it = a.terms.begin(), jt = b.terms.begin();
  for (; it != a.terms.end(); ++it, ++jt) {
    if (it->first != jt->first) return false;
    if (!K.eq(it->second, jt->second)) return false;
  }
  return true;
}

// An element is homogeneous when all supported exponents share one degree;
// returns that degree (0 for the zero element).
template <class F>
bool gr_homogeneous(const RingDesc& R, const GrElt<F>& a, long long* degree_out = nullptr) {
  bool first = true;
  long long d = 0;
  for (const auto& [e, c] : a.terms) {
    long long de = R.degree_of(e);
    if (first) {
      d = de;
      first = false;
    } else if (de != d) {
      return false;
    }
  }
  if (degree_out) *degree_out = d;
  return true;
}

// Ring homomorphism R[classes] -> Lambda sending the j-th class generator to
// rho_j * T^{mu_j / NL}. Every rho_j must be invertible and every mu_j / NL
// integral; both are checked up front.
template <class F>
struct ReductionMap {
  F K;
  RingDesc source;
  RingDesc target;  // one Laurent variable of degree NL
  std::vector<typename F::Elt> rho;
  std::vector<int> nu;  // mu_j / NL

  ReductionMap(const F& K_, const RingDesc& src, const std::vector<typename F::Elt>& rho_,
               int NL)
      : K(K_), source(src), target(build_ring_novikov(NL)), rho(rho_) {
    if (static_cast<int>(rho.size()) != src.m)
      throw PreconditionError("reduction_map: one weight per class generator");
    for (const auto& r : rho)
      if (K.is_zero(r)) throw PreconditionError("reduction_map: weight not invertible");
    for (int j = 0; j < src.m; ++j) {
      if (src.degrees[j] % NL != 0)
        throw PreconditionError("reduction_map: non-integral degree ratio");
      nu.push_back(src.degrees[j] / NL);
    }
  }

  GrElt<F> apply(const GrElt<F>& a) const {
    GrElt<F> out;
    for (const auto& [e, c] : a.terms) {
      typename F::Elt coeff = c;
      long long t = 0;
      for (int j = 0; j < source.m; ++j) {
        int k = e[j];
        t += static_cast<long long>(nu[j]) * k;
        if (k >= 0)
          for (int i = 0; i < k; ++i) coeff = K.mul(coeff, rho[j]);
        else {
          auto inv = K.inv(rho[j]);
          for (int i = 0; i < -k; ++i) coeff = K.mul(coeff, inv);
        }
      }
      gr_add_term(K, out, ExpVec{static_cast<int>(t)}, coeff);
    }
    return out;
  }
};

template <class F>
std::string gr_to_string(const F& K, const RingDesc& R, const GrElt<F>& a) {
  if (a.terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : a.terms) {
    if (!first) s += " + ";
    first = false;
    s += "(" + K.to_string(c) + ")";
    for (int j = 0; j < R.m; ++j) {
      if (e[j] == 0) continue;
      s += "*" + (j < static_cast<int>(R.names.size()) ? R.names[j]
                                                       : "x" + std::to_string(j + 1));
      if (e[j] != 1) s += "^" + std::to_string(e[j]);
    }
  }
  return s;
}

}  // namespace pearl
