#pragma once

// Dense univariate polynomials over a field context. Coefficient c[i] is the
// coefficient of x^i; the zero polynomial has an empty coefficient list.

#include "pearl/bigint.hpp"

#include <vector>

namespace pearl {

template <class F>
struct Poly {
  using Elt = typename F::Elt;
  std::vector<Elt> c;

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
};

template <class F>
Poly<F> poly_normalize(const F& K, Poly<F> a) {
  while (!a.c.empty() && K.is_zero(a.c.back())) a.c.pop_back();
  return a;
}

template <class F>
Poly<F> poly_from(const F& K, std::vector<typename F::Elt> cs) {
  Poly<F> p{std::move(cs)};
  return poly_normalize(K, std::move(p));
}

template <class F>
Poly<F> poly_x_pow(const F& K, int n) {
  Poly<F> p;
  p.c.assign(n + 1, K.zero());
  p.c[n] = K.one();
  return p;
}

template <class F>
Poly<F> poly_add(const F& K, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r;
  r.c.assign(std::max(a.c.size(), b.c.size()), K.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = K.add(r.c[i], b.c[i]);
  return poly_normalize(K, std::move(r));
}

template <class F>
bool poly_eq(const F& K, const Poly<F>& a, const Poly<F>& b) {
  if (a.c.size() != b.c.size()) return false;
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (!K.eq(a.c[i], b.c[i])) return false;
  return true;
}

template <class F>
Poly<F> poly_sub(const F& K, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r;
  r.c.assign(std::max(a.c.size(), b.c.size()), K.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = K.sub(r.c[i], b.c[i]);
  return poly_normalize(K, std::move(r));
}

template <class F>
Poly<F> poly_mul(const F& K, const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly<F> r;
  r.c.assign(a.c.size() + b.c.size() - 1, K.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (K.is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = K.add(r.c[i + j], K.mul(a.c[i], b.c[j]));
  }
  return poly_normalize(K, std::move(r));
}

template <class F>
Poly<F> poly_scale(const F& K, const Poly<F>& a, const typename F::Elt& s) {
  Poly<F> r = a;
  for (auto& x : r.c) x = K.mul(x, s);
  return poly_normalize(K, std::move(r));
}

// Division with remainder; b nonzero. Returns (quotient, remainder).
template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& K, Poly<F> a, const Poly<F>& b) {
  if (b.is_zero()) throw PreconditionError("poly_divmod: division by zero polynomial");
  Poly<F> q;
  if (a.deg() < b.deg()) return {q, a};
  q.c.assign(a.deg() - b.deg() + 1, K.zero());
  auto lead_inv = K.inv(b.c.back());
  for (int i = a.deg(); i >= b.deg(); --i) {
    if (K.is_zero(a.c[i])) continue;
    auto f = K.mul(a.c[i], lead_inv);
    q.c[i - b.deg()] = f;
    for (int j = 0; j <= b.deg(); ++j)
      a.c[i - b.deg() + j] = K.sub(a.c[i - b.deg() + j], K.mul(f, b.c[j]));
  }
  return {poly_normalize(K, std::move(q)), poly_normalize(K, std::move(a))};
}

// Exact division: throws if the remainder is nonzero.
template <class F>
Poly<F> poly_div_exact(const F& K, const Poly<F>& a, const Poly<F>& b) {
  auto [q, r] = poly_divmod(K, a, b);
  if (!r.is_zero()) throw PreconditionError("poly_div_exact: nonzero remainder");
  return q;
}

template <class F>
Poly<F> poly_monic(const F& K, Poly<F> a) {
  if (a.is_zero()) return a;
  return poly_scale(K, a, K.inv(a.c.back()));
}

template <class F>
Poly<F> poly_gcd(const F& K, Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    auto r = poly_divmod(K, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(K, std::move(a));
}

template <class F>
typename F::Elt poly_eval(const F& K, const Poly<F>& a, const typename F::Elt& x) {
  auto r = K.zero();
  for (int i = a.deg(); i >= 0; --i) r = K.add(K.mul(r, x), a.c[i]);
  return r;
}

// a^e mod m by square and multiply.
template <class F>
Poly<F> poly_powmod(const F& K, Poly<F> a, BigInt e, const Poly<F>& m) {
  Poly<F> r = poly_from(K, {K.one()});
  a = poly_divmod(K, std::move(a), m).second;
  while (e > 0) {
    if ((e & 1) != 0) r = poly_divmod(K, poly_mul(K, r, a), m).second;
    a = poly_divmod(K, poly_mul(K, a, a), m).second;
    e >>= 1;
  }
  return r;
}

}  // namespace pearl
