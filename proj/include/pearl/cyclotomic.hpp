#pragma once

// The cyclotomic field Q(zeta_N) = Q[x]/Phi_N(x). Elements are coefficient
// vectors of length phi(N) in the basis 1, zeta, ..., zeta^{phi(N)-1}.
// Phi_N is obtained by exact division of x^N - 1 by the Phi_d of proper
// divisors d | N. Conjugation is the automorphism zeta -> zeta^{N-1}.

#include "pearl/bigint.hpp"
#include "pearl/fields.hpp"
#include "pearl/poly.hpp"

#include <map>
#include <numeric>
#include <sstream>
#include <vector>

namespace pearl {

inline Poly<RatField> cyclotomic_poly(std::int64_t N) {
  static std::map<std::int64_t, Poly<RatField>> cache;
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  RatField Q;
  Poly<RatField> r;
  if (N == 1) {
    r = poly_from(Q, {BigRat(-1), BigRat(1)});  // x - 1
  } else {
    auto num = poly_sub(Q, poly_x_pow(Q, static_cast<int>(N)), poly_from(Q, {BigRat(1)}));
    auto den = poly_from(Q, {BigRat(1)});
    for (auto d : divisors(N))
      if (d < N) den = poly_mul(Q, den, cyclotomic_poly(d));
    r = poly_div_exact(Q, num, den);
  }
  cache[N] = r;
  return r;
}

struct CycField {
  using Elt = std::vector<BigRat>;

  std::int64_t N;
  int phi;
  Poly<RatField> Phi;
  // zeta_pow[k] = coefficient vector of zeta^k, k = 0..N-1.
  std::vector<std::vector<BigRat>> zeta_pow;
  // xred[k] = x^k mod Phi for k = 0..2*phi-2, for products.
  std::vector<std::vector<BigRat>> xred;

  explicit CycField(std::int64_t N_) : N(N_) {
    if (N < 1) throw PreconditionError("CycField: need N >= 1");
    RatField Q;
    Phi = cyclotomic_poly(N);
    phi = Phi.deg();
    auto reduce_xk = [&](std::int64_t k) {
      auto r = poly_divmod(Q, poly_x_pow(Q, static_cast<int>(k)), Phi).second;
      std::vector<BigRat> v(phi, BigRat(0));
      for (int i = 0; i <= r.deg(); ++i) v[i] = r.c[i];
      return v;
    };
    for (std::int64_t k = 0; k < N; ++k) zeta_pow.push_back(reduce_xk(k));
    for (int k = 0; k <= 2 * phi - 2; ++k) xred.push_back(reduce_xk(k));
  }

  Elt zero() const { return Elt(phi, BigRat(0)); }
  Elt one() const {
    Elt e = zero();
    e[0] = 1;
    return e;
  }
  Elt from_int(const BigInt& n) const {
    Elt e = zero();
    e[0] = BigRat(n);
    return e;
  }
  Elt from_rat(const BigRat& q) const {
    Elt e = zero();
    e[0] = q;
    return e;
  }
  // zeta^k for any integer k (reduced mod N).
  Elt zeta(std::int64_t k = 1) const {
    std::int64_t r = ((k % N) + N) % N;
    return zeta_pow[static_cast<std::size_t>(r)];
  }

  Elt add(const Elt& a, const Elt& b) const {
    Elt r = a;
    for (int i = 0; i < phi; ++i) r[i] += b[i];
    return r;
  }
  Elt sub(const Elt& a, const Elt& b) const {
    Elt r = a;
    for (int i = 0; i < phi; ++i) r[i] -= b[i];
    return r;
  }
  Elt neg(const Elt& a) const {
    Elt r = a;
    for (auto& x : r) x = -x;
    return r;
  }
  Elt mul(const Elt& a, const Elt& b) const {
    std::vector<BigRat> conv(2 * phi - 1, BigRat(0));
    for (int i = 0; i < phi; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < phi; ++j)
        if (b[j] != 0) conv[i + j] += a[i] * b[j];
    }
    Elt r = zero();
    for (int k = 0; k < 2 * phi - 1; ++k) {
      if (conv[k] == 0) continue;
      for (int i = 0; i < phi; ++i) r[i] += conv[k] * xred[k][i];
    }
    return r;
  }
  bool is_zero(const Elt& a) const {
    for (const auto& x : a)
      if (x != 0) return false;
    return true;
  }
  bool eq(const Elt& a, const Elt& b) const {
    for (int i = 0; i < phi; ++i)
      if (a[i] != b[i]) return false;
    return true;
  }
  Elt inv(const Elt& a) const {
    if (is_zero(a)) throw PreconditionError("CycField: division by zero");
    // Extended Euclid in Q[x]: u*A + v*Phi = gcd = 1 since Phi is irreducible.
    RatField Q;
    Poly<RatField> A = poly_from(Q, std::vector<BigRat>(a.begin(), a.end()));
    Poly<RatField> r0 = Phi, r1 = A;
    Poly<RatField> s0 = poly_from(Q, {}), s1 = poly_from(Q, {BigRat(1)});
    while (!r1.is_zero()) {
      auto [q, r2] = poly_divmod(Q, r0, r1);
      auto s2 = poly_sub(Q, s0, poly_mul(Q, q, s1));
      r0 = std::move(r1);
      r1 = std::move(r2);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 = gcd (degree 0), s0 * A == r0 mod Phi
    auto s = poly_scale(Q, s0, Q.inv(r0.c[0]));
    Elt out = zero();
    for (int i = 0; i <= s.deg() && i < phi; ++i) out[i] = s.c[i];
    if (s.deg() >= phi) {
      auto red = poly_divmod(Q, s, Phi).second;
      out = zero();
      for (int i = 0; i <= red.deg(); ++i) out[i] = red.c[i];
    }
    return out;
  }

  // Galois map zeta -> zeta^t; a field automorphism when gcd(t, N) = 1.
  Elt galois(const Elt& a, std::int64_t t) const {
    Elt r = zero();
    for (int i = 0; i < phi; ++i) {
      if (a[i] == 0) continue;
      std::int64_t e = ((static_cast<std::int64_t>(i) * t) % N + N) % N;
      for (int j = 0; j < phi; ++j) r[j] += a[i] * zeta_pow[e][j];
    }
    return r;
  }
  Elt conj(const Elt& a) const { return galois(a, N - 1); }

  // Trace to Q: sum over all Galois conjugates. Always a rational number.
  BigRat trace(const Elt& a) const {
    Elt s = zero();
    for (std::int64_t t = 1; t <= N; ++t) {
      if (std::gcd(t, N) != 1) continue;
      s = add(s, galois(a, t));
    }
    for (int i = 1; i < phi; ++i)
      if (s[i] != 0) throw std::logic_error("CycField::trace: non-rational trace");
    return s[0];
  }

  std::int64_t characteristic() const { return 0; }

  std::string to_string(const Elt& a) const {
    std::ostringstream os;
    os << "cyc(" << N << ")[";
    for (int i = 0; i < phi; ++i) {
      if (i) os << ",";
      os << BigRat(a[i]).str();
    }
    os << "]";
    return os.str();
  }
};

}  // namespace pearl
