#pragma once

// Root enumeration for univariate polynomials over a prime field.
// Small fields are scanned directly; larger ones go through
// gcd(f, x^p - x) followed by deterministic equal-degree splitting.

#include "pearl/fields.hpp"
#include "pearl/poly.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace pearl {

namespace detail {

inline void split_linear(const PrimeField& K, const Poly<PrimeField>& g,
                         std::mt19937_64& rng, std::vector<uint64_t>& out) {
  if (g.deg() <= 0) return;
  if (g.deg() == 1) {
    // monic x + c has root -c
    out.push_back(K.neg(g.c[0]));
    return;
  }
  // g splits into distinct linear factors; (x+a)^((p-1)/2) - 1 separates the
  // roots r with chi(r + a) = 1 from the rest
  const uint64_t p = K.p;
  for (;;) {
    uint64_t a = rng() % p;
    Poly<PrimeField> shift = poly_from(K, {a, 1});
    Poly<PrimeField> h = poly_powmod(K, shift, BigInt((p - 1) / 2), g);
    h = poly_sub(K, h, poly_from(K, {1}));
    Poly<PrimeField> d = poly_gcd(K, h, g);
    if (d.deg() > 0 && d.deg() < g.deg()) {
      split_linear(K, d, rng, out);
      split_linear(K, poly_div_exact(K, g, d), rng, out);
      return;
    }
  }
}

}  // namespace detail

// All roots in F_p, ascending, without multiplicity.
inline std::vector<uint64_t> roots_in_prime_field(const PrimeField& K,
                                                  const Poly<PrimeField>& f) {
  if (f.deg() < 0) throw PreconditionError("root search needs a nonzero polynomial");
  std::vector<uint64_t> out;
  if (f.deg() == 0) return out;

  if (K.p <= (1ull << 20)) {
    for (uint64_t r = 0; r < K.p; ++r)
      if (K.is_zero(poly_eval(K, f, r))) out.push_back(r);
    return out;
  }

  // x^p mod f, then gcd(f, x^p - x) collects exactly the linear factors
  Poly<PrimeField> xp = poly_powmod(K, poly_x_pow(K, 1), BigInt(K.p), f);
  Poly<PrimeField> g = poly_gcd(K, poly_sub(K, xp, poly_x_pow(K, 1)), f);
  if (K.is_zero(poly_eval(K, g, 0))) {
    out.push_back(0);
    g = poly_div_exact(K, g, poly_x_pow(K, 1));
  }
  std::mt19937_64 rng(0x5eed5eed5eed5eedull);
  detail::split_linear(K, g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pearl
