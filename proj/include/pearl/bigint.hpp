#pragma once

// Arbitrary-precision integer/rational aliases and small number-theory helpers.
// Everything exact; no floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace pearl {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_gcd(BigInt a, BigInt b) { return boost::multiprecision::gcd(a, b); }

inline BigInt big_abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

// C(n, k) over the integers, exact.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;  // exact at every step: r is C(n-k+i, i)
  }
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Prime factorization of a small positive integer, pairs (p, multiplicity).
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("factorize: need n > 0");
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      int m = 0;
      while (n % d == 0) { n /= d; ++m; }
      f.push_back({d, m});
    }
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> ds{1};
  for (auto [p, m] : factorize(n)) {
    std::size_t sz = ds.size();
    std::int64_t pk = 1;
    for (int i = 1; i <= m; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto [p, m] : factorize(n)) { (void)m; r -= r / p; }
  return r;
}

// Largest power of p dividing n, as (p^r, r). p prime, n > 0.
inline std::pair<std::int64_t, int> p_part(std::int64_t n, std::int64_t p) {
  std::int64_t q = 1;
  int r = 0;
  while (n % p == 0) { n /= p; q *= p; ++r; }
  return {q, r};
}

inline bool is_power_of(std::int64_t n, std::int64_t p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

// C(n, k) mod p via Lucas' theorem; p prime, n, k >= 0.
inline std::int64_t binom_mod_lucas(std::int64_t n, std::int64_t k, std::int64_t p) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  while (n > 0 || k > 0) {
    std::int64_t nd = n % p, kd = k % p;
    if (kd > nd) return 0;
    // C(nd, kd) mod p with nd, kd < p
    std::int64_t num = 1, den = 1;
    for (std::int64_t i = 0; i < kd; ++i) {
      num = num * ((nd - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    // den invertible mod p
    std::int64_t inv = 1, base = den % p, e = p - 2;
    while (e > 0) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    r = r * num % p * inv % p;
    n /= p;
    k /= p;
  }
  return r;
}

// Errors with the exit-code contract of the CLI in mind.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pearl
