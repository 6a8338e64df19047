#pragma once

// Field contexts: exact rationals and prime fields F_p (p < 2^31).
// A field context owns the arithmetic; elements are plain data. Generic
// kernels (matrices, polynomials) are templated over the context type.

#include "pearl/bigint.hpp"

#include <cstdint>
#include <string>

namespace pearl {

struct RatField {
  using Elt = BigRat;

  Elt zero() const { return Elt(0); }
  Elt one() const { return Elt(1); }
  Elt from_int(const BigInt& n) const { return Elt(n); }
  Elt add(const Elt& a, const Elt& b) const { return a + b; }
  Elt sub(const Elt& a, const Elt& b) const { return a - b; }
  Elt mul(const Elt& a, const Elt& b) const { return a * b; }
  Elt neg(const Elt& a) const { return -a; }
  Elt inv(const Elt& a) const {
    if (a == 0) throw PreconditionError("RatField: division by zero");
    return 1 / a;
  }
  bool is_zero(const Elt& a) const { return a == 0; }
  bool eq(const Elt& a, const Elt& b) const { return a == b; }
  std::int64_t characteristic() const { return 0; }
  std::string to_string(const Elt& a) const { return a.str(); }
};

// F_p with residues stored in [0, p). p < 2^31 so products fit in 64 bits.
struct PrimeField {
  using Elt = std::uint64_t;
  std::uint64_t p;

  explicit PrimeField(std::uint64_t p_) : p(p_) {
    if (p < 2 || p >= (1ull << 31) || !is_prime_u64(p))
      throw PreconditionError("PrimeField: modulus must be prime and < 2^31");
  }

  Elt zero() const { return 0; }
  Elt one() const { return 1 % p; }
  Elt from_int(const BigInt& n) const {
    BigInt r = n % BigInt(p);
    if (r < 0) r += p;
    return r.convert_to<std::uint64_t>();
  }
  Elt add(Elt a, Elt b) const { Elt s = a + b; return s >= p ? s - p : s; }
  Elt sub(Elt a, Elt b) const { return a >= b ? a - b : a + p - b; }
  Elt mul(Elt a, Elt b) const { return a * b % p; }
  Elt neg(Elt a) const { return a == 0 ? 0 : p - a; }
  Elt pow(Elt a, std::uint64_t e) const {
    Elt r = one(), base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  Elt inv(Elt a) const {
    if (a == 0) throw PreconditionError("PrimeField: division by zero");
    return pow(a, p - 2);
  }
  bool is_zero(Elt a) const { return a == 0; }
  bool eq(Elt a, Elt b) const { return a == b; }
  std::int64_t characteristic() const { return static_cast<std::int64_t>(p); }
  std::string to_string(Elt a) const {
    return std::to_string(a) + " mod " + std::to_string(p);
  }
};

}  // namespace pearl
