#pragma once

// Tagged exact scalar used at the tool surface (CLI, JSON, bindings).
// Compute kernels stay templated on a concrete field; this wrapper carries
// the domain tag so mixed-domain arithmetic is rejected instead of coerced.

#include "pearl/bigint.hpp"
#include "pearl/cyclotomic.hpp"
#include "pearl/fields.hpp"
#include "pearl/matrix.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pearl {

enum class FieldKind { Rational, Prime, Cyclotomic };

struct FieldSpec {
  FieldKind kind = FieldKind::Rational;
  uint64_t p = 0;  // Prime
  int N = 0;       // Cyclotomic

  static FieldSpec rational() { return {}; }
  static FieldSpec prime(uint64_t p) { return {FieldKind::Prime, p, 0}; }
  static FieldSpec cyclotomic(int N) { return {FieldKind::Cyclotomic, 0, N}; }

  bool operator==(const FieldSpec& o) const {
    return kind == o.kind && p == o.p && N == o.N;
  }
  std::string label() const {
    switch (kind) {
      case FieldKind::Rational: return "Q";
      case FieldKind::Prime: return "F" + std::to_string(p);
      default: return "Q(zeta" + std::to_string(N) + ")";
    }
  }
};

struct Scalar {
  FieldSpec field;
  // Rational -> BigRat; Prime -> residue; Cyclotomic -> coefficient vector
  std::variant<BigRat, uint64_t, std::vector<BigRat>> v;
};

class ScalarField {
 public:
  using Elt = Scalar;

  explicit ScalarField(FieldSpec spec) : spec_(spec) {
    if (spec.kind == FieldKind::Prime) fp_.emplace(spec.p);
    if (spec.kind == FieldKind::Cyclotomic) cyc_.emplace(spec.N);
  }

  const FieldSpec& spec() const { return spec_; }

  Scalar zero() const { return wrap_zero(); }
  Scalar one() const { return from_int(1); }

  Scalar from_int(const BigInt& n) const {
    switch (spec_.kind) {
      case FieldKind::Rational: return {spec_, BigRat(n)};
      case FieldKind::Prime: return {spec_, fp_->from_int(n)};
      default: return {spec_, cyc_->from_int(n)};
    }
  }

  Scalar from_rat(const BigRat& q) const {
    switch (spec_.kind) {
      case FieldKind::Rational: return {spec_, q};
      case FieldKind::Prime: {
        uint64_t num = fp_->from_int(BigInt(boost::multiprecision::numerator(q)));
        uint64_t den = fp_->from_int(BigInt(boost::multiprecision::denominator(q)));
        return {spec_, fp_->mul(num, fp_->inv(den))};
      }
      default: return {spec_, cyc_->from_rat(q)};
    }
  }

  Scalar zeta(int k) const {
    if (spec_.kind != FieldKind::Cyclotomic)
      throw PreconditionError("zeta lives in a cyclotomic field");
    return {spec_, cyc_->zeta(k)};
  }

  Scalar add(const Scalar& a, const Scalar& b) const { return bin(a, b, Op::Add); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return bin(a, b, Op::Sub); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return bin(a, b, Op::Mul); }

  Scalar neg(const Scalar& a) const {
    check(a);
    switch (spec_.kind) {
      case FieldKind::Rational: return {spec_, -std::get<BigRat>(a.v)};
      case FieldKind::Prime: return {spec_, fp_->neg(std::get<uint64_t>(a.v))};
      default: return {spec_, cyc_->neg(celt(a))};
    }
  }

  Scalar inv(const Scalar& a) const {
    check(a);
    switch (spec_.kind) {
      case FieldKind::Rational: {
        const auto& q = std::get<BigRat>(a.v);
        if (q == 0) throw PreconditionError("division by zero");
        return {spec_, BigRat(1) / q};
      }
      case FieldKind::Prime: return {spec_, fp_->inv(std::get<uint64_t>(a.v))};
      default: return {spec_, cyc_->inv(celt(a))};
    }
  }

  bool is_zero(const Scalar& a) const {
    check(a);
    switch (spec_.kind) {
      case FieldKind::Rational: return std::get<BigRat>(a.v) == 0;
      case FieldKind::Prime: return std::get<uint64_t>(a.v) == 0;
      default: return cyc_->is_zero(celt(a));
    }
  }

  bool eq(const Scalar& a, const Scalar& b) const { return is_zero(sub(a, b)); }

  BigInt characteristic() const {
    return spec_.kind == FieldKind::Prime ? BigInt(spec_.p) : BigInt(0);
  }

  std::string to_string(const Scalar& a) const {
    check(a);
    switch (spec_.kind) {
      case FieldKind::Rational: return std::get<BigRat>(a.v).str();
      case FieldKind::Prime: return fp_->to_string(std::get<uint64_t>(a.v));
      default: return cyc_->to_string(celt(a));
    }
  }

 private:
  enum class Op { Add, Sub, Mul };

  void check(const Scalar& a) const {
    if (!(a.field == spec_)) throw PreconditionError("scalar domain mismatch");
  }
  const CycField::Elt& celt(const Scalar& a) const {
    return std::get<std::vector<BigRat>>(a.v);
  }
  Scalar wrap_zero() const {
    switch (spec_.kind) {
      case FieldKind::Rational: return {spec_, BigRat(0)};
      case FieldKind::Prime: return {spec_, uint64_t{0}};
      default: return {spec_, cyc_->zero()};
    }
  }
  Scalar bin(const Scalar& a, const Scalar& b, Op op) const {
    check(a);
    check(b);
    switch (spec_.kind) {
      case FieldKind::Rational: {
        const auto &x = std::get<BigRat>(a.v), &y = std::get<BigRat>(b.v);
        BigRat r = op == Op::Add   ? BigRat(x + y)
                   : op == Op::Sub ? BigRat(x - y)
                                   : BigRat(x * y);
        return {spec_, r};
      }
      case FieldKind::Prime: {
        uint64_t x = std::get<uint64_t>(a.v), y = std::get<uint64_t>(b.v);
        uint64_t r = op == Op::Add   ? fp_->add(x, y)
                     : op == Op::Sub ? fp_->sub(x, y)
                                     : fp_->mul(x, y);
        return {spec_, r};
      }
      default: {
        auto x = celt(a), y = celt(b);
        auto r = op == Op::Add   ? cyc_->add(x, y)
                 : op == Op::Sub ? cyc_->sub(x, y)
                                 : cyc_->mul(x, y);
        return {spec_, r};
      }
    }
  }

  FieldSpec spec_;
  std::optional<PrimeField> fp_;
  std::optional<CycField> cyc_;
};

// Rank and right-kernel of a tagged-scalar matrix, dispatched to the
// concrete field kernel.
inline std::pair<int, Mat<Scalar>> scalar_rank_and_kernel(const ScalarField& K,
                                                          const Mat<Scalar>& M) {
  auto run = [&](auto F, auto unwrap, auto wrap) {
    Mat<typename decltype(F)::Elt> A(M.rows, M.cols);
    for (int i = 0; i < M.rows; ++i)
      for (int j = 0; j < M.cols; ++j) A.at(i, j) = unwrap(M.at(i, j));
    auto rk = rank_and_kernel(F, A);
    Mat<Scalar> ker(rk.kernel.rows, rk.kernel.cols);
    for (int i = 0; i < ker.rows; ++i)
      for (int j = 0; j < ker.cols; ++j) ker.at(i, j) = wrap(rk.kernel.at(i, j));
    return std::make_pair(rk.rank, ker);
  };
  const FieldSpec spec = K.spec();
  switch (spec.kind) {
    case FieldKind::Rational:
      return run(RatField{},
                 [](const Scalar& s) { return std::get<BigRat>(s.v); },
                 [&](const BigRat& x) { return Scalar{spec, x}; });
    case FieldKind::Prime:
      return run(PrimeField{spec.p},
                 [](const Scalar& s) { return std::get<uint64_t>(s.v); },
                 [&](uint64_t x) { return Scalar{spec, x}; });
    default:
      return run(CycField{spec.N},
                 [](const Scalar& s) { return std::get<std::vector<BigRat>>(s.v); },
                 [&](const CycField::Elt& x) { return Scalar{spec, x}; });
  }
}

}  // namespace pearl
