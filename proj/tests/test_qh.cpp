#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pearl/qh.hpp"
#include "pearl/symfun.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

using namespace pearl;

namespace {

// Random element supported on a few monomials of the given ring.
template <class F>
QHElt<F> random_element(const F& K, const QHRing<F>& R, std::mt19937_64& rng) {
  QHElt<F> x = qh_zero(R);
  std::uniform_int_distribution<int> coeff(-6, 6);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<int> a(R.N);
    for (int j = 0; j < R.N; ++j)
      a[j] = static_cast<int>(rng() % (R.m[j] + 1));
    x = qh_add(R, x, qh_term(R, a, 0, K.from_int(coeff(rng))));
  }
  return x;
}

}  // namespace

TEST_CASE("normal form reproduces the projective relations") {
  RatField Q;

  // P^1 with the Novikov variable kept: H^2 = T^2.
  auto R = make_qh_ring(Q, {1}, {Q.one()}, true, 2);
  auto H = qh_hyperplane(R, 1);
  CHECK(qh_eq(R, qh_multiply(R, H, H), qh_novikov(R, 2)));

  // (2H - T)(2H + T) = 3 T^2.
  auto T = qh_novikov(R, 1);
  auto plus = qh_add(R, qh_scale(R, H, Q.from_int(2)), T);
  auto minus = qh_sub(R, qh_scale(R, H, Q.from_int(2)), T);
  CHECK(qh_eq(R, qh_multiply(R, minus, plus),
              qh_scale(R, qh_novikov(R, 2), Q.from_int(3))));

  // Three P^1 factors, T = 1, weights from unit parameters: the square of
  // each hyperplane class is the product of the other two parameters.
  PrimeField F11(11);
  std::vector<std::uint64_t> t = {F11.from_int(2), F11.from_int(3), F11.from_int(5)};
  auto R3 = make_qh_ring(F11, {1, 1, 1}, deformed_weights(F11, t), false, 2);
  for (int j = 1; j <= 3; ++j) {
    auto Hj = qh_hyperplane(R3, j);
    std::uint64_t wj = F11.one();
    for (int k = 0; k < 3; ++k)
      if (k != j - 1) wj = F11.mul(wj, t[k]);
    CHECK(qh_eq(R3, qh_multiply(R3, Hj, Hj), qh_const(R3, wj)));
  }

  // Unit, commutativity, associativity on random elements.
  std::mt19937_64 rng(0x9a1);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = random_element(F11, R3, rng);
    auto y = random_element(F11, R3, rng);
    auto z = random_element(F11, R3, rng);
    CHECK(qh_eq(R3, qh_multiply(R3, qh_one(R3), x), x));
    CHECK(qh_eq(R3, qh_multiply(R3, x, y), qh_multiply(R3, y, x)));
    CHECK(qh_eq(R3, qh_multiply(R3, qh_multiply(R3, x, y), z),
                qh_multiply(R3, x, qh_multiply(R3, y, z))));
  }

  // Out-of-box exponents reduce on construction: H^3 = w H on P^1.
  auto Rw = make_qh_ring(Q, {1}, {Q.from_int(5)}, false, 2);
  CHECK(qh_eq(Rw, qh_term(Rw, {3}, 0, Q.one()),
              qh_scale(Rw, qh_hyperplane(Rw, 1), Q.from_int(5))));

  CHECK_THROWS_AS(make_qh_ring(Q, {}, {}), PreconditionError);
  CHECK_THROWS_AS(make_qh_ring(Q, {1, 1}, {Q.one()}), PreconditionError);
  CHECK_THROWS_AS(make_qh_ring(Q, {0}, {Q.one()}), PreconditionError);
  CHECK_THROWS_AS(make_qh_ring(Q, {1}, {Q.one()}, true, 0), PreconditionError);
  CHECK_THROWS_AS(make_qh_ring(Q, {1}, {Q.one()}, true, 3), PreconditionError);
  CHECK_THROWS_AS(qh_term(R3, {1, 0}, 0, F11.one()), PreconditionError);
  CHECK_THROWS_AS(qh_term(R3, {1, 0, -1}, 0, F11.one()), PreconditionError);
  CHECK_THROWS_AS(qh_term(R3, {1, 0, 0}, 2, F11.one()), PreconditionError);
  CHECK_THROWS_AS(qh_hyperplane(R3, 0), PreconditionError);
  CHECK_THROWS_AS(qh_hyperplane(R3, 4), PreconditionError);
  CHECK_THROWS_AS(qh_novikov(R3, 1), PreconditionError);
  CHECK_THROWS_AS(qh_pow(R3, qh_one(R3), -1), PreconditionError);
  CHECK_THROWS_AS(deformed_weights(F11, {F11.one(), F11.zero()}), PreconditionError);
}

TEST_CASE("the monomial basis is closed and of full rank") {
  PrimeField F7(7);

  // Rank (m+1)^N across shapes with N (m+1) <= 12, mixed dimensions too.
  std::vector<std::vector<int>> shapes = {
      {1}, {1, 1}, {1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1, 1, 1},
      {2}, {2, 2}, {2, 2, 2}, {2, 2, 2, 2}, {3, 3, 3}, {1, 2, 3}, {5, 1}};
  std::mt19937_64 rng(0xba51);
  for (const auto& dims : shapes) {
    std::vector<std::uint64_t> w(dims.size());
    for (auto& wj : w) wj = rng() % 7;  // zero weights are legal
    auto R = make_qh_ring(F7, dims, w);
    long long expect = 1;
    for (int mj : dims) expect *= mj + 1;
    CHECK(R.rank() == expect);
    auto basis = qh_basis(R);
    CHECK(static_cast<long long>(basis.size()) == expect);

    // Products of basis monomials land back inside the exponent box.
    for (int trial = 0; trial < 25; ++trial) {
      const auto& a = basis[rng() % basis.size()];
      const auto& b = basis[rng() % basis.size()];
      auto prod = qh_multiply(R, qh_term(R, a, 0, F7.one()), qh_term(R, b, 0, F7.one()));
      for (const auto& [key, c] : prod.terms) {
        (void)c;
        for (int j = 0; j < R.N; ++j) CHECK(key.first[j] <= R.m[j]);
        CHECK(key.second == 0);
      }
    }
  }

  // Graded-lex order: degree first, then lexicographic exponents.
  RatField Q;
  auto R2 = make_qh_ring(Q, {1, 1}, {Q.one(), Q.one()});
  auto basis = qh_basis(R2);
  REQUIRE(basis.size() == 4);
  CHECK(basis[0] == std::vector<int>{0, 0});
  CHECK(basis[1] == std::vector<int>{0, 1});
  CHECK(basis[2] == std::vector<int>{1, 0});
  CHECK(basis[3] == std::vector<int>{1, 1});

  // Multiplication by the unit is the identity matrix.
  auto op = mult_operator(R2, qh_one(R2));
  CHECK(op.rank == 4);
  CHECK(op.invertible);
  CHECK(Q.eq(op.det, Q.one()));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      CHECK(Q.eq(op.matrix.at(r, c), r == c ? Q.one() : Q.zero()));
}

TEST_CASE("multiplication operators give a faithful matrix representation") {
  PrimeField F7(7);
  auto R = make_qh_ring(F7, {1, 1}, {F7.from_int(3), F7.from_int(4)});
  std::mt19937_64 rng(0x0b5e);

  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_element(F7, R, rng);
    auto b = random_element(F7, R, rng);
    auto Ma = mult_operator(R, a).matrix;
    auto Mb = mult_operator(R, b).matrix;
    auto Mab = mult_operator(R, qh_multiply(R, a, b)).matrix;
    auto Msum = mult_operator(R, qh_add(R, a, b)).matrix;
    auto MM = mat_mul(F7, Ma, Mb);
    for (int r = 0; r < Mab.rows; ++r)
      for (int c = 0; c < Mab.cols; ++c) {
        CHECK(Mab.at(r, c) == MM.at(r, c));
        CHECK(Msum.at(r, c) == F7.add(Ma.at(r, c), Mb.at(r, c)));
      }
  }

  // The same over the rationals on a single P^2 factor.
  RatField Q;
  auto R2 = make_qh_ring(Q, {2}, {Q.from_int(2)});
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_element(Q, R2, rng);
    auto b = random_element(Q, R2, rng);
    auto Mab = mult_operator(R2, qh_multiply(R2, a, b)).matrix;
    auto MM = mat_mul(Q, mult_operator(R2, a).matrix, mult_operator(R2, b).matrix);
    for (int r = 0; r < Mab.rows; ++r)
      for (int c = 0; c < Mab.cols; ++c) CHECK(Q.eq(Mab.at(r, c), MM.at(r, c)));
  }
}

TEST_CASE("the deformed Euler class degenerates exactly in characteristic three") {
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    PrimeField F(p);
    auto R = make_qh_ring(F, {1}, {F.one()}, true, 2);
    auto H = qh_hyperplane(R, 1);
    for (int sign : {+1, -1}) {
      auto T = qh_novikov(R, 1);
      auto ehat = qh_add(R, qh_scale(R, H, F.from_int(2)),
                         sign > 0 ? T : qh_neg(R, T));
      auto op = mult_operator(R, ehat);
      if (p == 3) {
        CHECK(op.rank == 1);
        CHECK_FALSE(op.invertible);
        CHECK(std::find(op.roots.begin(), op.roots.end(), 0u) != op.roots.end());
      } else {
        CHECK(op.rank == 2);
        CHECK(op.invertible);
        CHECK(std::find(op.roots.begin(), op.roots.end(), 0u) == op.roots.end());
      }
    }
  }

  // Eigenvalues of mult by 2H + T over F_5: H acts with eigenvalues +-1 on
  // the T = 1 reduction, so the operator has eigenvalues 2(+-1) + 1.
  PrimeField F5(5);
  auto R5 = make_qh_ring(F5, {1}, {F5.one()}, true, 2);
  auto eh = qh_add(R5, qh_scale(R5, qh_hyperplane(R5, 1), F5.from_int(2)),
                   qh_novikov(R5, 1));
  auto roots = mult_operator(R5, eh).roots;
  CHECK(roots == std::vector<std::uint64_t>{3, 4});
}

TEST_CASE("odd Euler class determinants match the exact values up to basis sign") {
  RatField Q;
  auto R = make_qh_ring(Q, {1}, {Q.one()});
  auto H = qh_hyperplane(R, 1);

  // In the graded-lex basis (1, H) the four candidate classes 4H +- 3 and
  // 4H +- 1 have determinants -7, -7, -15, -15; only the absolute values
  // are basis-independent.
  for (int c : {3, -3}) {
    auto op = mult_operator(R, qh_add(R, qh_scale(R, H, Q.from_int(4)),
                                      qh_const(R, Q.from_int(c))));
    CHECK(Q.eq(op.det, Q.from_int(-7)));
    CHECK(op.invertible);
  }
  for (int c : {1, -1}) {
    auto op = mult_operator(R, qh_add(R, qh_scale(R, H, Q.from_int(4)),
                                      qh_const(R, Q.from_int(c))));
    CHECK(Q.eq(op.det, Q.from_int(-15)));
  }

  // The exact determinant reduces to the modular one for every prime.
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    PrimeField F(p);
    auto Rp = make_qh_ring(F, {1}, {F.one()});
    auto Hp = qh_hyperplane(Rp, 1);
    for (int c : {3, 1}) {
      auto op = mult_operator(Rp, qh_add(Rp, qh_scale(Rp, Hp, F.from_int(4)),
                                         qh_const(Rp, F.from_int(c))));
      CHECK(op.det == F.from_int(c == 3 ? -7 : -15));
      CHECK(op.invertible == (op.det != 0));
    }
  }
}

TEST_CASE("circle-bundle dimension counts follow the long exact sequence") {
  // Characteristic 3 is the only one where 2H +- T has lost rank, and
  // there the third term is one-dimensional in every degree.
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    PrimeField F(p);
    auto R = make_qh_ring(F, {1}, {F.one()}, true, 2);
    auto H = qh_hyperplane(R, 1);
    for (int sign : {+1, -1}) {
      auto T = qh_novikov(R, 1);
      auto ehat = qh_add(R, qh_scale(R, H, F.from_int(2)),
                         sign > 0 ? T : qh_neg(R, T));
      auto dims = gysin_hf_dims(R, ehat);
      if (p == 3)
        CHECK(dims == std::vector<int>{1, 1});
      else
        CHECK(dims == std::vector<int>{0, 0});
    }
  }

  // 4H + 3 degenerates at 7; 4H + 1 degenerates at 3 and 5 but not 7.
  auto odd_dims = [](std::uint64_t p, int c) {
    PrimeField F(p);
    auto R = make_qh_ring(F, {1}, {F.one()});
    auto ehat = qh_add(R, qh_scale(R, qh_hyperplane(R, 1), F.from_int(4)),
                       qh_const(R, F.from_int(c)));
    return gysin_hf_dims(R, ehat);
  };
  CHECK(odd_dims(7, 3) == std::vector<int>{1, 1});
  CHECK(odd_dims(7, 1) == std::vector<int>{0, 0});
  CHECK(odd_dims(3, 1) == std::vector<int>{1, 1});
  CHECK(odd_dims(5, 1) == std::vector<int>{1, 1});
  CHECK(odd_dims(3, 3) == std::vector<int>{0, 0});

  // Undeformed P^1 with a genuine Z/4 grading: multiplication by H is
  // injective in degree 0 and zero in degree 2, so the circle bundle has
  // the cohomology shape of the three-sphere.
  RatField Q;
  auto Rc = make_qh_ring(Q, {1}, {Q.zero()}, false, 4);
  auto dims = gysin_hf_dims(Rc, qh_hyperplane(Rc, 1));
  CHECK(dims == std::vector<int>{1, 0, 0, 1});
  // Deforming the relation to H^2 = 1 kills both terms.
  auto Rq = make_qh_ring(Q, {1}, {Q.one()}, false, 4);
  CHECK(gysin_hf_dims(Rq, qh_hyperplane(Rq, 1)) == std::vector<int>{0, 0, 0, 0});

  // Mixed degrees are rejected once the grading can see them.
  CHECK_THROWS_AS(gysin_hf_dims(Rc, qh_add(Rc, qh_hyperplane(Rc, 1), qh_one(Rc))),
                  PreconditionError);

  // Long exact sequence bookkeeping: the alternating sum of the dimensions
  // over one period vanishes, also for random degree 2 classes.
  std::mt19937_64 rng(0x3c5);
  for (int trial = 0; trial < 40; ++trial) {
    PrimeField F(trial % 2 == 0 ? 3 : 7);
    std::vector<int> shape = trial % 3 == 0 ? std::vector<int>{1, 1} : std::vector<int>{1};
    std::vector<std::uint64_t> w(shape.size());
    for (auto& wj : w) wj = rng() % F.p;
    auto R = make_qh_ring(F, shape, w, true, 2);
    QHElt<PrimeField> ehat = qh_scale(R, qh_novikov(R, 1), F.from_int(rng() % 7));
    for (int j = 1; j <= R.N; ++j)
      ehat = qh_add(R, ehat, qh_scale(R, qh_hyperplane(R, j), F.from_int(rng() % 7)));
    auto d = gysin_hf_dims(R, ehat);
    int alt = 0;
    for (std::size_t k = 0; k < d.size(); ++k) alt += (k % 2 == 0 ? 1 : -1) * d[k];
    CHECK(alt == 0);
  }
}

TEST_CASE("dual classes are complete homogeneous polynomials in the chosen factors") {
  RatField Q;

  // Four P^2 factors: the pair {1,2} gives the full degree 2 expansion.
  auto R4 = make_qh_ring(Q, {2, 2, 2, 2}, {Q.one(), Q.one(), Q.one(), Q.one()});
  auto expect4 = qh_add(R4, qh_term(R4, {2, 0, 0, 0}, 0, Q.one()),
                        qh_add(R4, qh_term(R4, {1, 1, 0, 0}, 0, Q.one()),
                               qh_term(R4, {0, 2, 0, 0}, 0, Q.one())));
  CHECK(qh_eq(R4, pd_class(R4, {1, 2}), expect4));

  // Three P^1 factors: the pair {1,2} gives H_1 + H_2; the full set the unit.
  auto R3 = make_qh_ring(Q, {1, 1, 1}, {Q.one(), Q.one(), Q.one()});
  CHECK(qh_eq(R3, pd_class(R3, {1, 2}),
              qh_add(R3, qh_hyperplane(R3, 1), qh_hyperplane(R3, 2))));
  CHECK(qh_eq(R3, pd_class(R3, {1, 2, 3}), qh_one(R3)));

  // Singletons reduce through the top-power relation and recover the
  // weight of the missing factors.
  PrimeField F11(11);
  std::vector<std::uint64_t> t = {F11.from_int(2), F11.from_int(3), F11.from_int(5)};
  auto Rd = make_qh_ring(F11, {1, 1, 1}, deformed_weights(F11, t));
  for (int j = 1; j <= 3; ++j) {
    std::uint64_t wj = F11.one();
    for (int k = 0; k < 3; ++k)
      if (k != j - 1) wj = F11.mul(wj, t[k]);
    CHECK(qh_eq(Rd, pd_class(Rd, {j}), qh_const(Rd, wj)));
  }

  // Every surviving term of an unreduced dual class is homogeneous of
  // degree N - |I|, and the expansion agrees with the formal complete
  // homogeneous polynomial from the graded-ring layer.
  auto Rbig = make_qh_ring(Q, {3, 3, 3, 3}, {Q.one(), Q.one(), Q.one(), Q.one()});
  RingDesc formal = build_ring_polynomial(std::vector<int>(4, 1), {});
  for (std::vector<int> I : {std::vector<int>{1, 2}, std::vector<int>{2, 4},
                             std::vector<int>{1, 3, 4}}) {
    auto pd = pd_class(Rbig, I);
    const int k = 4 - static_cast<int>(I.size());
    std::vector<int> vars0;
    for (int i : I) vars0.push_back(i - 1);
    auto hk = gr_complete_subset(Q, formal, k, vars0);
    CHECK(pd.terms.size() == hk.terms.size());
    for (const auto& [key, c] : pd.terms) {
      CHECK(std::accumulate(key.first.begin(), key.first.end(), 0) == k);
      CHECK(key.second == 0);
      auto it = hk.terms.find(key.first);
      REQUIRE(it != hk.terms.end());
      CHECK(Q.eq(c, it->second));
    }
  }

  CHECK_THROWS_AS(pd_class(R3, {}), PreconditionError);
  CHECK_THROWS_AS(pd_class(R3, {0}), PreconditionError);
  CHECK_THROWS_AS(pd_class(R3, {4}), PreconditionError);
  CHECK_THROWS_AS(pd_class(R3, {1, 1}), PreconditionError);
}

TEST_CASE("evaluation relations force the expected characteristics") {
  // Cubing 2 x = 1 against x^3 = 1 forces 8 - 1 = 7.
  std::vector<IntFactorLaw> laws = {{3, 1}, {2, 1}};
  auto rep = characteristic_obstruction(laws, {{1, 2, 1}});
  CHECK(rep.forced == 7);
  CHECK(rep.prime_divisors == std::vector<long long>{7});
  CHECK_FALSE(rep.all_excluded);
  CHECK_FALSE(rep.no_constraint);
  CHECK(rep.verdict() == "characteristic must divide 7");

  // Squaring 3 x = 1 against x^2 = 1 forces 9 - 1 = 8.
  auto rep2 = characteristic_obstruction({{2, 1}}, {{1, 3, 1}});
  CHECK(rep2.forced == 8);
  CHECK(rep2.prime_divisors == std::vector<long long>{2});

  // Constraints combine by gcd: 8 and 12 leave only characteristic 2.
  auto rep3 = characteristic_obstruction({{2, 1}, {2, 1}}, {{1, 3, 1}, {2, 4, 2}});
  CHECK(rep3.forced == 4);
  CHECK(rep3.prime_divisors == std::vector<long long>{2});

  // Two relations on one factor also force the cross-difference, and
  // gcd(7, 37, 2) = 1 rules out every characteristic.
  auto rep4 = characteristic_obstruction({{3, 1}}, {{1, 2, 1}, {1, 4, 3}});
  CHECK(rep4.forced == 1);
  CHECK(rep4.all_excluded);
  CHECK(rep4.verdict() == "all characteristics excluded");

  // A relation the ring already satisfies forces nothing.
  auto rep5 = characteristic_obstruction({{2, 1}}, {{1, 1, 1}});
  CHECK(rep5.forced == 0);
  CHECK(rep5.no_constraint);
  CHECK(rep5.verdict() == "no constraint");

  CHECK_THROWS_AS(characteristic_obstruction({{3, 1}}, {}), PreconditionError);
  CHECK_THROWS_AS(characteristic_obstruction({{3, 1}}, {{0, 2, 1}}), PreconditionError);
  CHECK_THROWS_AS(characteristic_obstruction({{3, 1}}, {{2, 2, 1}}), PreconditionError);
  CHECK_THROWS_AS(characteristic_obstruction({{1, 1}}, {{1, 2, 1}}), PreconditionError);
  CHECK_THROWS_AS(characteristic_obstruction({{3, 1}}, {{1, 2, 1}, {1, 2, 3}}),
                  PreconditionError);
}

TEST_CASE("nilpotent degree-two classes force narrowness off prime powers") {
  for (long long p : {2, 3, 5, 7}) {
    for (long long N = 2; N <= 32; ++N) {
      long long q = 1;
      bool is_power = false;
      while (q <= N) {
        if (q == N) { is_power = true; break; }
        q *= p;
      }
      CHECK(narrow_by_nilpotence(N, p) == !is_power);
    }
  }
  CHECK_THROWS_AS(narrow_by_nilpotence(1, 2), PreconditionError);
  CHECK_THROWS_AS(narrow_by_nilpotence(5, 4), PreconditionError);
  CHECK_THROWS_AS(narrow_by_nilpotence(5, 1), PreconditionError);
}

TEST_CASE("the corner identity certifies the unit-parameter sign") {
  // With every weight parameter set to 1 the top elementary function of
  // the deformation variables is (-1)^N, certified formally over Z.
  for (int N = 3; N <= 8; ++N) CHECK(char_corner_identity(N));
}
