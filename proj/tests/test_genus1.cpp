#include <doctest.h>

#include <random>

#include "smf/genus1.hpp"

using namespace smf;

namespace {

std::map<long, Rational> row_of(std::initializer_list<std::pair<long, long>> entries) {
  std::map<long, Rational> out;
  for (const auto& [r, v] : entries) out[r] = v;
  return out;
}

}  // namespace

TEST_CASE("delta and eisenstein q-expansions") {
  const QSeries d = delta_q(6);
  CHECK(d.coeff(0) == 0);
  CHECK(d.coeff(1) == 1);
  CHECK(d.coeff(2) == -24);
  CHECK(d.coeff(3) == 252);
  CHECK(d.coeff(4) == -1472);
  CHECK(d.coeff(5) == 4830);
  const QSeries e4 = eisenstein_q(4, 4), e6 = eisenstein_q(6, 3);
  CHECK(e4.coeff(1) == 240);
  CHECK(e4.coeff(2) == 2160);
  CHECK(e4.coeff(3) == 6720);
  CHECK(e6.coeff(1) == -504);
  CHECK(e6.coeff(2) == -16632);
  CHECK_THROWS_AS(e4.coeff(4), DomainError);
}

TEST_CASE("eta^6 leading terms") {
  const QSeries e = eta_pow6(4);
  CHECK(e.shift() == make_rational(1, 4));
  CHECK(e.coeff(0) == 1);
  CHECK(e.coeff(1) == -6);
  CHECK(e.coeff(2) == 9);
  CHECK(e.coeff(3) == 10);
}

TEST_CASE("series reciprocal (random)") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> dist(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> c(12);
    c[0] = trial % 2 == 0 ? 1 : -1;
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = dist(rng);
    const QSeries s(make_rational(trial % 3, 8), c);
    const QSeries prod = s * s.reciprocal();
    CHECK(prod.shift() == 0);
    CHECK(prod.coeff(0) == 1);
    for (int e = 1; e < prod.bound(); ++e) CHECK(prod.coeff(e) == 0);
  }
  CHECK_THROWS(QSeries(0, {Rational(2), Rational(1)}).reciprocal());
}

TEST_CASE("weak Jacobi form of weight -2") {
  const JacobiSlice phi = weak_jacobi_m2(4);
  CHECK(phi.weight() == -2);
  CHECK(phi.index() == 1);
  CHECK(phi.weak());
  CHECK(phi.row(0) == row_of({{-1, 1}, {0, -2}, {1, 1}}));
  CHECK(phi.row(1) == row_of({{-2, -2}, {-1, 8}, {0, -12}, {1, 8}, {2, -2}}));
  CHECK(phi.row(2) == row_of({{-3, 1}, {-2, -12}, {-1, 39}, {0, -56}, {1, 39}, {2, -12}, {3, 1}}));
  CHECK(phi.is_symmetric());
  CHECK_NOTHROW(phi.check_envelope());
}

TEST_CASE("weak Jacobi form of weight 0") {
  const JacobiSlice phi = weak_jacobi_0(4);
  CHECK(phi.row(0) == row_of({{-1, 1}, {0, 10}, {1, 1}}));
  CHECK(phi.row(1) == row_of({{-2, 10}, {-1, -64}, {0, 108}, {1, -64}, {2, 10}}));
  CHECK(phi.row(2) == row_of({{-3, 1}, {-2, 108}, {-1, -513}, {0, 808}, {1, -513}, {2, 108}, {3, 1}}));
}

TEST_CASE("Jacobi-Eisenstein series of weight 4") {
  const JacobiEisenstein je = jacobi_eisenstein_with_weights(4, 4);
  CHECK(je.alpha == make_rational(1, 12));
  CHECK(je.beta == make_rational(-1, 12));
  const JacobiSlice& e = je.slice;
  CHECK_FALSE(e.weak());
  CHECK(e.row(0) == row_of({{0, 1}}));
  CHECK(e.row(1) == row_of({{-2, 1}, {-1, 56}, {0, 126}, {1, 56}, {2, 1}}));
  CHECK_NOTHROW(e.check_envelope());
}

TEST_CASE("Jacobi-Eisenstein series is holomorphic for weights 4 and 6") {
  for (int k : {4, 6}) {
    const JacobiSlice e = jacobi_eisenstein(k, 8);
    CHECK(e.coeff(0, 0) == 1);
    for (const auto& [key, c] : e.coeffs()) CHECK(4 * key.first - key.second * key.second >= 0);
  }
}

TEST_CASE("slice arithmetic") {
  const JacobiSlice a = weak_jacobi_m2(3), b = weak_jacobi_0(3);
  CHECK_THROWS_AS(slice_add(a, b), DomainError);
  const JacobiSlice prod = slice_mul(a, b);
  CHECK(prod.weight() == -2);
  CHECK(prod.index() == 2);
  // (xi - 2 + xi^-1)(xi + 10 + xi^-1) at q^0
  CHECK(prod.row(0) == row_of({{-2, 1}, {-1, 8}, {0, -18}, {1, 8}, {2, 1}}));
  const JacobiSlice doubled = slice_add(a, a);
  CHECK(doubled == slice_scale(a, 2));
  const JacobiSlice holo = slice_mul(delta_q(3), 12, a);
  CHECK(holo.weight() == 10);
  CHECK(holo.coeff(1, 1) == 1);
  CHECK(holo.coeff(1, 0) == -2);
}

TEST_CASE("envelope violations are detected") {
  JacobiSlice s(10, 1, 3, false);
  s.set(0, 1, 1);
  CHECK_THROWS_AS(s.check_envelope(), IntegrityError);
}
