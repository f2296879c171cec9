#include <doctest.h>

#include <random>

#include "smf/constructors.hpp"
#include "smf/kernels.hpp"
#include "smf/siegel.hpp"

using namespace smf;

namespace {

SiegelExpansion random_expansion(int box, std::mt19937& rng, std::optional<PrimeModulus> p = std::nullopt) {
  SiegelExpansion f(4, "1", box, p);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 4), coin(0, 3);
  for (const auto& t : f.layout().indices()) {
    if (coin(rng) == 0) continue;
    f.set(t.n, t.r, t.m, p ? Rational(num(rng)) : make_rational(num(rng), den(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("index layout") {
  const IndexLayout layout(4);
  const auto idx = layout.indices();
  CHECK(idx.size() == layout.size());
  std::vector<bool> seen(idx.size(), false);
  for (const auto& t : idx) {
    const std::size_t off = layout.offset(t.n, t.r, t.m);
    REQUIRE(off < idx.size());
    CHECK_FALSE(seen[off]);
    seen[off] = true;
    CHECK(layout.index_at(off) == t);
    CHECK(t.det() >= 0);
  }
  CHECK(layout.contains(1, 2, 1));
  CHECK_FALSE(layout.contains(1, 3, 1));
  CHECK_FALSE(layout.contains(5, 0, 0));
  // canonical (m, n, r) order
  CHECK(idx.front() == SiegelIndex{0, 0, 0});
  CHECK(idx[1] == SiegelIndex{1, 0, 0});
}

TEST_CASE("coefficient access") {
  SiegelExpansion f(10, "1", 2);
  CHECK(f.coeff(1, 3, 1) == 0);  // inadmissible inside the box
  CHECK_THROWS_AS(f.coeff(3, 0, 0), DomainError);
  f.set(1, 1, 1, 5);
  CHECK(f.coeff(1, 1, 1) == 5);
  CHECK_THROWS(f.set(1, 3, 1, 1));
}

TEST_CASE("parallel and serial kernels agree (random)") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const SiegelExpansion a = random_expansion(4, rng), b = random_expansion(4, rng);
    CHECK(mul(a, b, KernelMode::Parallel) == mul(a, b, KernelMode::Serial));
    const PrimeModulus p(11);
    const SiegelExpansion am = random_expansion(4, rng, p), bm = random_expansion(4, rng, p);
    CHECK(mul(am, bm, KernelMode::Parallel) == mul(am, bm, KernelMode::Serial));
  }
}

TEST_CASE("multiplication commutes with reduction (random)") {
  std::mt19937 rng(3);
  const PrimeModulus p(7);
  for (int trial = 0; trial < 5; ++trial) {
    SiegelExpansion a = random_expansion(3, rng), b = random_expansion(3, rng);
    // make them 7-integral
    for (auto* f : {&a, &b})
      for (auto& c : f->mutable_values()) c = Rational(c.get_num());
    CHECK(reduce(mul(a, b), p) == mul(reduce(a, p), reduce(b, p)));
    CHECK(reduce(add(a, b), p) == add(reduce(a, p), reduce(b, p)));
  }
}

TEST_CASE("ring operations") {
  const SiegelExpansion e4 = igusa_generator("E4", 8), e6 = igusa_generator("E6", 8);
  const SiegelExpansion lo = mul(e4.restricted(4), e6.restricted(4));
  CHECK(lo == mul(e4, e6).restricted(4));
  CHECK(lo.weight() == 10);
  CHECK(scale(e4, 1) == e4);
  CHECK(mul(e4, e6.restricted(3)).box() == 3);
  CHECK_THROWS_AS(add(e4, e6), DomainError);
  CHECK_THROWS_AS(mul(e4, reduce(e6, PrimeModulus(5))), DomainError);
  const SiegelExpansion x10 = igusa_generator("chi10", 4);
  const SiegelExpansion sq = mul(x10, x10);
  CHECK(sq.coeff(2, 2, 2) == 1);
  CHECK(sq.coeff(1, 1, 1) == 0);
  CHECK(power(x10, 2) == sq);
}

TEST_CASE("Fourier-Jacobi slices") {
  const SiegelExpansion x10 = igusa_generator("chi10", 4);
  CHECK(fj_slice(x10, 0).is_zero());
  const auto row = fj_slice(x10, 1).row(1);
  CHECK(row.size() == 3);
  CHECK(row.at(-1) == 1);
  CHECK(row.at(0) == -2);
  CHECK(row.at(1) == 1);
  CHECK_THROWS_AS(fj_slice(x10, 5), DomainError);
  // slices partition the expansion
  SiegelExpansion rebuilt(10, "1", 4);
  for (long m = 0; m <= 4; ++m) {
    const JacobiSlice slice = fj_slice(x10, m);
    for (const auto& [key, c] : slice.coeffs())
      if (key.first <= 4) rebuilt.set(key.first, key.second, m, c);
  }
  CHECK(rebuilt == x10);
}

TEST_CASE("Witt restriction") {
  CHECK(witt(igusa_generator("chi10", 6)).is_zero());
  CHECK(witt(igusa_generator("E4", 3)).at(1, 1) == 57600);
  CHECK(witt(SiegelExpansion(4, "1", 3)).is_zero());
  const WittPair a = witt(igusa_generator("E4", 3)), b = witt(igusa_generator("E6", 3));
  CHECK(witt(mul(igusa_generator("E4", 3), igusa_generator("E6", 3))) == witt_product(a, b));
}

TEST_CASE("D operator") {
  const SiegelExpansion x10 = igusa_generator("chi10", 3);
  const SiegelExpansion d = d_op(x10);
  CHECK(d.coeff(1, 1, 1) == 3);
  CHECK(d.d_power() == 1);
  CHECK(d.formal_weight() == 12);
  const SiegelExpansion e4 = igusa_generator("E4", 3);
  const SiegelExpansion de4 = d_op(e4);
  for (long n = 0; n <= 3; ++n) CHECK(de4.coeff(n, 0, 0) == 0);
  CHECK(de4.coeff(1, 0, 1) == 4 * 30240);
  CHECK(d_op(x10, 3) == d_op(d_op(d_op(x10))));
}

TEST_CASE("U(p) operator") {
  const SiegelExpansion x10 = igusa_generator("chi10", 4);
  const PrimeModulus p5(5), p7(7);
  const SiegelExpansion u = u_p(x10, p5);
  CHECK(u.coeff(1, 1, 1) == 0);
  for (const auto& t : u.layout().indices()) {
    if (t.det() % 5 == 0) CHECK(u.coeff(t) == x10.coeff(t));
    else CHECK(u.coeff(t) == 0);
  }
  const SiegelExpansion e4 = igusa_generator("E4", 4);
  CHECK(u_p(u_p(e4, p7), p7) == u_p(e4, p7));
  CHECK(u_p(e4, p7).coeff(2, 0, 0) == e4.coeff(2, 0, 0));
}

TEST_CASE("ord_p and v_p") {
  const SiegelExpansion x10 = igusa_generator("chi10", 4);
  const PrimeModulus p(7);
  const OrderResult o = ord_p(x10, p);
  REQUIRE(o.order.has_value());
  CHECK(*o.order == 1);
  CHECK(v_p_form(x10, p) == 0);
  const OrderResult z = ord_p(scale(x10, 7), p);
  CHECK_FALSE(z.order.has_value());
  CHECK(z.box_limited);
  CHECK(z.lower_bound == 5);
  CHECK(v_p_form(scale(x10, 49), p) == 2);
  CHECK_THROWS_AS(ord_p(scale(x10, make_rational(1, 7)), p), DomainError);
  CHECK(*ord_p(igusa_generator("E4", 3), p).order == 0);
}

TEST_CASE("reduction reports the offending index") {
  SiegelExpansion f(4, "1", 2);
  f.set(1, 0, 1, make_rational(1, 7));
  try {
    reduce(f, PrimeModulus(7));
    FAIL("expected NotPIntegralError");
  } catch (const NotPIntegralError& e) {
    CHECK(std::string(e.what()).find("(1,0,1)") != std::string::npos);
  }
}

TEST_CASE("orbit check") {
  for (const char* name : {"E4", "E6", "chi10", "chi12"}) {
    const OrbitReport rep = gl2_orbit_check(igusa_generator(name, 6));
    CHECK(rep.ok);
    CHECK(rep.relations_checked > 0);
  }
  CHECK(gl2_orbit_check(SiegelExpansion(4, "1", 3)).ok);
  SiegelExpansion bad = igusa_generator("chi10", 4);
  bad.set(2, 1, 1, bad.coeff(2, 1, 1) + 1);
  const OrbitReport rep = gl2_orbit_check(bad);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.violations.empty());
}
