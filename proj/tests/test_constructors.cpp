#include <doctest.h>

#include <algorithm>
#include <set>

#include "smf/constructors.hpp"

using namespace smf;

TEST_CASE("lift reproduces the seed on the first slice") {
  const JacobiSlice seed = igusa_seed("chi10", 26);
  const SiegelExpansion f = maass_lift(seed, false, 5);
  for (long n = 0; n <= 5; ++n)
    for (long r = -5; r <= 5; ++r)
      if (4 * n - r * r >= 0) CHECK(f.coeff(n, r, 1) == seed.coeff(n, r));
  CHECK(f.coeff(2, 2, 2) == 240);
  CHECK(seed.coeff(4, 2) == -272);
  CHECK(f.coeff(2, 2, 2) == 512 * seed.coeff(1, 1) + seed.coeff(4, 2));
}

TEST_CASE("lift preconditions") {
  CHECK_THROWS_AS(maass_lift(weak_jacobi_0(10), false, 2), DomainError);
  CHECK_THROWS_AS(maass_lift(slice_mul(weak_jacobi_0(10), weak_jacobi_0(10)).with_weak(false), false, 2), DomainError);
  CHECK_THROWS_AS(maass_lift(igusa_seed("chi10", 5), false, 3), DomainError);
  CHECK_THROWS_AS(maass_lift(igusa_seed("chi10", 5), false, 0), DomainError);
}

TEST_CASE("Igusa generators: low coefficients") {
  const SiegelExpansion e4 = igusa_generator("E4", 3);
  CHECK(e4.coeff(0, 0, 0) == 1);
  CHECK(e4.coeff(1, 0, 0) == 240);
  CHECK(e4.coeff(0, 0, 1) == 240);
  CHECK(e4.coeff(1, 0, 1) == 30240);
  CHECK(e4.coeff(1, 1, 1) == 13440);
  CHECK(e4.coeff(2, 2, 2) == 604800);
  const SiegelExpansion e6 = igusa_generator("E6", 3);
  CHECK(e6.coeff(0, 0, 0) == 1);
  CHECK(e6.coeff(1, 0, 0) == -504);
  CHECK(e6.coeff(1, 0, 1) == 166320);
  CHECK(e6.coeff(1, 1, 1) == 44352);
  const SiegelExpansion x10 = igusa_generator("chi10", 3);
  CHECK(x10.coeff(1, 1, 1) == 1);
  CHECK(x10.coeff(1, 0, 1) == -2);
  CHECK(x10.coeff(2, 1, 1) == -16);
  CHECK(x10.coeff(2, 0, 1) == 36);
  CHECK(x10.coeff(3, 1, 1) == 99);
  CHECK(x10.coeff(2, 1, 2) == -240);
  CHECK(x10.coeff(2, 0, 2) == 32);
  const SiegelExpansion x12 = igusa_generator("chi12", 3);
  CHECK(x12.coeff(1, 1, 1) == 1);
  CHECK(x12.coeff(1, 0, 1) == 10);
  CHECK(x12.coeff(2, 1, 1) == -88);
  for (long n = 0; n <= 3; ++n)
    for (long r = -3; r <= 3; ++r)
      if (r == 0) CHECK(x10.coeff(n, r, 0) == 0);
  CHECK_THROWS_AS(igusa_generator("chi35", 3), DomainError);
  CHECK_THROWS_AS(igusa_generator("E4", 0), DomainError);
}

TEST_CASE("chi20") {
  const SiegelExpansion f = chi20(3);
  CHECK(f.weight() == 20);
  CHECK(f.coeff(1, 1, 1) == 19);
  CHECK(gl2_orbit_check(f).ok);
  CHECK_THROWS_AS(chi20(1), DomainError);
}

TEST_CASE("sharpness exponents") {
  const auto e14 = sharpness_exponents(14);
  CHECK((e14.e4 == 1 && e14.e6 == 0 && e14.chi10 == 1 && e14.chi12 == 0 && e14.t == 1));
  const auto e16 = sharpness_exponents(16);
  CHECK((e16.e4 == 0 && e16.e6 == 1 && e16.chi10 == 1));
  const auto e20 = sharpness_exponents(20);
  CHECK((e20.e4 == 0 && e20.e6 == 0 && e20.chi10 == 2 && e20.t == 2));
  const auto e22 = sharpness_exponents(22);
  CHECK((e22.chi10 == 1 && e22.chi12 == 1 && e22.t == 2));
  CHECK_THROWS_AS(sharpness_exponents(2), DomainError);
  CHECK_THROWS_AS(sharpness_exponents(15), DomainError);
}

TEST_CASE("sharpness forms: leading rows") {
  const SiegelExpansion g20 = sharpness_example(20, 3);
  for (const auto& t : g20.layout().indices())
    if (t.n <= 1) CHECK(g20.coeff(t) == 0);
  CHECK(g20.coeff(2, 2, 2) == 1);
  CHECK(g20.coeff(2, 0, 2) == 6);
  CHECK(g20.coeff(2, 1, 2) == -4);
  const SiegelExpansion g22 = sharpness_example(22, 2);
  // (xi^-1 + 10 + xi)(xi^-1 - 2 + xi)
  CHECK(g22.coeff(2, -2, 2) == 1);
  CHECK(g22.coeff(2, -1, 2) == 8);
  CHECK(g22.coeff(2, 0, 2) == -18);
  for (const auto& c : g22.values()) CHECK(c.get_den() == 1);
}

TEST_CASE("quadratic forms") {
  const QuadraticForm4& s = builtin_form("S1^11");
  CHECK(s.determinant() > 0);
  CHECK(builtin_form_names().size() == 6);
  QuadraticForm4::Gram bad{};
  for (int i = 0; i < 4; ++i) bad[i][i] = 1;
  bad[3][3] = -1;
  CHECK_THROWS_AS(QuadraticForm4(bad, "bad"), DomainError);
  QuadraticForm4::Gram half{};
  for (int i = 0; i < 4; ++i) half[i][i] = 1;
  half[0][0] = make_rational(1, 2);
  CHECK_THROWS_AS(QuadraticForm4(half, "half"), DomainError);
  CHECK_THROWS_AS(builtin_form("S4^11"), DomainError);
}

TEST_CASE("short vector enumeration matches the hypercube scan") {
  for (const auto& name : builtin_form_names()) {
    const QuadraticForm4& s = builtin_form(name);
    for (long bound : {0L, 1L, 3L, 6L}) {
      auto a = short_vectors(s, bound), b = short_vectors_naive(s, bound);
      const auto key = [](const ShortVector& v) { return v.x; };
      std::set<Vec4> sa, sb;
      for (const auto& v : a) {
        sa.insert(key(v));
        CHECK(v.norm == s.value(v.x));
        CHECK(v.norm <= bound);
      }
      for (const auto& v : b) sb.insert(key(v));
      CHECK(sa == sb);
      CHECK(a.size() == sa.size());
    }
  }
}

TEST_CASE("theta series") {
  const SiegelExpansion t = theta_series(builtin_form("S1^11"), 2);
  CHECK(t.coeff(0, 0, 0) == 1);
  CHECK(t.coeff(1, 0, 0) == 4);
  CHECK(t.coeff(0, 0, 1) == 4);
  for (const auto& c : t.values()) CHECK((c >= 0 && c.get_den() == 1));
  for (const auto& name : builtin_form_names()) {
    const QuadraticForm4& s = builtin_form(name);
    const SiegelExpansion par = theta_series(s, 2, KernelMode::Parallel);
    CHECK(par == theta_series(s, 2, KernelMode::Serial));
    CHECK(par == theta_series_reference(s, 2));
    CHECK(gl2_orbit_check(par).ok);
  }
}

TEST_CASE("level-11 and level-19 combinations") {
  const SiegelExpansion f11 = yoshida_level11(2);
  CHECK(f11.coeff(0, 0, 0) == 0);
  CHECK(f11.weight() == 2);
  CHECK(f11.level() == "Gamma0(11) genus 2");
  CHECK(yoshida_level19(2).coeff(0, 0, 0) == 0);
  CHECK_THROWS_AS(yoshida_level11(1), DomainError);
}

TEST_CASE("catalog") {
  CHECK(is_catalog_name("G20"));
  CHECK(is_catalog_name("theta:S2^19"));
  CHECK_FALSE(is_catalog_name("theta:S9^19"));
  CHECK_FALSE(is_catalog_name("chi35"));
  CHECK_THROWS_AS(catalog_form("nope", 2), DomainError);
  CHECK(catalog_form("G14", 2) == sharpness_example(14, 2));
}
