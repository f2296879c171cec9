#include <doctest.h>

#include <random>

#include "smf/scalars.hpp"

using namespace smf;

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(2) == make_rational(1, 6));
  CHECK(bernoulli(4) == make_rational(-1, 30));
  CHECK(bernoulli(6) == make_rational(1, 42));
  CHECK(bernoulli(10) == make_rational(5, 66));
  CHECK(bernoulli(12) == make_rational(-691, 2730));
  CHECK_THROWS_AS(bernoulli(3), DomainError);
  CHECK_THROWS_AS(bernoulli(0), DomainError);
}

TEST_CASE("eisenstein normalizers") {
  CHECK(Rational(-8) / bernoulli(4) == 240);
  CHECK(Rational(-12) / bernoulli(6) == -504);
}

TEST_CASE("divisors and sigma") {
  CHECK(divisors(12) == std::vector<long>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(1) == std::vector<long>{1});
  CHECK(divisor_sigma(6, 3) == 252);
  CHECK(divisor_sigma(2, 3) == 9);
  CHECK(gcd3(4, -6, 10) == 2);
  CHECK(int_pow(3, 4) == 81);
}

TEST_CASE("rational parsing is canonical") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-7")) == "-7");
  CHECK(to_string(make_rational(10, -4)) == "-5/2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("prime modulus validation") {
  CHECK_NOTHROW(PrimeModulus(5));
  CHECK_NOTHROW(PrimeModulus(1000000007ULL));
  CHECK_THROWS_AS(PrimeModulus(3), DomainError);
  CHECK_THROWS_AS(PrimeModulus(2), DomainError);
  CHECK_THROWS_AS(PrimeModulus(9), DomainError);
  CHECK_THROWS_AS(PrimeModulus(1), DomainError);
}

TEST_CASE("primality agrees with trial division") {
  const auto slow = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime_u64(n) == slow(n));
  CHECK(is_prime_u64(18446744073709551557ULL));
  CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("reduction mod p") {
  const PrimeModulus p(7);
  CHECK(reduce(make_rational(1, 2), p) == 4);
  CHECK(reduce(make_rational(-1, 1), p) == 6);
  CHECK(reduce(make_rational(14, 3), p) == 0);
  CHECK(is_p_integral(make_rational(3, 5), p));
  CHECK_FALSE(is_p_integral(make_rational(3, 14), p));
  try {
    reduce(make_rational(3, 14), p);
    FAIL("expected NotPIntegralError");
  } catch (const NotPIntegralError& e) {
    CHECK(e.prime() == 7);
    CHECK(e.denominator() == 14);
  }
}

TEST_CASE("valuations") {
  const PrimeModulus p(5);
  CHECK(valuation(make_rational(50, 3), p) == 2);
  CHECK(valuation(make_rational(3, 125), p) == -3);
  CHECK_FALSE(valuation(Rational(0), p).has_value());
}

TEST_CASE("mod scalar field laws (random)") {
  std::mt19937_64 rng(20261019);
  for (std::uint64_t pv : {5ULL, 11ULL, 1000003ULL, 18446744073709551557ULL}) {
    const PrimeModulus p(pv);
    std::uniform_int_distribution<std::uint64_t> dist(0, pv - 1);
    for (int i = 0; i < 200; ++i) {
      const ModScalar a(dist(rng), p), b(dist(rng), p), c(dist(rng), p);
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a - a == ModScalar(0, p));
      CHECK(-a + a == ModScalar(0, p));
      if (!a.is_zero()) CHECK(a * a.inverse() == ModScalar(1, p));
    }
  }
  CHECK_THROWS(ModScalar(0, PrimeModulus(5)).inverse());
}

TEST_CASE("reduction is a ring map (random)") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 60);
  const PrimeModulus p(13);
  for (int i = 0; i < 300; ++i) {
    Rational a = make_rational(num(rng), den(rng)), b = make_rational(num(rng), den(rng));
    if (!is_p_integral(a, p) || !is_p_integral(b, p)) continue;
    CHECK(reduce(a * b, p) == mul_mod(reduce(a, p), reduce(b, p), 13));
    CHECK(reduce(a + b, p) == (reduce(a, p) + reduce(b, p)) % 13);
  }
}
