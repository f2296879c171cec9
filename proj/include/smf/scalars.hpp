#pragma once

// Exact rationals, prime moduli and residues, plus the small number-theoretic
// helpers every other module leans on.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace smf {

using Rational = mpq_class;
using Integer = mpz_class;

/// Precondition violated by a caller (odd weight, p < 5, bad box, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A constructed object failed one of its own integrity assertions.
class IntegrityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Reduction mod p was requested for a value whose denominator is divisible by p.
class NotPIntegralError : public std::domain_error {
public:
  NotPIntegralError(Integer num, Integer den, std::uint64_t p, std::string where = {});

  const Integer& numerator() const { return num_; }
  const Integer& denominator() const { return den_; }
  std::uint64_t prime() const { return p_; }

private:
  Integer num_;
  Integer den_;
  std::uint64_t p_;
};

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);
/// "num/den" in lowest terms, "/den" omitted when the denominator is 1.
std::string to_string(const Rational& x);

bool is_prime_u64(std::uint64_t n);

/// A prime p >= 5 that fits in 64 bits.
class PrimeModulus {
public:
  explicit PrimeModulus(std::uint64_t p);
  static PrimeModulus from_integer(const Integer& p);

  std::uint64_t value() const { return p_; }
  bool operator==(const PrimeModulus&) const = default;

private:
  std::uint64_t p_;
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

/// Residue of a p-integral rational. Throws NotPIntegralError otherwise.
std::uint64_t reduce(const Rational& x, const PrimeModulus& p);
bool is_p_integral(const Rational& x, const PrimeModulus& p);

/// Element of Z/pZ.
class ModScalar {
public:
  ModScalar(std::uint64_t residue, PrimeModulus p);
  static ModScalar from_rational(const Rational& x, PrimeModulus p);

  std::uint64_t residue() const { return v_; }
  const PrimeModulus& modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  ModScalar operator+(const ModScalar& o) const;
  ModScalar operator-(const ModScalar& o) const;
  ModScalar operator*(const ModScalar& o) const;
  ModScalar operator-() const;
  ModScalar inverse() const;
  bool operator==(const ModScalar&) const = default;

private:
  std::uint64_t v_;
  PrimeModulus p_;
};

/// p-adic valuation; nullopt stands for +infinity (x = 0).
std::optional<long> valuation(const Rational& x, const PrimeModulus& p);
std::optional<long> valuation(const Rational& x, std::uint64_t p);

/// B_k for even k >= 2 (B_1 is never needed here).
Rational bernoulli(int k);

std::vector<long> divisors(long n);
Integer divisor_sigma(long n, int power);
long gcd3(long a, long b, long c);
Integer int_pow(long base, unsigned exp);

}  // namespace smf
