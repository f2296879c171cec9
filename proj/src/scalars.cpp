#include "smf/scalars.hpp"

#include <algorithm>
#include <numeric>

namespace smf {

NotPIntegralError::NotPIntegralError(Integer num, Integer den, std::uint64_t p, std::string where)
    : std::domain_error("value " + num.get_str() + "/" + den.get_str() + " is not " +
                        std::to_string(p) + "-integral" + (where.empty() ? "" : " at " + where)),
      num_(std::move(num)),
      den_(std::move(den)),
      p_(p) {}

Rational make_rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) throw DomainError("malformed rational '" + text + "'");
  if (r.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) {
  // mpq's own printer already omits a unit denominator.
  return x.get_str();
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
  if (!is_prime_u64(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (p < 5) throw DomainError("prime must satisfy p >= 5, got " + std::to_string(p));
}

PrimeModulus PrimeModulus::from_integer(const Integer& p) {
  if (p < 0 || mpz_sizeinbase(p.get_mpz_t(), 2) > 64) {
    throw DomainError("prime " + p.get_str() + " is outside the supported 64-bit range");
  }
  return PrimeModulus(std::stoull(p.get_str()));
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) result = mul_mod(result, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DomainError("zero has no inverse mod " + std::to_string(p));
  return pow_mod(a, p - 2, p);
}

namespace {

std::uint64_t residue_of(const Integer& z, std::uint64_t p) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

bool is_p_integral(const Rational& x, const PrimeModulus& p) {
  return mpz_divisible_ui_p(x.get_den_mpz_t(), p.value()) == 0;
}

std::uint64_t reduce(const Rational& x, const PrimeModulus& p) {
  if (!is_p_integral(x, p)) throw NotPIntegralError(x.get_num(), x.get_den(), p.value());
  const std::uint64_t num = residue_of(x.get_num(), p.value());
  const std::uint64_t den = residue_of(x.get_den(), p.value());
  return mul_mod(num, inv_mod(den, p.value()), p.value());
}

ModScalar::ModScalar(std::uint64_t residue, PrimeModulus p) : v_(residue % p.value()), p_(p) {}

ModScalar ModScalar::from_rational(const Rational& x, PrimeModulus p) { return ModScalar(reduce(x, p), p); }

ModScalar ModScalar::operator+(const ModScalar& o) const {
  const std::uint64_t p = p_.value();
  std::uint64_t s = v_ + o.v_;
  if (s >= p || s < v_) s -= p;
  return ModScalar(s, p_);
}

ModScalar ModScalar::operator-(const ModScalar& o) const { return *this + (-o); }

ModScalar ModScalar::operator*(const ModScalar& o) const { return ModScalar(mul_mod(v_, o.v_, p_.value()), p_); }

ModScalar ModScalar::operator-() const { return ModScalar(v_ == 0 ? 0 : p_.value() - v_, p_); }

ModScalar ModScalar::inverse() const { return ModScalar(inv_mod(v_, p_.value()), p_); }

std::optional<long> valuation(const Rational& x, std::uint64_t p) {
  if (x == 0) return std::nullopt;
  auto count = [p](Integer z) {
    long v = 0;
    while (mpz_divisible_ui_p(z.get_mpz_t(), p)) {
      mpz_divexact_ui(z.get_mpz_t(), z.get_mpz_t(), p);
      ++v;
    }
    return v;
  };
  return count(x.get_num()) - count(x.get_den());
}

std::optional<long> valuation(const Rational& x, const PrimeModulus& p) { return valuation(x, p.value()); }

Rational bernoulli(int k) {
  if (k < 2 || k % 2 != 0) throw DomainError("bernoulli: k must be even and >= 2, got " + std::to_string(k));
  std::vector<Rational> b(k + 1);
  b[0] = 1;
  for (int n = 1; n <= k; ++n) {
    // sum_{j=0}^{n} C(n+1, j) B_j = 0
    Rational acc = 0;
    Integer binom = 1;  // C(n+1, 0)
    for (int j = 0; j < n; ++j) {
      acc += Rational(binom) * b[j];
      binom = binom * (n + 1 - j) / (j + 1);
    }
    b[n] = -acc / (n + 1);
  }
  return b[k];
}

std::vector<long> divisors(long n) {
  if (n <= 0) throw DomainError("divisors: n must be positive, got " + std::to_string(n));
  std::vector<long> small, large;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Integer divisor_sigma(long n, int power) {
  Integer total = 0;
  for (long d : divisors(n)) total += int_pow(d, static_cast<unsigned>(power));
  return total;
}

long gcd3(long a, long b, long c) { return std::gcd(std::gcd(a, b), c); }

Integer int_pow(long base, unsigned exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), exp);
  if (base < 0 && (exp % 2 == 1)) r = -r;
  return r;
}

}  // namespace smf
