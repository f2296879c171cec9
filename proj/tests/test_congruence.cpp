#include <doctest.h>

#include <random>

#include "smf/congruence.hpp"
#include "smf/constructors.hpp"

using namespace smf;

TEST_CASE("Sturm gate verdicts") {
  const PrimeModulus p7(7);
  const SiegelExpansion x10 = igusa_generator("chi10", 3);
  const CongruenceReport zero = sturm_gate(reduce(scale(x10, 7), p7), 10, 1);
  CHECK(zero.verdict == Verdict::CertifiedZero);
  CHECK(zero.bound == 1);
  CHECK(zero.witnesses.empty());

  const CongruenceReport ref = sturm_gate(reduce(x10, p7), 10, 1);
  CHECK(ref.verdict == Verdict::Refuted);
  bool found = false;
  for (const auto& w : ref.witnesses) {
    CHECK(w.residue != 0);
    CHECK(w.index.n <= 1);
    CHECK(w.index.m <= 1);
    if (w.index == SiegelIndex{1, 1, 1}) found = w.residue == 1;
  }
  CHECK(found);

  const CongruenceReport g20 = sturm_gate(reduce(sharpness_example(20, 2), p7), 20, 1);
  CHECK(g20.verdict == Verdict::Refuted);
  for (const auto& w : g20.witnesses) CHECK((w.index.n == 2 && w.index.m == 2));

  // box below the bound with nothing nonzero in it
  const CongruenceReport short_box = sturm_gate(reduce(sharpness_example(20, 1), p7), 20, 1);
  CHECK(short_box.verdict == Verdict::Inconclusive);

  CHECK_THROWS_AS(sturm_gate(reduce(x10, p7), 11, 1), DomainError);
  CHECK_THROWS_AS(sturm_gate(x10, 10, 1), DomainError);
  CHECK_THROWS_AS(sturm_gate(reduce(yoshida_level11(2), PrimeModulus(11)), 2, 1), DomainError);
}

TEST_CASE("certify_congruent") {
  const PrimeModulus p5(5);
  const SiegelExpansion x12 = igusa_generator("chi12", 2);
  CHECK(certify_congruent(x12, x12, p5, 12, 1).verdict == Verdict::CertifiedZero);
  CHECK_THROWS_AS(certify_congruent(x12, igusa_generator("chi10", 2), p5, 12, 1), DomainError);
  const SiegelExpansion e4 = igusa_generator("E4", 2), e6 = igusa_generator("E6", 2);
  const CongruenceReport rep = certify_congruent(power(e4, 3), power(e6, 2), p5, 12, 1);
  // 240 = 0 and -504 = 1 mod 5, so both reduce to 1 + ...; the scan decides.
  CHECK((rep.verdict == Verdict::CertifiedZero || rep.verdict == Verdict::Refuted));
}

TEST_CASE("Jacobi gate") {
  const PrimeModulus p7(7), p11(11);
  const JacobiSlice s = fj_slice(reduce(igusa_generator("chi10", 3), p7), 1);
  const CongruenceReport r = jacobi_gate(s, p7, 10, 1, 1);
  CHECK(r.verdict == Verdict::Refuted);
  CHECK(r.bound == 1);
  bool at_one = false;
  for (const auto& w : r.witnesses) at_one = at_one || w.index.n == 1;
  CHECK(at_one);
  CHECK(jacobi_gate(JacobiSlice(10, 1, 3, false), p7, 10, 1, 1).verdict == Verdict::CertifiedZero);
  const JacobiSlice s12 = fj_slice(scale(igusa_generator("chi12", 3), 11), 1);
  CHECK(jacobi_gate(s12, p11, 12, 1, 1).verdict == Verdict::CertifiedZero);
  CHECK(jacobi_gate(JacobiSlice(10, 1, 1, false), p7, 10, 1, 1).verdict == Verdict::Inconclusive);
}

TEST_CASE("order at xi = 1") {
  const PrimeModulus p(7);
  CHECK(order_at_one({{-1, 1}, {0, -2}, {1, 1}}, p) == 2);
  CHECK(order_at_one({{-1, 1}, {0, 10}, {1, 1}}, p) == 0);
  CHECK(order_at_one({{-1, 1}, {0, 5}, {1, 1}}, p) == 2);  // 1 + 5 + 1 = 7
  CHECK_FALSE(order_at_one({}, p).has_value());
}

TEST_CASE("monomial bases") {
  CHECK(monomial_basis(4) == std::vector<Monomial>{{1, 0, 0, 0}});
  CHECK(monomial_basis(12) == std::vector<Monomial>{{3, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 0, 1}});
  CHECK(monomial_basis(0) == std::vector<Monomial>{{0, 0, 0, 0}});
  CHECK(monomial_basis(2).empty());
  CHECK(monomial_basis(20).size() == 5);
  CHECK_THROWS_AS(monomial_basis(7), DomainError);
  for (const auto& m : monomial_basis(36)) CHECK(m.weight() == 36);
}

TEST_CASE("membership") {
  const PrimeModulus p7(7);
  const MembershipResult r = membership_solve(reduce(igusa_generator("chi12", 4), p7), 12, 4);
  CHECK(r.consistent);
  CHECK(r.combination == std::vector<std::uint64_t>{0, 0, 1});
  const MembershipResult bad = membership_solve(reduce(igusa_generator("chi10", 4), p7), 4, 4);
  CHECK_FALSE(bad.consistent);
  CHECK(bad.residual_violations > 0);
  CHECK_THROWS_AS(membership_solve(reduce(igusa_generator("chi10", 4), p7), 4, 0), DomainError);
  CHECK_THROWS_AS(membership_solve(igusa_generator("chi10", 4), 10, 4), DomainError);
}

TEST_CASE("membership recovers random combinations") {
  std::mt19937 rng(16);
  const PrimeModulus p(13);
  const auto basis = monomial_basis(16);
  std::uniform_int_distribution<std::uint64_t> dist(0, 12);
  for (int trial = 0; trial < 10; ++trial) {
    SiegelExpansion f(16, "1", 4, p);
    std::vector<std::uint64_t> coeffs;
    for (const auto& mono : basis) {
      coeffs.push_back(dist(rng));
      f = add(f, scale(monomial_expansion(mono, 4, p), Rational(static_cast<unsigned long>(coeffs.back()))));
    }
    const MembershipResult r = membership_solve(f, 16, 4);
    CHECK(r.consistent);
    CHECK(r.rank == basis.size());
    CHECK(r.combination == coeffs);
  }
}

TEST_CASE("filtration evidence") {
  const PrimeModulus p7(7);
  const FiltrationReport r = filtration_evidence(reduce(igusa_generator("chi10", 4), p7), 10, p7, 16, 4);
  CHECK(r.weight_class == 4);
  REQUIRE(r.candidates.size() == 3);
  CHECK(r.candidates[0].weight == 4);
  CHECK_FALSE(r.candidates[0].consistent);
  CHECK(r.candidates[1].weight == 10);
  CHECK(r.candidates[1].consistent);
  CHECK(r.omega == 10);
  CHECK(r.conclusion == "omega = 10 (evidence)");

  const FiltrationReport z = filtration_evidence(SiegelExpansion(10, "1", 3, p7), 10, p7, 10, 3);
  CHECK(z.zero_form);
  CHECK_FALSE(z.omega.has_value());
  CHECK(z.candidates.front().consistent);

  const PrimeModulus p5(5);
  const FiltrationReport e = filtration_evidence(reduce(igusa_generator("E4", 4), p5), 4, p5, 8, 4);
  CHECK(e.weight_class == 0);
  CHECK(e.omega.has_value());
  CHECK_THROWS_AS(filtration_evidence(reduce(igusa_generator("E4", 4), p5), 4, p5, -1, 4), DomainError);
}

TEST_CASE("U(p) driver parameter regimes") {
  const PrimeModulus p5(5), p7(7);
  CHECK_THROWS_AS(theorem2_driver("chi10", 10, p7, 3), DomainError);   // p <= k
  CHECK_THROWS_AS(theorem2_driver("E4", 4, p5, 3, std::string("dichotomy")), DomainError);
  CHECK_THROWS_AS(theorem2_driver("E4", 6, p7, 3), DomainError);       // weight mismatch
  CHECK_THROWS_AS(theorem2_driver("F2_11", 2, p5, 3), DomainError);    // not level 1
  const Theorem2Report e4 = theorem2_driver("E4", 4, p7, 3);
  CHECK(e4.branch == "nonvanishing");
  CHECK(e4.up_nonzero);
  REQUIRE(e4.up_witness.has_value());
  CHECK(e4.up_witness->index.det() % 7 == 0);
  CHECK(e4.up_witness->index.det() > 0);
  CHECK(e4.up_witness->residue != 0);
}

TEST_CASE("U(p) driver rejects the boundary prime") {
  // k = 8: 2k - 5 = 11, and there is a weight-8 form (E4^2).
  CHECK_THROWS_AS(theorem2_driver("G8", 8, PrimeModulus(11), 2), DomainError);
}
