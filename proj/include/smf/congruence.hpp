#pragma once

// Decision procedures mod p: the genus-2 Sturm gate, the Jacobi-slice gate,
// membership in the level-1 ring mod p, filtration evidence and the U(p)
// dichotomy driver.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smf/genus1.hpp"
#include "smf/linalg_modp.hpp"
#include "smf/siegel.hpp"

namespace smf {

enum class Verdict { CertifiedZero, Refuted, Inconclusive };
std::string to_string(Verdict v);

struct Witness {
  SiegelIndex index;
  std::uint64_t residue = 0;
};

struct CongruenceReport {
  Verdict verdict = Verdict::Inconclusive;
  Rational bound;       // k * index / 10 (or (k + 2m) * index / 12 for slices)
  long scan_limit = 0;  // floor(bound)
  int box = 0;
  std::vector<Witness> witnesses;
  std::uint64_t prime = 0;
  long index = 1;
  std::vector<std::string> notes;
};

/// Vanishing mod p of every A(n, r, m) with n, m <= floor(k * index / 10) certifies F = 0 mod p.
/// `f` must already be reduced mod p.
CongruenceReport sturm_gate(const SiegelExpansion& f, int k, long index);
/// sturm_gate(reduce(f - g, p), k, index).
CongruenceReport certify_congruent(const SiegelExpansion& f, const SiegelExpansion& g, const PrimeModulus& p, int k, long index);
/// Slice version: rows n <= floor((k + 2m) * index / 12).
CongruenceReport jacobi_gate(const JacobiSlice& phi, const PrimeModulus& p, int k, int m, long index);
/// Multiplicity of xi = 1 as a root of sum_r c(n, r) xi^r mod p; nullopt for the zero row.
std::optional<int> order_at_one(const std::map<long, Rational>& row, const PrimeModulus& p);

struct Monomial {
  int a = 0;  // E4
  int b = 0;  // E6
  int c = 0;  // chi10
  int d = 0;  // chi12
  int weight() const { return 4 * a + 6 * b + 10 * c + 12 * d; }
  auto operator<=>(const Monomial&) const = default;
};
std::string to_string(const Monomial& mono);

/// All E4^a E6^b chi10^c chi12^d of weight k, lexicographically descending in (a, b, c, d).
std::vector<Monomial> monomial_basis(int k);
/// The monomial's expansion to `box`, exact or reduced mod p.
SiegelExpansion monomial_expansion(const Monomial& mono, int box, const std::optional<PrimeModulus>& p);

struct MembershipResult {
  bool consistent = false;
  std::vector<Monomial> basis;
  std::vector<std::uint64_t> combination;  // coefficients mod p, basis order
  std::size_t residual_violations = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
};
/// Is F mod p a combination of the weight-j monomials on every index with n, m <= box?
MembershipResult membership_solve(const SiegelExpansion& f, int j, int box);

struct FiltrationCandidate {
  int weight = 0;
  bool consistent = false;
  std::size_t residual_violations = 0;
  std::size_t basis_size = 0;
};

struct FiltrationReport {
  int weight_class = 0;  // formal weight mod (p - 1)
  std::uint64_t prime = 0;
  std::vector<FiltrationCandidate> candidates;
  int evidence_box = 0;
  std::optional<int> omega;
  bool zero_form = false;
  std::string conclusion;
  std::vector<std::string> notes;
};
/// Tests membership for each even j = formal_weight (mod p - 1), 0 <= j <= cap, ascending.
/// Finite-box consistency only: evidence, not a certificate.
FiltrationReport filtration_evidence(const SiegelExpansion& f, int formal_weight, const PrimeModulus& p, int cap, int box);

struct Theorem2Report {
  std::string form;
  int k = 0;
  std::uint64_t prime = 0;
  int box = 0;
  std::string branch;  // "nonvanishing" (p > 2k - 5) or "dichotomy" (k < p < 2k - 5)
  bool form_nonzero = false;
  bool up_nonzero = false;
  std::optional<Witness> up_witness;
  // dichotomy branch only
  int d_iterations = 0;
  int formal_weight = 0;
  std::optional<int> predicted_omega;
  std::optional<FiltrationReport> filtration;
  bool prediction_matches = false;
  std::vector<std::string> notes;
};
/// `branch`, when given, must name the regime that (k, p) falls in.
Theorem2Report theorem2_driver(const std::string& name, int k, const PrimeModulus& p, int box,
                               const std::optional<std::string>& branch = std::nullopt);

}  // namespace smf
