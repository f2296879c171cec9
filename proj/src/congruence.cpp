#include "smf/congruence.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "smf/constructors.hpp"

namespace smf {

namespace {

constexpr std::size_t kMaxWitnesses = 256;

long floor_of(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_si();
}

std::uint64_t residue_of(const Rational& c) {
  // Values of a reduced expansion are already residues in [0, p).
  return c.get_num().get_ui();
}

const PrimeModulus& require_reduced(const SiegelExpansion& f, const char* who) {
  if (!f.modulus()) throw DomainError(std::string(who) + ": expansion must be reduced mod p first");
  return *f.modulus();
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedZero: return "certified-zero";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive-insufficient-box";
  }
  return "?";
}

CongruenceReport sturm_gate(const SiegelExpansion& f, int k, long index) {
  const PrimeModulus& p = require_reduced(f, "sturm_gate");
  if (k <= 0 || k % 2 != 0) throw DomainError("sturm_gate: weight must be even and positive, got " + std::to_string(k));
  if (index < 1) throw DomainError("sturm_gate: index must be >= 1");
  if (!f.is_level_one() && index == 1) {
    throw DomainError("sturm_gate: a level-" + f.level() + " expansion needs its subgroup index, not 1");
  }
  CongruenceReport rep;
  rep.bound = make_rational(static_cast<long>(k) * index, 10);
  rep.scan_limit = floor_of(rep.bound);
  rep.box = f.box();
  rep.prime = p.value();
  rep.index = index;
  const long limit = std::min<long>(rep.scan_limit, f.box());
  std::size_t nonzero = 0;
  for (const auto& t : f.layout().indices()) {
    if (t.n > limit || t.m > limit) continue;
    const Rational& c = f.coeff(t);
    if (sgn(c) == 0) continue;
    ++nonzero;
    if (rep.witnesses.size() < kMaxWitnesses) rep.witnesses.push_back({t, residue_of(c)});
  }
  if (nonzero > 0) {
    rep.verdict = Verdict::Refuted;
    rep.notes.push_back(std::to_string(nonzero) + " nonzero coefficient(s) mod " + std::to_string(p.value()) + " with n, m <= " + std::to_string(limit));
  } else if (f.box() < rep.scan_limit) {
    rep.verdict = Verdict::Inconclusive;
    rep.notes.push_back("box " + std::to_string(f.box()) + " is below the required bound; need every n, m <= " + std::to_string(rep.scan_limit));
  } else {
    rep.verdict = Verdict::CertifiedZero;
  }
  if (!f.is_level_one()) rep.notes.push_back("level " + f.level() + " with subgroup index " + std::to_string(index));
  return rep;
}

CongruenceReport certify_congruent(const SiegelExpansion& f, const SiegelExpansion& g, const PrimeModulus& p, int k, long index) {
  if (f.weight() != k || g.weight() != k) {
    throw DomainError("certify_congruent: both forms must have weight " + std::to_string(k) + " (got " + std::to_string(f.weight()) + " and " +
                      std::to_string(g.weight()) + ")");
  }
  if (f.level() != g.level()) throw DomainError("certify_congruent: level mismatch");
  const int box = std::min(f.box(), g.box());
  return sturm_gate(reduce(sub(f.restricted(box), g.restricted(box)), p), k, index);
}

std::optional<int> order_at_one(const std::map<long, Rational>& row, const PrimeModulus& p) {
  if (row.empty()) return std::nullopt;
  const std::uint64_t pv = p.value();
  const long lo = row.begin()->first;
  std::vector<std::uint64_t> poly(static_cast<std::size_t>(row.rbegin()->first - lo + 1), 0);
  for (const auto& [r, c] : row) poly[static_cast<std::size_t>(r - lo)] = reduce(c, p);
  if (std::all_of(poly.begin(), poly.end(), [](std::uint64_t v) { return v == 0; })) return std::nullopt;
  int order = 0;
  while (poly.size() > 1) {
    // Synthetic division by (xi - 1), highest degree first.
    std::vector<std::uint64_t> quotient(poly.size() - 1);
    std::uint64_t carry = 0;
    for (std::size_t i = poly.size(); i-- > 1;) {
      carry = (carry + poly[i]) % pv;
      quotient[i - 1] = carry;
    }
    if ((carry + poly[0]) % pv != 0) break;
    poly = std::move(quotient);
    ++order;
  }
  return order;
}

CongruenceReport jacobi_gate(const JacobiSlice& phi, const PrimeModulus& p, int k, int m, long index) {
  if (k <= 0 || k % 2 != 0) throw DomainError("jacobi_gate: weight must be even and positive");
  if (m < 0) throw DomainError("jacobi_gate: index m must be >= 0");
  if (index < 1) throw DomainError("jacobi_gate: subgroup index must be >= 1");
  CongruenceReport rep;
  rep.bound = make_rational((static_cast<long>(k) + 2L * m) * index, 12);
  rep.scan_limit = floor_of(rep.bound);
  rep.box = phi.q_bound() - 1;
  rep.prime = p.value();
  rep.index = index;
  std::size_t nonzero = 0;
  std::optional<int> min_order;
  for (const auto& [key, c] : phi.coeffs()) {
    if (key.first > rep.scan_limit) continue;
    const std::uint64_t v = reduce(c, p);
    if (v == 0) continue;
    ++nonzero;
    if (rep.witnesses.size() < kMaxWitnesses) rep.witnesses.push_back({SiegelIndex{key.first, key.second, m}, v});
  }
  for (long n = 0; n <= std::min<long>(rep.scan_limit, rep.box); ++n) {
    const auto ord = order_at_one(phi.row(n), p);
    if (ord && (!min_order || *ord < *min_order)) min_order = ord;
  }
  if (min_order) rep.notes.push_back("least order of vanishing at xi = 1 over scanned rows: " + std::to_string(*min_order));
  if (nonzero > 0) {
    rep.verdict = Verdict::Refuted;
  } else if (rep.box < rep.scan_limit) {
    rep.verdict = Verdict::Inconclusive;
    rep.notes.push_back("slice known only to q^" + std::to_string(rep.box) + "; need rows up to " + std::to_string(rep.scan_limit));
  } else {
    rep.verdict = Verdict::CertifiedZero;
  }
  return rep;
}

std::string to_string(const Monomial& mono) {
  std::string s;
  const auto part = [&](const char* name, int e) {
    if (e == 0) return;
    if (!s.empty()) s += " ";
    s += name;
    if (e > 1) s += "^" + std::to_string(e);
  };
  part("E4", mono.a);
  part("E6", mono.b);
  part("chi10", mono.c);
  part("chi12", mono.d);
  return s.empty() ? "1" : s;
}

std::vector<Monomial> monomial_basis(int k) {
  if (k < 0 || k % 2 != 0) throw DomainError("monomial_basis: weight must be even and nonnegative, got " + std::to_string(k));
  std::vector<Monomial> out;
  for (int a = k / 4; a >= 0; --a) {
    for (int b = (k - 4 * a) / 6; b >= 0; --b) {
      for (int c = (k - 4 * a - 6 * b) / 10; c >= 0; --c) {
        const int rest = k - 4 * a - 6 * b - 10 * c;
        if (rest % 12 == 0) out.push_back({a, b, c, rest / 12});
      }
    }
  }
  return out;
}

SiegelExpansion monomial_expansion(const Monomial& mono, int box, const std::optional<PrimeModulus>& p) {
  using Key = std::tuple<int, int, int, int, int, std::uint64_t>;
  static std::map<Key, SiegelExpansion> cache;
  static std::mutex mu;
  const Key key{mono.a, mono.b, mono.c, mono.d, box, p ? p->value() : 0};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  SiegelExpansion out(0, "1", box, p);
  if (mono.a + mono.b + mono.c + mono.d == 0) {
    out.set(0, 0, 0, 1);
  } else {
    // Peel one generator off and recurse so shared prefixes are reused.
    Monomial rest = mono;
    const char* gen = nullptr;
    if (rest.d > 0) { --rest.d; gen = "chi12"; }
    else if (rest.c > 0) { --rest.c; gen = "chi10"; }
    else if (rest.b > 0) { --rest.b; gen = "E6"; }
    else { --rest.a; gen = "E4"; }
    SiegelExpansion g = igusa_generator(gen, box);
    if (p) g = reduce(g, *p);
    out = mul(monomial_expansion(rest, box, p), g);
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(out)).first->second;
}

MembershipResult membership_solve(const SiegelExpansion& f, int j, int box) {
  const PrimeModulus& p = require_reduced(f, "membership_solve");
  if (!f.is_level_one()) throw DomainError("membership_solve: level-1 expansions only");
  if (box < 1) throw DomainError("membership_solve: box must be >= 1");
  if (box > f.box()) throw DomainError("membership_solve: box " + std::to_string(box) + " exceeds the expansion's box " + std::to_string(f.box()));
  MembershipResult res;
  res.basis = monomial_basis(j);
  const IndexLayout layout(box);
  const auto idx = layout.indices();
  res.equations = idx.size();
  ModMatrix a(idx.size(), res.basis.size());
  std::vector<std::uint64_t> rhs(idx.size());
  for (std::size_t col = 0; col < res.basis.size(); ++col) {
    const SiegelExpansion g = monomial_expansion(res.basis[col], box, p);
    for (std::size_t row = 0; row < idx.size(); ++row) a.at(row, col) = residue_of(g.coeff(idx[row]));
  }
  for (std::size_t row = 0; row < idx.size(); ++row) rhs[row] = residue_of(f.coeff(idx[row]));
  const ModSolution sol = solve_mod_p(a, rhs, p.value());
  res.consistent = sol.consistent;
  res.combination = sol.x;
  res.residual_violations = sol.residual_violations;
  res.rank = sol.rank;
  return res;
}

FiltrationReport filtration_evidence(const SiegelExpansion& f, int formal_weight, const PrimeModulus& p, int cap, int box) {
  require_reduced(f, "filtration_evidence");
  if (formal_weight % 2 != 0) throw DomainError("filtration_evidence: formal weight must be even");
  if (cap < 0) throw DomainError("filtration_evidence: cap must be >= 0");
  FiltrationReport rep;
  const int pm1 = static_cast<int>(p.value() - 1);
  rep.prime = p.value();
  rep.weight_class = ((formal_weight % pm1) + pm1) % pm1;
  rep.evidence_box = box;
  rep.notes.push_back("candidates are restricted to the residue class of the formal weight mod p - 1");
  rep.notes.push_back("membership is tested on n, m <= " + std::to_string(box) + " only; consistency is evidence, not proof");
  const SiegelExpansion g = f.restricted(box);
  rep.zero_form = g.is_zero();
  for (int j = rep.weight_class; j <= cap; j += pm1) {
    const MembershipResult m = membership_solve(g, j, box);
    rep.candidates.push_back({j, m.consistent, m.residual_violations, m.basis.size()});
    if (m.consistent && !rep.omega && !rep.zero_form) rep.omega = j;
  }
  if (rep.zero_form) {
    rep.conclusion = "F = 0 on the box; omega undefined (-infinity convention)";
  } else if (rep.omega) {
    rep.conclusion = "omega = " + std::to_string(*rep.omega) + " (evidence)";
  } else {
    rep.conclusion = "no candidate <= " + std::to_string(cap);
  }
  return rep;
}

Theorem2Report theorem2_driver(const std::string& name, int k, const PrimeModulus& p, int box, const std::optional<std::string>& branch) {
  if (branch && *branch != "nonvanishing" && *branch != "dichotomy") throw DomainError("theorem2: unknown branch '" + *branch + "'");
  if (!is_catalog_name(name)) throw DomainError("theorem2: unknown form '" + name + "'");
  if (k <= 0 || k % 2 != 0) throw DomainError("theorem2: weight must be even and positive");
  const long pl = static_cast<long>(p.value());
  if (pl <= k) throw DomainError("theorem2: requires p > k (p = " + std::to_string(pl) + ", k = " + std::to_string(k) + ")");
  if (pl == 2L * k - 5) throw DomainError("theorem2: p = 2k - 5 lies on the boundary between the two branches");
  const std::string regime = pl > 2L * k - 5 ? "nonvanishing" : "dichotomy";
  if (branch && *branch != regime) {
    throw DomainError(*branch == "dichotomy" ? "theorem2: empty regime k<p<2k-5 for k = " + std::to_string(k) + ", p = " + std::to_string(pl)
                                             : "theorem2: p = " + std::to_string(pl) + " is not > 2k - 5 = " + std::to_string(2 * k - 5));
  }
  const SiegelExpansion f = catalog_form(name, box);
  if (!f.is_level_one()) throw DomainError("theorem2: '" + name + "' is not a level-1 form");
  if (f.weight() != k) throw DomainError("theorem2: '" + name + "' has weight " + std::to_string(f.weight()) + ", not " + std::to_string(k));
  const auto v = v_p_form(f, p);
  if (v && *v < 0) throw DomainError("theorem2: '" + name + "' is not p-integral");

  Theorem2Report rep;
  rep.form = name;
  rep.k = k;
  rep.prime = p.value();
  rep.box = box;
  const SiegelExpansion fr = reduce(f, p);
  rep.form_nonzero = !fr.is_zero();
  if (!rep.form_nonzero) {
    rep.notes.push_back("hypothesis not met on the box: F vanishes mod p for n, m <= " + std::to_string(box));
  }
  const SiegelExpansion up = u_p(fr, p);
  // Prefer a witness with det T > 0; p | 0 makes every singular coefficient survive U(p).
  for (const auto& t : up.layout().indices()) {
    const Rational& c = up.coeff(t);
    if (sgn(c) == 0) continue;
    if (!rep.up_witness || (rep.up_witness->index.det() == 0 && t.det() > 0)) rep.up_witness = Witness{t, residue_of(c)};
    if (t.det() > 0) break;
  }
  rep.up_nonzero = rep.up_witness.has_value();
  if (!rep.up_nonzero) {
    rep.notes.push_back("no nonzero coefficient of F | U(p) mod p with n, m <= " + std::to_string(box) + " (box exhausted)");
  }
  if (pl > 2L * k - 5) {
    rep.branch = "nonvanishing";
    rep.prediction_matches = rep.up_nonzero;
    return rep;
  }
  rep.branch = "dichotomy";
  rep.d_iterations = static_cast<int>((3 * pl + 3) / 2 - k);
  const SiegelExpansion da = d_op(fr, rep.d_iterations);
  rep.formal_weight = da.formal_weight();
  rep.predicted_omega = static_cast<int>(rep.up_nonzero ? 3 * pl - k + 3 : 2 * pl - k + 4);
  const int cap = static_cast<int>(3 * pl - k + 3 + pl - 1);
  rep.filtration = filtration_evidence(da, rep.formal_weight, p, cap, box);
  rep.prediction_matches = rep.filtration->omega && *rep.filtration->omega == *rep.predicted_omega;
  return rep;
}

}  // namespace smf
