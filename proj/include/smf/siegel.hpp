#pragma once

// Truncated genus-2 Fourier expansions
//
//   F(tau, z, tau') = sum A(n, r, m) q^n xi^r q'^m,   n, m >= 0,  4nm - r^2 >= 0,
//
// and the operators that act on them. The index (n, r, m) corresponds to the
// even matrix T = [[2n, r], [r, 2m]], so det T = 4nm - r^2 and tr T = 2n + 2m.
//
// An expansion of box B holds every admissible coefficient with n <= B and
// m <= B. Because sums of positive semidefinite matrices stay positive
// semidefinite, products of two box-B expansions are again complete to box B.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smf/genus1.hpp"
#include "smf/scalars.hpp"

namespace smf {

struct SiegelIndex {
  long n = 0;
  long r = 0;
  long m = 0;

  long det() const { return 4 * n * m - r * r; }
  long trace() const { return 2 * n + 2 * m; }
  auto operator<=>(const SiegelIndex&) const = default;
};

std::string to_string(const SiegelIndex& t);

long isqrt(long x);

/// Flat addressing of the admissible indices of a box.
class IndexLayout {
public:
  explicit IndexLayout(int box);

  int box() const { return box_; }
  std::size_t size() const { return size_; }
  long rmax(long n, long m) const { return isqrt(4 * n * m); }
  bool contains(long n, long r, long m) const;
  /// Requires contains(n, r, m).
  std::size_t offset(long n, long r, long m) const {
    return cell_offset_[static_cast<std::size_t>(n * (box_ + 1) + m)] + static_cast<std::size_t>(r + rmax(n, m));
  }
  std::size_t cell_offset(long n, long m) const { return cell_offset_[static_cast<std::size_t>(n * (box_ + 1) + m)]; }
  /// Inverse of offset(); O(log) lookup.
  SiegelIndex index_at(std::size_t offset) const;
  /// All indices in canonical (m, n, r) order.
  std::vector<SiegelIndex> indices() const;

private:
  int box_;
  std::size_t size_ = 0;
  std::vector<std::size_t> cell_offset_;
};

/// Genus-2 expansion over Q, or over Z/p when a modulus is attached.
/// Over Z/p the stored values are the residues in [0, p).
class SiegelExpansion {
public:
  SiegelExpansion(int weight, std::string level, int box, std::optional<PrimeModulus> modulus = std::nullopt, std::string note = {});

  int weight() const { return weight_; }
  const std::string& level() const { return level_; }
  bool is_level_one() const { return level_ == "1"; }
  int box() const { return layout_.box(); }
  const IndexLayout& layout() const { return layout_; }
  const std::optional<PrimeModulus>& modulus() const { return modulus_; }
  const std::string& note() const { return note_; }
  void set_note(std::string note) { note_ = std::move(note); }
  /// Number of D applications; the formal weight is weight + 2 * d_power.
  int d_power() const { return d_power_; }
  int formal_weight() const { return weight_ + 2 * d_power_; }

  /// Zero for non-admissible indices inside the box; DomainError outside it.
  const Rational& coeff(long n, long r, long m) const;
  const Rational& coeff(const SiegelIndex& t) const { return coeff(t.n, t.r, t.m); }
  /// Over Z/p the value is reduced on the way in.
  void set(long n, long r, long m, const Rational& value);

  const std::vector<Rational>& values() const { return values_; }
  std::vector<Rational>& mutable_values() { return values_; }
  bool is_zero() const;
  std::size_t nonzero_count() const;

  SiegelExpansion restricted(int box) const;
  /// Same coefficients under a different weight/level label.
  SiegelExpansion relabeled(int weight, std::string level) const;
  SiegelExpansion with_d_power(int d_power) const;

  bool operator==(const SiegelExpansion& o) const;

private:
  int weight_;
  std::string level_;
  IndexLayout layout_;
  std::optional<PrimeModulus> modulus_;
  std::string note_;
  int d_power_ = 0;
  std::vector<Rational> values_;
};

enum class KernelMode { Parallel, Serial };

SiegelExpansion mul(const SiegelExpansion& f, const SiegelExpansion& g, KernelMode mode = KernelMode::Parallel);
SiegelExpansion add(const SiegelExpansion& f, const SiegelExpansion& g);
SiegelExpansion sub(const SiegelExpansion& f, const SiegelExpansion& g);
SiegelExpansion scale(const SiegelExpansion& f, const Rational& c);
SiegelExpansion power(const SiegelExpansion& f, unsigned e);

/// phi_m(tau, z) = sum_{n, r} A(n, r, m) q^n xi^r.
JacobiSlice fj_slice(const SiegelExpansion& f, long m);

/// W(F)(n, m) = sum_r A(n, r, m): the restriction z = 0.
class WittPair {
public:
  WittPair(int box, std::optional<PrimeModulus> modulus = std::nullopt);

  int box() const { return box_; }
  const std::optional<PrimeModulus>& modulus() const { return modulus_; }
  const Rational& at(long n, long m) const;
  void set(long n, long m, Rational value);
  bool is_zero() const;

  /// f(n) g(m) as a two-variable table.
  static WittPair tensor(const QSeries& f, const QSeries& g, int box);
  /// Returns c with *this == c * other, or nullopt when not proportional (or other is zero).
  std::optional<Rational> proportional_to(const WittPair& other) const;

  bool operator==(const WittPair& o) const = default;

private:
  int box_;
  std::optional<PrimeModulus> modulus_;
  std::vector<Rational> values_;
};

WittPair witt(const SiegelExpansion& f);
WittPair witt_product(const WittPair& a, const WittPair& b);

/// Multiplies A(n, r, m) by 4nm - r^2 (`times` times).
SiegelExpansion d_op(const SiegelExpansion& f, int times = 1);
/// Keeps the coefficients with p | 4nm - r^2 (det 0 included).
SiegelExpansion u_p(const SiegelExpansion& f, const PrimeModulus& p);

/// Least m whose slice is nonzero mod p; `box_limited` when every slice in the box vanishes,
/// in which case the true order is only known to be >= box + 1.
struct OrderResult {
  std::optional<long> order;
  bool box_limited = false;
  long lower_bound = 0;
};
OrderResult ord_p(const SiegelExpansion& f, const PrimeModulus& p);
/// Minimum coefficient valuation over the box; nullopt for the zero expansion.
std::optional<long> v_p_form(const SiegelExpansion& f, const PrimeModulus& p);

SiegelExpansion reduce(const SiegelExpansion& f, const PrimeModulus& p);

struct OrbitViolation {
  SiegelIndex index;
  SiegelIndex partner;
  std::string relation;
};
struct OrbitReport {
  bool ok = true;
  std::size_t relations_checked = 0;
  std::vector<OrbitViolation> violations;
};
/// A(n,r,m) = A(m,r,n) = A(n,-r,m) = A(n, r+2n, n+r+m) wherever both sides lie in the box.
/// Level 1 or Gamma0(N) (including raw theta series).
OrbitReport gl2_orbit_check(const SiegelExpansion& f);

}  // namespace smf
