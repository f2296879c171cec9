#pragma once

// Genus-1 q-expansions and index-m Jacobi form slices.

#include <map>
#include <utility>
#include <vector>

#include "smf/scalars.hpp"

namespace smf {

/// q^shift * sum_{e >= 0} coeffs[e] q^e, known for all e < bound.
class QSeries {
public:
  QSeries() = default;
  QSeries(Rational shift, std::vector<Rational> coeffs);

  const Rational& shift() const { return shift_; }
  int bound() const { return static_cast<int>(coeffs_.size()); }
  const Rational& coeff(int e) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  QSeries truncated(int bound) const;
  /// Moves leading zero coefficients into the shift.
  QSeries normalized() const;
  /// Requires coeff(0) = +-1.
  QSeries reciprocal() const;
  QSeries scaled(const Rational& c) const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);

private:
  Rational shift_{0};
  std::vector<Rational> coeffs_;
};

QSeries eta_pow6(int bound);
/// Level-1 Eisenstein series 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
QSeries eisenstein_q(int k, int bound);
QSeries delta_q(int bound);

/// One Fourier-Jacobi coefficient: sum c(n, r) q^n xi^r with integer n in [0, q_bound).
class JacobiSlice {
public:
  using Key = std::pair<long, long>;  // (n, r)

  JacobiSlice(int weight, int index, int q_bound, bool weak);

  int weight() const { return weight_; }
  int index() const { return index_; }
  int q_bound() const { return q_bound_; }
  bool weak() const { return weak_; }

  /// Zero outside the stored support; throws DomainError for n >= q_bound.
  Rational coeff(long n, long r) const;
  void set(long n, long r, Rational value);
  void add_to(long n, long r, const Rational& value);
  const std::map<Key, Rational>& coeffs() const { return coeffs_; }
  std::map<long, Rational> row(long n) const;
  bool is_zero() const { return coeffs_.empty(); }

  /// Throws IntegrityError when a nonzero coefficient leaves the support envelope
  /// (4nm - r^2 >= 0 for holomorphic slices, r^2 - 4nm <= m^2 + m for weak ones).
  void check_envelope() const;
  bool is_symmetric() const;

  JacobiSlice truncated(int q_bound) const;
  JacobiSlice with_weak(bool weak) const;

  friend JacobiSlice slice_add(const JacobiSlice& a, const JacobiSlice& b);
  friend JacobiSlice slice_scale(const JacobiSlice& a, const Rational& c);
  friend JacobiSlice slice_mul(const JacobiSlice& a, const JacobiSlice& b);
  /// Multiplies by a genus-1 modular form of the given weight (integral shift only).
  friend JacobiSlice slice_mul(const QSeries& f, int f_weight, const JacobiSlice& a);

  bool operator==(const JacobiSlice& o) const = default;

private:
  int weight_;
  int index_;
  int q_bound_;
  bool weak_;
  std::map<Key, Rational> coeffs_;
};

JacobiSlice weak_jacobi_m2(int q_bound);
JacobiSlice weak_jacobi_0(int q_bound);

struct JacobiEisenstein {
  JacobiSlice slice;
  Rational alpha;  // coefficient of E_k * phi_{0,1}
  Rational beta;   // coefficient of E_{k+2} * phi_{-2,1}
};
JacobiEisenstein jacobi_eisenstein_with_weights(int k, int q_bound);
JacobiSlice jacobi_eisenstein(int k, int q_bound);

}  // namespace smf
