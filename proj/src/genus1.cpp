#include "smf/genus1.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace smf {

QSeries::QSeries(Rational shift, std::vector<Rational> coeffs) : shift_(std::move(shift)), coeffs_(std::move(coeffs)) {
  if (24 % shift_.get_den() != 0) throw DomainError("q-series shift " + to_string(shift_) + " has denominator not dividing 24");
}

const Rational& QSeries::coeff(int e) const {
  if (e < 0 || e >= bound()) throw DomainError("q-series coefficient " + std::to_string(e) + " beyond precision " + std::to_string(bound()));
  return coeffs_[static_cast<std::size_t>(e)];
}

QSeries QSeries::truncated(int bound) const {
  if (bound > this->bound()) throw DomainError("cannot extend q-series precision by truncation");
  return QSeries(shift_, std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + bound));
}

QSeries QSeries::normalized() const {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead == coeffs_.size()) return *this;
  return QSeries(shift_ + static_cast<long>(lead), std::vector<Rational>(coeffs_.begin() + static_cast<long>(lead), coeffs_.end()));
}

QSeries QSeries::reciprocal() const {
  if (coeffs_.empty() || (coeffs_[0] != 1 && coeffs_[0] != -1)) {
    throw DomainError("reciprocal needs a unit leading coefficient");
  }
  const std::size_t n = coeffs_.size();
  const Rational lead_inv = 1 / coeffs_[0];
  std::vector<Rational> inv(n);
  inv[0] = lead_inv;
  for (std::size_t i = 1; i < n; ++i) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= i; ++j) {
      if (coeffs_[j] != 0) acc += coeffs_[j] * inv[i - j];
    }
    inv[i] = -acc * lead_inv;
  }
  return QSeries(-shift_, std::move(inv));
}

QSeries QSeries::scaled(const Rational& c) const {
  std::vector<Rational> out(coeffs_);
  for (auto& x : out) x *= c;
  return QSeries(shift_, std::move(out));
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  if (a.shift_ != b.shift_) throw DomainError("adding q-series with different shifts");
  const int n = std::min(a.bound(), b.bound());
  std::vector<Rational> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = a.coeffs_[i] + b.coeffs_[i];
  return QSeries(a.shift_, std::move(out));
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + b.scaled(-1); }

QSeries operator*(const QSeries& a, const QSeries& b) {
  const int n = std::min(a.bound(), b.bound());
  std::vector<Rational> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; i + j < n; ++j) {
      if (b.coeffs_[j] != 0) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return QSeries(a.shift_ + b.shift_, std::move(out));
}

QSeries eta_pow6(int bound) {
  if (bound < 1) throw DomainError("eta_pow6: bound must be >= 1");
  // Euler's pentagonal series for prod (1 - q^n).
  std::vector<Rational> pent(static_cast<std::size_t>(bound));
  for (long k = 0;; ++k) {
    bool any = false;
    for (long j : {k, -k}) {
      const long e = j * (3 * j - 1) / 2;
      if (e < bound) {
        pent[e] = (j % 2 == 0) ? 1 : -1;
        any = true;
      }
    }
    if (!any) break;
  }
  const QSeries p(0, std::move(pent));
  const QSeries p2 = p * p;
  const QSeries p6 = p2 * p2 * p2;
  return QSeries(make_rational(1, 4), p6.coeffs());
}

QSeries eisenstein_q(int k, int bound) {
  if (k < 4 || k % 2 != 0) throw DomainError("eisenstein_q: weight must be even and >= 4, got " + std::to_string(k));
  if (bound < 1) throw DomainError("eisenstein_q: bound must be >= 1");
  const Rational factor = Rational(-2 * k) / bernoulli(k);
  std::vector<Rational> c(static_cast<std::size_t>(bound));
  c[0] = 1;
  for (int n = 1; n < bound; ++n) c[n] = factor * Rational(divisor_sigma(n, k - 1));
  return QSeries(0, std::move(c));
}

QSeries delta_q(int bound) {
  if (bound < 2) throw DomainError("delta_q: bound must be >= 2");
  const QSeries e4 = eisenstein_q(4, bound);
  const QSeries e6 = eisenstein_q(6, bound);
  QSeries d = (e4 * e4 * e4 - e6 * e6).scaled(make_rational(1, 1728));
  for (const auto& c : d.coeffs()) {
    if (c.get_den() != 1) throw IntegrityError("Delta has a non-integral coefficient");
  }
  return d;
}

JacobiSlice::JacobiSlice(int weight, int index, int q_bound, bool weak)
    : weight_(weight), index_(index), q_bound_(q_bound), weak_(weak) {
  if (index < 0) throw DomainError("Jacobi index must be nonnegative");
  if (q_bound < 0) throw DomainError("Jacobi q-bound must be nonnegative");
}

Rational JacobiSlice::coeff(long n, long r) const {
  if (n < 0) return 0;
  if (n >= q_bound_) {
    throw DomainError("Jacobi coefficient at q^" + std::to_string(n) + " beyond precision " + std::to_string(q_bound_));
  }
  auto it = coeffs_.find({n, r});
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void JacobiSlice::set(long n, long r, Rational value) {
  if (n < 0 || n >= q_bound_) throw DomainError("Jacobi coefficient index out of range");
  if (value == 0) {
    coeffs_.erase({n, r});
  } else {
    coeffs_[{n, r}] = std::move(value);
  }
}

void JacobiSlice::add_to(long n, long r, const Rational& value) {
  if (value == 0) return;
  auto [it, inserted] = coeffs_.try_emplace({n, r}, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) coeffs_.erase(it);
  }
}

std::map<long, Rational> JacobiSlice::row(long n) const {
  std::map<long, Rational> out;
  for (auto it = coeffs_.lower_bound({n, std::numeric_limits<long>::min()}); it != coeffs_.end() && it->first.first == n; ++it) {
    out.emplace(it->first.second, it->second);
  }
  return out;
}

void JacobiSlice::check_envelope() const {
  const long m = index_;
  for (const auto& [key, value] : coeffs_) {
    const auto [n, r] = key;
    const long disc = 4 * n * m - r * r;
    const bool ok = weak_ ? (-disc <= m * m + m) : (disc >= 0);
    if (!ok) {
      throw IntegrityError("Jacobi slice (k=" + std::to_string(weight_) + ", m=" + std::to_string(m) + ") has coefficient at (n=" +
                           std::to_string(n) + ", r=" + std::to_string(r) + ") outside its " + (weak_ ? "weak" : "holomorphic") + " envelope");
    }
  }
}

bool JacobiSlice::is_symmetric() const {
  for (const auto& [key, value] : coeffs_) {
    auto it = coeffs_.find({key.first, -key.second});
    if (it == coeffs_.end() || it->second != value) return false;
  }
  return true;
}

JacobiSlice JacobiSlice::truncated(int q_bound) const {
  if (q_bound > q_bound_) throw DomainError("cannot extend Jacobi precision by truncation");
  JacobiSlice out(weight_, index_, q_bound, weak_);
  for (const auto& [key, value] : coeffs_) {
    if (key.first < q_bound) out.coeffs_.emplace(key, value);
  }
  return out;
}

JacobiSlice JacobiSlice::with_weak(bool weak) const {
  JacobiSlice out = *this;
  out.weak_ = weak;
  return out;
}

JacobiSlice slice_add(const JacobiSlice& a, const JacobiSlice& b) {
  if (a.weight_ != b.weight_ || a.index_ != b.index_) {
    throw DomainError("slice_add: (weight, index) mismatch (" + std::to_string(a.weight_) + "," + std::to_string(a.index_) + ") vs (" +
                      std::to_string(b.weight_) + "," + std::to_string(b.index_) + ")");
  }
  JacobiSlice out(a.weight_, a.index_, std::min(a.q_bound_, b.q_bound_), a.weak_ || b.weak_);
  for (const JacobiSlice* s : {&a, &b}) {
    for (const auto& [key, value] : s->coeffs_) {
      if (key.first < out.q_bound_) out.add_to(key.first, key.second, value);
    }
  }
  return out;
}

JacobiSlice slice_scale(const JacobiSlice& a, const Rational& c) {
  JacobiSlice out(a.weight_, a.index_, a.q_bound_, a.weak_);
  if (c == 0) return out;
  for (const auto& [key, value] : a.coeffs_) out.coeffs_.emplace(key, value * c);
  return out;
}

JacobiSlice slice_mul(const JacobiSlice& a, const JacobiSlice& b) {
  JacobiSlice out(a.weight_ + b.weight_, a.index_ + b.index_, std::min(a.q_bound_, b.q_bound_), a.weak_ || b.weak_);
  for (const auto& [ka, va] : a.coeffs_) {
    if (ka.first >= out.q_bound_) continue;
    for (const auto& [kb, vb] : b.coeffs_) {
      const long n = ka.first + kb.first;
      if (n >= out.q_bound_) continue;
      out.add_to(n, ka.second + kb.second, va * vb);
    }
  }
  return out;
}

JacobiSlice slice_mul(const QSeries& f, int f_weight, const JacobiSlice& a) {
  if (f.shift().get_den() != 1 || f.shift() < 0) throw DomainError("slice_mul: q-series must have a nonnegative integral shift");
  const long shift = f.shift().get_num().get_si();
  JacobiSlice out(a.weight_ + f_weight, a.index_, std::min(a.q_bound_, f.bound() + static_cast<int>(shift)), a.weak_);
  for (const auto& [key, value] : a.coeffs_) {
    for (long e = 0; key.first + shift + e < out.q_bound_; ++e) {
      const Rational& c = f.coeffs()[static_cast<std::size_t>(e)];
      if (c != 0) out.add_to(key.first + shift + e, key.second, value * c);
    }
  }
  return out;
}

namespace {

// Two-variable table keyed by (power of the series variable, power of xi).
using Grid = std::map<std::pair<long, long>, Rational>;

long theta_range(int bound) { return static_cast<long>(std::ceil(std::sqrt(2.0 * bound))) + 2; }

Grid grid_times_series(const Grid& g, const QSeries& s, long bound) {
  Grid out;
  for (const auto& [key, value] : g) {
    for (long e = 0; key.first + e < bound && e < s.bound(); ++e) {
      const Rational& c = s.coeffs()[static_cast<std::size_t>(e)];
      if (c == 0) continue;
      Rational& slot = out[{key.first + e, key.second}];
      slot += value * c;
    }
  }
  return out;
}

void grid_accumulate(Grid& into, const Grid& from, const Rational& scale) {
  for (const auto& [key, value] : from) into[key] += value * scale;
}

// (sum_a sign^a t^{a^2 + offset*a})^2 and its xi-refined numerator
// sum_{a,b} sign^{a+b} t^{a^2+b^2+offset(a+b)} xi^{a+b+offset}, truncated at t^bound.
struct ThetaSquare {
  Grid numerator;
  QSeries denominator;
};

ThetaSquare theta_square(long bound, int sign, int offset) {
  const long range = theta_range(static_cast<int>(bound));
  std::vector<Rational> den1(static_cast<std::size_t>(bound));
  ThetaSquare out;
  for (long a = -range; a <= range; ++a) {
    const long ea = a * a + offset * a;
    if (ea >= bound) continue;
    den1[ea] += (sign < 0 && (a % 2 != 0)) ? -1 : 1;
    for (long b = -range; b <= range; ++b) {
      const long e = ea + b * b + offset * b;
      if (e >= bound) continue;
      const bool negative = sign < 0 && ((a + b) % 2 != 0);
      out.numerator[{e, a + b + offset}] += negative ? -1 : 1;
    }
  }
  const QSeries d(0, std::move(den1));
  out.denominator = d * d;
  return out;
}

JacobiSlice grid_to_slice(const Grid& g, int weight, int index, int q_bound, bool weak, long t_per_q) {
  JacobiSlice out(weight, index, q_bound, weak);
  for (const auto& [key, value] : g) {
    if (value == 0) continue;
    if (key.first % t_per_q != 0) throw IntegrityError("theta quotient left a fractional q-power");
    const long n = key.first / t_per_q;
    if (n < q_bound) out.set(n, key.second, value);
  }
  return out;
}

}  // namespace

JacobiSlice weak_jacobi_m2(int q_bound) {
  if (q_bound < 1) throw DomainError("weak_jacobi_m2: q-bound must be >= 1");
  // theta11(tau,z)^2 = q^{1/4} sum_{a,b} (-1)^{a+b} q^{(a^2+a+b^2+b)/2} xi^{a+b+1}; substitute t = q^{1/2}.
  const long t_bound = 2L * q_bound;
  ThetaSquare th = theta_square(t_bound, -1, 1);
  const QSeries eta6 = eta_pow6(q_bound);
  if (eta6.shift() != make_rational(1, 4)) throw IntegrityError("eta^6 shift mismatch");
  // eta^6 / q^{1/4} in t: spread the q-coefficients onto even t-powers.
  std::vector<Rational> eta_t(static_cast<std::size_t>(t_bound));
  for (int e = 0; e < q_bound; ++e) eta_t[2 * e] = eta6.coeff(e);
  const Grid quotient = grid_times_series(th.numerator, QSeries(0, std::move(eta_t)).reciprocal(), t_bound);
  JacobiSlice out = grid_to_slice(quotient, -2, 1, q_bound, true, 2);
  out.check_envelope();
  if (out.coeff(0, 1) != 1 || out.coeff(0, 0) != -2 || out.coeff(0, -1) != 1) {
    throw IntegrityError("phi_{-2,1} leading row is not xi - 2 + xi^-1");
  }
  return out;
}

JacobiSlice weak_jacobi_0(int q_bound) {
  if (q_bound < 1) throw DomainError("weak_jacobi_0: q-bound must be >= 1");
  const long t_bound = 2L * q_bound;
  Grid total;
  // theta3 and theta4: t = q^{1/2}, exponents a^2 + b^2.
  for (int sign : {1, -1}) {
    ThetaSquare th = theta_square(t_bound, sign, 0);
    grid_accumulate(total, grid_times_series(th.numerator, th.denominator.reciprocal(), t_bound), 1);
  }
  // theta2: the common q^{1/8} per factor cancels; remaining exponents (a^2+a)/2 live on even t-powers.
  {
    ThetaSquare th = theta_square(t_bound, 1, 1);
    const Rational lead = th.denominator.coeff(0);  // = 4
    const QSeries unit_den = th.denominator.scaled(1 / lead);
    grid_accumulate(total, grid_times_series(th.numerator, unit_den.reciprocal(), t_bound), 1 / lead);
  }
  JacobiSlice out = grid_to_slice(total, 0, 1, q_bound, true, 2);
  out = slice_scale(out, 4);
  out.check_envelope();
  if (out.coeff(0, 1) != 1 || out.coeff(0, 0) != 10 || out.coeff(0, -1) != 1) {
    throw IntegrityError("phi_{0,1} leading row is not xi + 10 + xi^-1");
  }
  return out;
}

JacobiEisenstein jacobi_eisenstein_with_weights(int k, int q_bound) {
  if (k != 4 && k != 6) throw DomainError("jacobi_eisenstein: k must be 4 or 6, got " + std::to_string(k));
  const QSeries ek = eisenstein_q(k, q_bound);
  const QSeries ek2 = (k == 4) ? eisenstein_q(6, q_bound) : eisenstein_q(4, q_bound) * eisenstein_q(4, q_bound);
  const JacobiSlice a = slice_mul(ek, k, weak_jacobi_0(q_bound));
  const JacobiSlice b = slice_mul(ek2, k + 2, weak_jacobi_m2(q_bound));
  // alpha * a + beta * b with c(0,0) = 1 and c(0,1) = 0.
  const Rational a00 = a.coeff(0, 0), a01 = a.coeff(0, 1);
  const Rational b00 = b.coeff(0, 0), b01 = b.coeff(0, 1);
  const Rational det = a00 * b01 - b00 * a01;
  if (det == 0) throw IntegrityError("jacobi_eisenstein: singular normalization system");
  const Rational alpha = b01 / det;
  const Rational beta = -a01 / det;
  JacobiSlice e = slice_add(slice_scale(a, alpha), slice_scale(b, beta)).with_weak(false);
  e.check_envelope();
  return {std::move(e), alpha, beta};
}

JacobiSlice jacobi_eisenstein(int k, int q_bound) { return jacobi_eisenstein_with_weights(k, q_bound).slice; }

}  // namespace smf
