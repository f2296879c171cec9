#include "smf/siegel.hpp"

#include <algorithm>
#include <cmath>

#include "smf/kernels.hpp"

namespace smf {

std::string to_string(const SiegelIndex& t) {
  return "(" + std::to_string(t.n) + "," + std::to_string(t.r) + "," + std::to_string(t.m) + ")";
}

long isqrt(long x) {
  if (x <= 0) return 0;
  long s = static_cast<long>(std::sqrt(static_cast<double>(x)));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return s;
}

IndexLayout::IndexLayout(int box) : box_(box) {
  if (box < 0) throw DomainError("box must be nonnegative");
  cell_offset_.resize(static_cast<std::size_t>((box + 1) * (box + 1)));
  for (long n = 0; n <= box; ++n) {
    for (long m = 0; m <= box; ++m) {
      cell_offset_[static_cast<std::size_t>(n * (box + 1) + m)] = size_;
      size_ += static_cast<std::size_t>(2 * rmax(n, m) + 1);
    }
  }
}

bool IndexLayout::contains(long n, long r, long m) const {
  return n >= 0 && m >= 0 && n <= box_ && m <= box_ && r * r <= 4 * n * m;
}

SiegelIndex IndexLayout::index_at(std::size_t offset) const {
  auto it = std::upper_bound(cell_offset_.begin(), cell_offset_.end(), offset);
  const auto cell = static_cast<long>(std::distance(cell_offset_.begin(), it) - 1);
  const long n = cell / (box_ + 1), m = cell % (box_ + 1);
  return {n, static_cast<long>(offset - cell_offset_[static_cast<std::size_t>(cell)]) - rmax(n, m), m};
}

std::vector<SiegelIndex> IndexLayout::indices() const {
  std::vector<SiegelIndex> out;
  out.reserve(size_);
  for (long m = 0; m <= box_; ++m) {
    for (long n = 0; n <= box_; ++n) {
      const long R = rmax(n, m);
      for (long r = -R; r <= R; ++r) out.push_back({n, r, m});
    }
  }
  return out;
}

SiegelExpansion::SiegelExpansion(int weight, std::string level, int box, std::optional<PrimeModulus> modulus, std::string note)
    : weight_(weight), level_(std::move(level)), layout_(box), modulus_(modulus), note_(std::move(note)), values_(layout_.size()) {}

const Rational& SiegelExpansion::coeff(long n, long r, long m) const {
  static const Rational zero(0);
  if (n < 0 || m < 0 || n > box() || m > box()) {
    throw DomainError("index " + to_string(SiegelIndex{n, r, m}) + " lies outside box " + std::to_string(box()));
  }
  if (r * r > 4 * n * m) return zero;
  return values_[layout_.offset(n, r, m)];
}

void SiegelExpansion::set(long n, long r, long m, const Rational& value) {
  if (!layout_.contains(n, r, m)) throw DomainError("cannot store coefficient at " + to_string(SiegelIndex{n, r, m}));
  Rational& slot = values_[layout_.offset(n, r, m)];
  if (modulus_) {
    slot = Rational(static_cast<unsigned long>(reduce(value, *modulus_)));
  } else {
    slot = value;
  }
}

bool SiegelExpansion::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::size_t SiegelExpansion::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(), [](const Rational& x) { return sgn(x) != 0; }));
}

SiegelExpansion SiegelExpansion::restricted(int box) const {
  if (box > this->box()) throw DomainError("cannot restrict box " + std::to_string(this->box()) + " to larger box " + std::to_string(box));
  if (box == this->box()) return *this;
  SiegelExpansion out(weight_, level_, box, modulus_, note_);
  out.d_power_ = d_power_;
  for (long n = 0; n <= box; ++n) {
    for (long m = 0; m <= box; ++m) {
      const std::size_t src = layout_.cell_offset(n, m), dst = out.layout_.cell_offset(n, m);
      const long width = 2 * layout_.rmax(n, m) + 1;
      std::copy_n(values_.begin() + static_cast<long>(src), width, out.values_.begin() + static_cast<long>(dst));
    }
  }
  return out;
}

SiegelExpansion SiegelExpansion::relabeled(int weight, std::string level) const {
  SiegelExpansion out = *this;
  out.weight_ = weight;
  out.level_ = std::move(level);
  return out;
}

SiegelExpansion SiegelExpansion::with_d_power(int d_power) const {
  SiegelExpansion out = *this;
  out.d_power_ = d_power;
  return out;
}

bool SiegelExpansion::operator==(const SiegelExpansion& o) const {
  return weight_ == o.weight_ && level_ == o.level_ && box() == o.box() && modulus_ == o.modulus_ && d_power_ == o.d_power_ &&
         values_ == o.values_;
}

namespace {

void require_same_ring(const SiegelExpansion& f, const SiegelExpansion& g, const char* op) {
  if (f.modulus() != g.modulus()) throw DomainError(std::string(op) + ": operands live over different coefficient rings");
}

std::string combined_level(const SiegelExpansion& f, const SiegelExpansion& g) {
  if (f.level() == g.level() || g.is_level_one()) return f.level();
  if (f.is_level_one()) return g.level();
  throw DomainError("cannot combine expansions of levels '" + f.level() + "' and '" + g.level() + "'");
}

std::vector<std::uint64_t> residues(const std::vector<Rational>& v) {
  std::vector<std::uint64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num().get_ui();
  return out;
}

}  // namespace

SiegelExpansion mul(const SiegelExpansion& f, const SiegelExpansion& g, KernelMode mode) {
  require_same_ring(f, g, "mul");
  const int box = std::min(f.box(), g.box());
  const SiegelExpansion a = f.restricted(box), b = g.restricted(box);
  SiegelExpansion out(f.weight() + g.weight(), combined_level(f, g), box, f.modulus());
  out = out.with_d_power(f.d_power() + g.d_power());
  const IndexLayout& layout = out.layout();
  if (f.modulus()) {
    const std::uint64_t p = f.modulus()->value();
    const auto ra = residues(a.values()), rb = residues(b.values());
    const auto prod = mode == KernelMode::Parallel ? kernels::mul_modp_parallel(layout, ra, rb, p) : kernels::mul_modp_serial(layout, ra, rb, p);
    auto& vals = out.mutable_values();
    for (std::size_t i = 0; i < prod.size(); ++i) vals[i] = Rational(static_cast<unsigned long>(prod[i]));
  } else {
    out.mutable_values() = mode == KernelMode::Parallel ? kernels::mul_exact_parallel(layout, a.values(), b.values())
                                                        : kernels::mul_exact_serial(layout, a.values(), b.values());
  }
  return out;
}

SiegelExpansion add(const SiegelExpansion& f, const SiegelExpansion& g) {
  require_same_ring(f, g, "add");
  if (f.weight() != g.weight() || f.d_power() != g.d_power()) {
    throw DomainError("add: weight mismatch (" + std::to_string(f.formal_weight()) + " vs " + std::to_string(g.formal_weight()) + ")");
  }
  const int box = std::min(f.box(), g.box());
  SiegelExpansion out = f.restricted(box);
  out = out.relabeled(f.weight(), combined_level(f, g));
  out.set_note({});
  const SiegelExpansion b = g.restricted(box);
  auto& vals = out.mutable_values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] += b.values()[i];
    if (f.modulus()) {
      const std::uint64_t p = f.modulus()->value();
      if (vals[i] >= p) vals[i] -= p;
    }
  }
  return out;
}

SiegelExpansion scale(const SiegelExpansion& f, const Rational& c) {
  SiegelExpansion out = f;
  out.set_note({});
  auto& vals = out.mutable_values();
  if (f.modulus()) {
    const std::uint64_t p = f.modulus()->value();
    const std::uint64_t cr = reduce(c, *f.modulus());
    for (auto& v : vals) v = Rational(static_cast<unsigned long>(mul_mod(v.get_num().get_ui(), cr, p)));
  } else {
    for (auto& v : vals) v *= c;
  }
  return out;
}

SiegelExpansion sub(const SiegelExpansion& f, const SiegelExpansion& g) { return add(f, scale(g, -1)); }

SiegelExpansion power(const SiegelExpansion& f, unsigned e) {
  SiegelExpansion result(0, f.level(), f.box(), f.modulus());
  result.set(0, 0, 0, 1);
  SiegelExpansion base = f;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

JacobiSlice fj_slice(const SiegelExpansion& f, long m) {
  if (m < 0 || m > f.box()) throw DomainError("slice m=" + std::to_string(m) + " not complete in box " + std::to_string(f.box()));
  JacobiSlice out(f.weight(), static_cast<int>(m), f.box() + 1, false);
  const IndexLayout& layout = f.layout();
  for (long n = 0; n <= f.box(); ++n) {
    const long R = layout.rmax(n, m);
    for (long r = -R; r <= R; ++r) out.set(n, r, f.coeff(n, r, m));
  }
  return out;
}

WittPair::WittPair(int box, std::optional<PrimeModulus> modulus)
    : box_(box), modulus_(modulus), values_(static_cast<std::size_t>((box + 1) * (box + 1))) {
  if (box < 0) throw DomainError("box must be nonnegative");
}

const Rational& WittPair::at(long n, long m) const {
  if (n < 0 || m < 0 || n > box_ || m > box_) throw DomainError("Witt index outside box");
  return values_[static_cast<std::size_t>(n * (box_ + 1) + m)];
}

void WittPair::set(long n, long m, Rational value) {
  if (n < 0 || m < 0 || n > box_ || m > box_) throw DomainError("Witt index outside box");
  if (modulus_) value = Rational(static_cast<unsigned long>(reduce(value, *modulus_)));
  values_[static_cast<std::size_t>(n * (box_ + 1) + m)] = std::move(value);
}

bool WittPair::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

WittPair WittPair::tensor(const QSeries& f, const QSeries& g, int box) {
  if (f.shift() != 0 || g.shift() != 0) throw DomainError("Witt tensor needs unshifted q-series");
  WittPair out(box);
  for (long n = 0; n <= box; ++n) {
    for (long m = 0; m <= box; ++m) out.set(n, m, f.coeff(static_cast<int>(n)) * g.coeff(static_cast<int>(m)));
  }
  return out;
}

std::optional<Rational> WittPair::proportional_to(const WittPair& other) const {
  if (box_ != other.box_) throw DomainError("Witt comparison across different boxes");
  std::optional<Rational> c;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (sgn(other.values_[i]) != 0) {
      c = values_[i] / other.values_[i];
      break;
    }
  }
  if (!c) return std::nullopt;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != *c * other.values_[i]) return std::nullopt;
  }
  return c;
}

WittPair witt(const SiegelExpansion& f) {
  WittPair out(f.box(), f.modulus());
  for (long n = 0; n <= f.box(); ++n) {
    for (long m = 0; m <= f.box(); ++m) {
      Rational s = 0;
      const long R = f.layout().rmax(n, m);
      for (long r = -R; r <= R; ++r) s += f.coeff(n, r, m);
      out.set(n, m, s);
    }
  }
  return out;
}

WittPair witt_product(const WittPair& a, const WittPair& b) {
  if (a.modulus() != b.modulus()) throw DomainError("witt_product: ring mismatch");
  const int box = std::min(a.box(), b.box());
  WittPair out(box, a.modulus());
  for (long n = 0; n <= box; ++n) {
    for (long m = 0; m <= box; ++m) {
      Rational s = 0;
      for (long n1 = 0; n1 <= n; ++n1) {
        for (long m1 = 0; m1 <= m; ++m1) s += a.at(n1, m1) * b.at(n - n1, m - m1);
      }
      out.set(n, m, s);
    }
  }
  return out;
}

SiegelExpansion d_op(const SiegelExpansion& f, int times) {
  if (times < 0) throw DomainError("d_op: negative iteration count");
  SiegelExpansion out = f.with_d_power(f.d_power() + times);
  out.set_note({});
  for (const auto& t : f.layout().indices()) {
    const Rational& c = f.coeff(t);
    if (sgn(c) == 0) continue;
    out.set(t.n, t.r, t.m, c * Rational(int_pow(t.det(), static_cast<unsigned>(times))));
  }
  return out;
}

SiegelExpansion u_p(const SiegelExpansion& f, const PrimeModulus& p) {
  SiegelExpansion out = f;
  out.set_note({});
  const long pl = static_cast<long>(p.value());
  for (const auto& t : f.layout().indices()) {
    if (t.det() % pl != 0) out.set(t.n, t.r, t.m, 0);
  }
  return out;
}

std::optional<long> v_p_form(const SiegelExpansion& f, const PrimeModulus& p) {
  std::optional<long> best;
  for (const auto& c : f.values()) {
    if (sgn(c) == 0) continue;
    const long v = *valuation(c, p);
    if (!best || v < *best) best = v;
  }
  return best;
}

OrderResult ord_p(const SiegelExpansion& f, const PrimeModulus& p) {
  if (f.modulus() && !(*f.modulus() == p)) throw DomainError("ord_p: expansion is reduced modulo a different prime");
  const auto v = v_p_form(f, p);
  if (v && *v < 0) throw DomainError("ord_p: expansion is not " + std::to_string(p.value()) + "-integral (v_p = " + std::to_string(*v) + ")");
  for (long m = 0; m <= f.box(); ++m) {
    for (long n = 0; n <= f.box(); ++n) {
      const long R = f.layout().rmax(n, m);
      for (long r = -R; r <= R; ++r) {
        const Rational& c = f.coeff(n, r, m);
        if (sgn(c) != 0 && reduce(c, p) != 0) return {m, false, m};
      }
    }
  }
  return {std::nullopt, true, static_cast<long>(f.box()) + 1};
}

SiegelExpansion reduce(const SiegelExpansion& f, const PrimeModulus& p) {
  if (f.modulus()) {
    if (*f.modulus() == p) return f;
    throw DomainError("expansion already reduced modulo " + std::to_string(f.modulus()->value()));
  }
  SiegelExpansion out(f.weight(), f.level(), f.box(), p, f.note());
  out = out.with_d_power(f.d_power());
  for (const auto& t : f.layout().indices()) {
    const Rational& c = f.coeff(t);
    if (sgn(c) == 0) continue;
    try {
      out.set(t.n, t.r, t.m, c);
    } catch (const NotPIntegralError& e) {
      throw NotPIntegralError(e.numerator(), e.denominator(), e.prime(), "index " + to_string(t));
    }
  }
  return out;
}

OrbitReport gl2_orbit_check(const SiegelExpansion& f) {
  // diag(U, U^-t) lies in Gamma0(N) for every N, so the relations hold there too.
  const bool gamma0 = f.level().rfind("Gamma0(", 0) == 0 || f.level() == "theta";
  if (!f.is_level_one() && !gamma0) throw DomainError("gl2_orbit_check: unsupported level '" + f.level() + "'");
  OrbitReport report;
  const IndexLayout& layout = f.layout();
  auto check = [&](const SiegelIndex& t, const SiegelIndex& u, const char* relation) {
    if (!layout.contains(u.n, u.r, u.m)) return;
    ++report.relations_checked;
    if (f.coeff(t) != f.coeff(u)) {
      report.ok = false;
      if (report.violations.size() < 100) report.violations.push_back({t, u, relation});
    }
  };
  for (const auto& t : layout.indices()) {
    check(t, {t.m, t.r, t.n}, "swap");
    check(t, {t.n, -t.r, t.m}, "negate");
    check(t, {t.n, t.r + 2 * t.n, t.n + t.r + t.m}, "shear");
  }
  return report;
}

}  // namespace smf
