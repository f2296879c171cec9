#include "smf/theta.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <omp.h>

namespace smf {

QuadraticForm4::QuadraticForm4(Gram gram, std::string name) : gram_(std::move(gram)), name_(std::move(name)) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (gram_[i][j] != gram_[j][i]) throw DomainError("quadratic form " + name_ + " is not symmetric");
      const Rational twice = 2 * gram_[i][j];
      if (twice.get_den() != 1) throw DomainError("quadratic form " + name_ + " has an entry outside Z/2");
      if (i == j && gram_[i][j].get_den() != 1) throw DomainError("quadratic form " + name_ + " has a non-integral diagonal entry");
      twice_[i][j] = twice.get_num().get_si();
    }
  }
  for (const auto& minor : leading_minors()) {
    if (minor <= 0) throw DomainError("quadratic form " + name_ + " is not positive definite");
  }
}

long QuadraticForm4::value(const Vec4& x) const { return pairing(x, x) / 2; }

long QuadraticForm4::pairing(const Vec4& x, const Vec4& y) const {
  long s = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) s += x[i] * twice_[i][j] * y[j];
  }
  return s;
}

std::array<Rational, 4> QuadraticForm4::leading_minors() const {
  // Fraction-free elimination would also do; the matrices are 4x4.
  std::array<Rational, 4> minors;
  Gram a = gram_;
  Rational det = 1;
  for (int k = 0; k < 4; ++k) {
    if (a[k][k] == 0) {
      for (int j = k; j < 4; ++j) minors[j] = 0;
      return minors;
    }
    det *= a[k][k];
    minors[k] = det;
    for (int i = k + 1; i < 4; ++i) {
      const Rational f = a[i][k] / a[k][k];
      for (int j = k; j < 4; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return minors;
}

namespace {

// Q(x) = sum_i d[i] (x_i + sum_{j>i} u[i][j] x_j)^2
struct Decomposition {
  std::array<Rational, 4> d;
  std::array<std::array<Rational, 4>, 4> u;
};

Decomposition ldl(const QuadraticForm4& s) {
  auto q = s.gram();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (int k = i + 1; k < 4; ++k) {
      for (int l = k; l < 4; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
  }
  Decomposition out;
  for (int i = 0; i < 4; ++i) {
    out.d[i] = q[i][i];
    for (int j = i + 1; j < 4; ++j) out.u[i][j] = q[i][j];
  }
  return out;
}

void fincke_pohst(const Decomposition& dec, int i, Vec4& x, const Rational& remaining, std::vector<Vec4>& out) {
  Rational center = 0;
  for (int j = i + 1; j < 4; ++j) center += dec.u[i][j] * x[j];
  const Rational limit = remaining / dec.d[i];
  // Floating point only brackets the candidate range; membership is decided exactly.
  const double c = center.get_d();
  const double rad = std::sqrt(std::max(0.0, limit.get_d()));
  const long lo = static_cast<long>(std::floor(-c - rad)) - 1;
  const long hi = static_cast<long>(std::ceil(-c + rad)) + 1;
  for (long y = lo; y <= hi; ++y) {
    const Rational t = center + y;
    const Rational sq = t * t;
    if (sq > limit) continue;
    x[i] = y;
    if (i == 0) {
      out.push_back(x);
    } else {
      fincke_pohst(dec, i - 1, x, remaining - dec.d[i] * sq, out);
    }
  }
  x[i] = 0;
}

std::vector<ShortVector> with_norms(const QuadraticForm4& s, std::vector<Vec4> xs, long bound) {
  std::sort(xs.begin(), xs.end());
  std::vector<ShortVector> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    const long norm = s.value(x);
    if (norm > bound) throw IntegrityError("short vector enumeration produced a vector above the bound");
    out.push_back({x, norm});
  }
  return out;
}

std::array<Rational, 4> inverse_diagonal(const QuadraticForm4& s) {
  auto a = s.gram();
  std::array<std::array<Rational, 4>, 4> inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = 1;
  for (int k = 0; k < 4; ++k) {
    const Rational pivot = a[k][k];
    for (int j = 0; j < 4; ++j) {
      a[k][j] /= pivot;
      inv[k][j] /= pivot;
    }
    for (int i = 0; i < 4; ++i) {
      if (i == k) continue;
      const Rational f = a[i][k];
      for (int j = 0; j < 4; ++j) {
        a[i][j] -= f * a[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return {inv[0][0], inv[1][1], inv[2][2], inv[3][3]};
}

}  // namespace

std::vector<ShortVector> short_vectors(const QuadraticForm4& s, long bound) {
  if (bound < 0) return {};
  const Decomposition dec = ldl(s);
  std::vector<Vec4> xs;
  Vec4 x{0, 0, 0, 0};
  fincke_pohst(dec, 3, x, Rational(bound), xs);
  return with_norms(s, std::move(xs), bound);
}

std::vector<ShortVector> short_vectors_naive(const QuadraticForm4& s, long bound) {
  if (bound < 0) return {};
  // max of x_i^2 over x^t S x <= B is B (S^-1)_ii.
  const auto inv = inverse_diagonal(s);
  std::array<long, 4> c{};
  for (int i = 0; i < 4; ++i) {
    const Rational lim = inv[i] * bound;
    c[i] = isqrt(static_cast<long>(mpz_class(lim.get_num() / lim.get_den()).get_si()));
  }
  std::vector<Vec4> xs;
  for (long a = -c[0]; a <= c[0]; ++a)
    for (long b = -c[1]; b <= c[1]; ++b)
      for (long d = -c[2]; d <= c[2]; ++d)
        for (long e = -c[3]; e <= c[3]; ++e) {
          const Vec4 x{a, b, d, e};
          if (s.value(x) <= bound) xs.push_back(x);
        }
  return with_norms(s, std::move(xs), bound);
}

namespace {

SiegelExpansion counts_to_expansion(const std::vector<long>& counts, int box, const QuadraticForm4& s) {
  SiegelExpansion out(2, "theta", box, std::nullopt, "theta series of " + s.name());
  auto& vals = out.mutable_values();
  for (std::size_t i = 0; i < counts.size(); ++i) vals[i] = counts[i];
  return out;
}

}  // namespace

SiegelExpansion theta_series(const QuadraticForm4& s, int box, KernelMode mode) {
  if (mode == KernelMode::Serial) return theta_series_reference(s, box);
  const std::vector<ShortVector> vs = short_vectors(s, box);
  const IndexLayout layout(box);
  std::vector<long> counts(layout.size());
  const long nv = static_cast<long>(vs.size());
#pragma omp parallel
  {
    std::vector<long> local(layout.size());
#pragma omp for schedule(static)
    for (long i = 0; i < nv; ++i) {
      const ShortVector& a = vs[static_cast<std::size_t>(i)];
      for (const ShortVector& b : vs) ++local[layout.offset(a.norm, s.pairing(a.x, b.x), b.norm)];
    }
#pragma omp critical
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += local[k];
  }
  return counts_to_expansion(counts, box, s);
}

SiegelExpansion theta_series_reference(const QuadraticForm4& s, int box) {
  const std::vector<ShortVector> vs = short_vectors_naive(s, box);
  const IndexLayout layout(box);
  std::vector<long> counts(layout.size());
  for (const ShortVector& a : vs) {
    for (const ShortVector& b : vs) ++counts[layout.offset(a.norm, s.pairing(a.x, b.x), b.norm)];
  }
  return counts_to_expansion(counts, box, s);
}

namespace {

QuadraticForm4 form_from_text(const std::array<std::array<const char*, 4>, 4>& rows, const std::string& name) {
  QuadraticForm4::Gram g;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) g[i][j] = parse_rational(rows[i][j]);
  }
  return QuadraticForm4(g, name);
}

const std::map<std::string, QuadraticForm4>& builtin_forms() {
  static const std::map<std::string, QuadraticForm4> forms = [] {
    std::map<std::string, QuadraticForm4> m;
    auto put = [&m](const std::string& name, const std::array<std::array<const char*, 4>, 4>& rows) {
      m.emplace(name, form_from_text(rows, name));
    };
    put("S1^11", {{{"1", "1/2", "0", "0"}, {"1/2", "3", "0", "0"}, {"0", "0", "1", "1/2"}, {"0", "0", "1/2", "3"}}});
    put("S2^11", {{{"2", "0", "1", "1/2"}, {"0", "2", "1/2", "-1"}, {"1", "1/2", "2", "0"}, {"1/2", "-1", "0", "2"}}});
    put("S3^11", {{{"1", "0", "1/2", "0"}, {"0", "4", "2", "3/2"}, {"1/2", "2", "4", "7/2"}, {"0", "3/2", "7/2", "4"}}});
    put("S1^19", {{{"1", "0", "1/2", "0"}, {"0", "1", "0", "1/2"}, {"1/2", "0", "5", "0"}, {"0", "1/2", "0", "5"}}});
    put("S2^19", {{{"1", "1/2", "1/2", "1/2"}, {"1/2", "2", "0", "1"}, {"1/2", "0", "3", "3/2"}, {"1/2", "1", "3/2", "6"}}});
    put("S3^19", {{{"2", "0", "1", "1/2"}, {"0", "2", "1/2", "1"}, {"1", "1/2", "3", "1/2"}, {"1/2", "1", "1/2", "3"}}});
    return m;
  }();
  return forms;
}

}  // namespace

const QuadraticForm4& builtin_form(const std::string& name) {
  const auto& forms = builtin_forms();
  auto it = forms.find(name);
  if (it == forms.end()) throw DomainError("unknown quadratic form '" + name + "'");
  return it->second;
}

std::vector<std::string> builtin_form_names() {
  std::vector<std::string> names;
  for (const auto& [name, form] : builtin_forms()) names.push_back(name);
  return names;
}

}  // namespace smf
