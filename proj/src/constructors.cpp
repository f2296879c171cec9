#include "smf/constructors.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <map>
#include <mutex>
#include <tuple>

namespace smf {

SiegelExpansion maass_lift(const JacobiSlice& phi, bool eisenstein_mode, int box) {
  if (phi.index() != 1) throw DomainError("maass_lift: Jacobi form must have index 1, got " + std::to_string(phi.index()));
  if (phi.weak()) throw DomainError("maass_lift: Jacobi form must be holomorphic");
  if (box < 1) throw DomainError("maass_lift: box must be >= 1");
  if (phi.q_bound() <= box * box) {
    throw DomainError("maass_lift: Jacobi precision " + std::to_string(phi.q_bound()) + " too small for box " + std::to_string(box));
  }
  const int k = phi.weight();
  SiegelExpansion out(k, "1", box);
  const Rational c00 = phi.coeff(0, 0);
  for (const auto& t : out.layout().indices()) {
    if (t.m == 0) {
      if (!eisenstein_mode || sgn(c00) == 0) continue;
      // 4 n * 0 - r^2 >= 0 forces r = 0.
      if (t.n == 0) {
        out.set(0, 0, 0, -bernoulli(k) / (2 * k) * c00);
      } else {
        out.set(t.n, 0, 0, Rational(divisor_sigma(t.n, k - 1)) * c00);
      }
      continue;
    }
    Rational sum = 0;
    for (long d : divisors(gcd3(t.n, t.r < 0 ? -t.r : t.r, t.m))) {
      const Rational c = phi.coeff(t.n * t.m / (d * d), t.r / d);
      if (sgn(c) != 0) sum += Rational(int_pow(d, static_cast<unsigned>(k - 1))) * c;
    }
    out.set(t.n, t.r, t.m, sum);
  }
  return out;
}

namespace {

bool is_eisenstein(const std::string& name) { return name == "E4" || name == "E6"; }

int generator_weight(const std::string& name) {
  if (name == "E4") return 4;
  if (name == "E6") return 6;
  if (name == "chi10") return 10;
  if (name == "chi12") return 12;
  throw DomainError("unknown Igusa generator '" + name + "'");
}

void require(bool condition, const std::string& what) {
  if (!condition) throw IntegrityError("construction integrity: " + what);
}

void assert_generator(const std::string& name, const SiegelExpansion& f) {
  const auto check = [&](long n, long r, long m, long expected) {
    require(f.coeff(n, r, m) == expected, name + " A" + to_string(SiegelIndex{n, r, m}) + " = " + to_string(f.coeff(n, r, m)) +
                                              ", expected " + std::to_string(expected));
  };
  const int box = f.box();
  if (name == "E4" || name == "E6") {
    const long lead = name == "E4" ? 240 : -504;
    check(0, 0, 0, 1);
    check(1, 0, 0, lead);
    check(0, 0, 1, lead);
    const QSeries e = eisenstein_q(generator_weight(name), box + 1);
    require(witt(f) == WittPair::tensor(e, e, box), "W(" + name + ") is not the genus-1 tensor square");
  } else {
    const long middle = name == "chi10" ? -2 : 10;
    check(1, 1, 1, 1);
    check(1, -1, 1, 1);
    check(1, 0, 1, middle);
    for (long n = 0; n <= box; ++n) {
      check(n, 0, 0, 0);
      check(0, 0, n, 0);
    }
    if (name == "chi10") require(witt(f).is_zero(), "W(chi10) does not vanish");
    if (name == "chi12") {
      const QSeries d = delta_q(box + 1);
      require(witt(f).proportional_to(WittPair::tensor(d, d, box)).has_value(), "W(chi12) is not proportional to Delta x Delta");
    }
  }
  const OrbitReport orbit = gl2_orbit_check(f);
  require(orbit.ok, name + " fails the GL2(Z) orbit check");
}

template <typename Key, typename Value, typename Make>
Value memoized(std::map<Key, Value>& cache, std::mutex& mu, const Key& key, Make&& make) {
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Value v = make();
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(v)).first->second;
}

}  // namespace

JacobiSlice igusa_seed(const std::string& name, int q_bound) {
  static std::map<std::pair<std::string, int>, JacobiSlice> cache;
  static std::mutex mu;
  return memoized(cache, mu, std::make_pair(name, q_bound), [&] {
    const int k = generator_weight(name);
    const int qb = std::max(q_bound, 2);
    JacobiSlice seed(0, 1, 0, false);
    if (is_eisenstein(name)) {
      seed = slice_scale(jacobi_eisenstein(k, qb), Rational(-2 * k) / bernoulli(k));
    } else {
      const JacobiSlice weak = name == "chi10" ? weak_jacobi_m2(qb) : weak_jacobi_0(qb);
      seed = slice_mul(delta_q(qb), 12, weak).with_weak(false);
      seed.check_envelope();
      const Rational lead = seed.coeff(1, 1);
      if (sgn(lead) == 0) throw IntegrityError(name + " seed has vanishing c(1,1)");
      seed = slice_scale(seed, 1 / lead);
    }
    return seed.truncated(q_bound);
  });
}

SiegelExpansion igusa_generator(const std::string& name, int box) {
  static std::map<std::pair<std::string, int>, SiegelExpansion> cache;
  static std::mutex mu;
  if (box < 1) throw DomainError("igusa_generator: box must be >= 1");
  return memoized(cache, mu, std::make_pair(name, box), [&] {
    const JacobiSlice seed = igusa_seed(name, box * box + 1);
    SiegelExpansion f = maass_lift(seed, is_eisenstein(name), box);
    f.set_note(name + (is_eisenstein(name) ? ": normalized by A(0,0,0) = 1" : ": normalized by A(1,1,1) = 1"));
    assert_generator(name, f);
    return f;
  });
}

SiegelExpansion chi20(int box) {
  if (box < 2) throw DomainError("chi20: box must be >= 2");
  const SiegelExpansion e4 = igusa_generator("E4", box), e6 = igusa_generator("E6", box);
  const SiegelExpansion x10 = igusa_generator("chi10", box), x12 = igusa_generator("chi12", box);
  SiegelExpansion f = add(add(scale(mul(mul(e4, e6), x10), 11), scale(mul(x10, x10), 4)), scale(mul(mul(e4, e4), x12), 8));
  f.set_note("chi20 = 11 E4 E6 chi10 + 4 chi10^2 + 8 E4^2 chi12");
  return f;
}

SharpnessExponents sharpness_exponents(int k) {
  if (k < 0 || k % 2 != 0) throw DomainError("sharpness_example: k must be even and nonnegative, got " + std::to_string(k));
  SharpnessExponents e;
  e.t = k / 10;
  if (k % 10 == 2) {
    if (k < 12) throw DomainError("sharpness_example: the k = 2 (mod 10) branch needs k >= 12");
    e.chi10 = e.t - 1;
    e.chi12 = 1;
    return e;
  }
  e.chi10 = e.t;
  const int rest = k - 10 * e.t;
  for (int j = 0; j <= 1; ++j) {
    if ((rest - 6 * j) >= 0 && (rest - 6 * j) % 4 == 0) {
      e.e4 = (rest - 6 * j) / 4;
      e.e6 = j;
      return e;
    }
  }
  throw DomainError("sharpness_example: no exponents solve 4i + 6j = " + std::to_string(rest));
}

SiegelExpansion sharpness_example(int k, int box) {
  const SharpnessExponents e = sharpness_exponents(k);
  if (box < 1) throw DomainError("sharpness_example: box must be >= 1");
  SiegelExpansion g = power(igusa_generator("E4", box), static_cast<unsigned>(e.e4));
  g = mul(g, power(igusa_generator("E6", box), static_cast<unsigned>(e.e6)));
  g = mul(g, power(igusa_generator("chi10", box), static_cast<unsigned>(e.chi10)));
  g = mul(g, power(igusa_generator("chi12", box), static_cast<unsigned>(e.chi12)));
  g.set_note("G_" + std::to_string(k) + " = E4^" + std::to_string(e.e4) + " E6^" + std::to_string(e.e6) + " chi10^" + std::to_string(e.chi10) +
             " chi12^" + std::to_string(e.chi12));
  return g;
}

namespace {

std::string level_of_form(const std::string& form_name) {
  const auto caret = form_name.find('^');
  if (caret == std::string::npos) throw DomainError("form name '" + form_name + "' carries no level");
  return "Gamma0(" + form_name.substr(caret + 1) + ") genus 2";
}

void require_p_integral(const SiegelExpansion& f, std::uint64_t p) {
  const PrimeModulus pm(p);
  for (const auto& c : f.values()) {
    if (!is_p_integral(c, pm)) throw IntegrityError(f.note() + " has a coefficient that is not " + std::to_string(p) + "-integral");
  }
}

SiegelExpansion theta_combination(const std::array<std::pair<const char*, long>, 3>& terms, long denominator, int box) {
  SiegelExpansion f = scale(theta_series_of(terms[0].first, box), terms[0].second);
  for (int i = 1; i < 3; ++i) f = add(f, scale(theta_series_of(terms[i].first, box), terms[i].second));
  return scale(f, make_rational(1, denominator));
}

}  // namespace

SiegelExpansion theta_series_of(const std::string& form_name, int box) {
  static std::map<std::pair<std::string, int>, SiegelExpansion> cache;
  static std::mutex mu;
  return memoized(cache, mu, std::make_pair(form_name, box), [&] {
    SiegelExpansion f = theta_series(builtin_form(form_name), box).relabeled(2, level_of_form(form_name));
    f.set_note("theta series of " + form_name);
    return f;
  });
}

SiegelExpansion yoshida_level11(int box) {
  if (box < 2) throw DomainError("yoshida_level11: box must be >= 2");
  SiegelExpansion f = theta_combination({{{"S1^11", 3}, {"S2^11", -1}, {"S3^11", -2}}}, 24, box);
  f.set_note("F2^(11) = (3 theta_S1 - theta_S2 - 2 theta_S3) / 24");
  require_p_integral(f, 11);
  return f;
}

SiegelExpansion yoshida_level19(int box) {
  if (box < 2) throw DomainError("yoshida_level19: box must be >= 2");
  SiegelExpansion f = theta_combination({{{"S1^19", 1}, {"S2^19", -2}, {"S3^19", 1}}}, 8, box);
  f.set_note("F2^(19) = (theta_S1 - 2 theta_S2 + theta_S3) / 8");
  require_p_integral(f, 19);
  return f;
}

namespace {

std::optional<int> sharpness_weight(const std::string& name) {
  if (name.size() < 2 || name[0] != 'G') return std::nullopt;
  const std::string digits = name.substr(1);
  if (digits.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  return std::stoi(digits);
}

}  // namespace

bool is_catalog_name(const std::string& name) {
  if (name == "E4" || name == "E6" || name == "chi10" || name == "chi12" || name == "chi20" || name == "F2_11" || name == "F2_19") return true;
  if (sharpness_weight(name)) return true;
  if (name.rfind("theta:", 0) == 0) {
    const auto names = builtin_form_names();
    return std::find(names.begin(), names.end(), name.substr(6)) != names.end();
  }
  return false;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names{"E4", "E6", "chi10", "chi12", "chi20", "G<k>", "F2_11", "F2_19"};
  for (const auto& f : builtin_form_names()) names.push_back("theta:" + f);
  return names;
}

SiegelExpansion catalog_form(const std::string& name, int box) {
  if (!is_catalog_name(name)) throw DomainError("unknown form '" + name + "'");
  if (name == "E4" || name == "E6" || name == "chi10" || name == "chi12") return igusa_generator(name, box);
  if (name == "chi20") return chi20(box);
  if (name == "F2_11") return yoshida_level11(box);
  if (name == "F2_19") return yoshida_level19(box);
  if (auto k = sharpness_weight(name)) return sharpness_example(*k, box);
  return theta_series_of(name.substr(6), box);
}

}  // namespace smf
