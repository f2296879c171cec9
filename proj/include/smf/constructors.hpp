#pragma once

// The concrete genus-2 forms: Igusa generators via the Maass lift, chi_20,
// the sharpness family G_k and the level-11 / level-19 theta combinations.

#include <string>
#include <vector>

#include "smf/genus1.hpp"
#include "smf/siegel.hpp"
#include "smf/theta.hpp"

namespace smf {

/// Maass lift of an index-1 holomorphic Jacobi form of weight k:
///   A(n, r, m) = sum_{d | gcd(n, r, m)} d^{k-1} c(nm / d^2, r / d)   (m >= 1),
/// with the m = 0 slice given by the Eisenstein terms A(0,0,0) = -B_k/(2k) c(0,0),
/// A(n,0,0) = sigma_{k-1}(n) c(0,0) in eisenstein mode and zero otherwise.
/// Needs phi.q_bound() > box^2.
SiegelExpansion maass_lift(const JacobiSlice& phi, bool eisenstein_mode, int box);

/// Jacobi form whose Maass lift (with the final scaling applied) is the named generator;
/// its coefficients are the A(n, r, 1) of that generator.
JacobiSlice igusa_seed(const std::string& name, int q_bound);

/// "E4", "E6", "chi10" or "chi12", normalized to constant term 1 (Eisenstein) or A(1,1,1) = 1 (cusp).
/// Integrity assertions run before returning.
SiegelExpansion igusa_generator(const std::string& name, int box);

/// 11 E4 E6 chi10 + 4 chi10^2 + 8 E4^2 chi12.
SiegelExpansion chi20(int box);

struct SharpnessExponents {
  int e4 = 0;
  int e6 = 0;
  int chi10 = 0;
  int chi12 = 0;
  int t = 0;  // floor(k / 10)
};
/// E4^i E6^j chi10^t (4i + 6j + 10t = k, j in {0,1}) for k != 2 mod 10, chi10^(t-1) chi12 otherwise.
SharpnessExponents sharpness_exponents(int k);
SiegelExpansion sharpness_example(int k, int box);

SiegelExpansion theta_series_of(const std::string& form_name, int box);
/// (3 theta_{S1} - theta_{S2} - 2 theta_{S3}) / 24 for the level-11 forms.
SiegelExpansion yoshida_level11(int box);
/// (theta_{S1} - 2 theta_{S2} + theta_{S3}) / 8 for the level-19 forms.
SiegelExpansion yoshida_level19(int box);

/// Generator catalog: E4, E6, chi10, chi12, chi20, G<k> (sharpness), F2_11, F2_19,
/// theta:<form> (e.g. theta:S1^11).
SiegelExpansion catalog_form(const std::string& name, int box);
bool is_catalog_name(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace smf
