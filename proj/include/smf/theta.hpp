#pragma once

// Positive-definite quaternary quadratic forms and their genus-2 theta series.

#include <array>
#include <string>
#include <vector>

#include "smf/siegel.hpp"

namespace smf {

using Vec4 = std::array<long, 4>;

/// Gram matrix S of an integer-valued quadratic form x^t S x on Z^4.
class QuadraticForm4 {
public:
  using Gram = std::array<std::array<Rational, 4>, 4>;

  /// Validates symmetry, integrality (diagonal in Z, off-diagonal in Z/2) and
  /// positive definiteness by exact leading principal minors.
  explicit QuadraticForm4(Gram gram, std::string name = {});

  const Gram& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  /// x^t S x.
  long value(const Vec4& x) const;
  /// 2 x^t S y.
  long pairing(const Vec4& x, const Vec4& y) const;
  std::array<Rational, 4> leading_minors() const;
  Rational determinant() const { return leading_minors()[3]; }

private:
  Gram gram_;
  std::string name_;
  std::array<std::array<long, 4>, 4> twice_;  // 2S, an integral matrix
};

struct ShortVector {
  Vec4 x;
  long norm;
};

/// All x with x^t S x <= bound, by Fincke-Pohst pruning on an exact rational LDL^t of S.
std::vector<ShortVector> short_vectors(const QuadraticForm4& s, long bound);
/// Same set by scanning the hypercube |x_i| <= floor(sqrt(bound * (S^-1)_ii)).
std::vector<ShortVector> short_vectors_naive(const QuadraticForm4& s, long bound);

/// A(n, r, m) = #{(x1, x2) : x1^t S x1 = n, 2 x1^t S x2 = r, x2^t S x2 = m}.
SiegelExpansion theta_series(const QuadraticForm4& s, int box, KernelMode mode = KernelMode::Parallel);
/// Reference: naive hypercube enumeration and a sequential pair loop.
SiegelExpansion theta_series_reference(const QuadraticForm4& s, int box);

/// The six quaternary forms of the level-11 and level-19 examples, by name
/// ("S1^11", ..., "S3^19").
const QuadraticForm4& builtin_form(const std::string& name);
std::vector<std::string> builtin_form_names();

}  // namespace smf
