#pragma once

#include <cstdint>
#include <vector>

namespace smf {

/// Dense row-major matrix over Z/p.
struct ModMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> data;

  ModMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  std::uint64_t& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct ModSolution {
  bool consistent = false;
  std::vector<std::uint64_t> x;  // free variables set to zero
  std::size_t rank = 0;
  std::size_t residual_violations = 0;  // rows of A x = b violated by x
};

/// Solves A x = b over Z/p by Gaussian elimination. When the system is
/// inconsistent, x solves the pivot rows and the violated rows are counted.
ModSolution solve_mod_p(const ModMatrix& a, const std::vector<std::uint64_t>& b, std::uint64_t p);

}  // namespace smf
