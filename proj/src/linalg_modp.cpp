#include "smf/linalg_modp.hpp"

#include <stdexcept>

#include "smf/scalars.hpp"

namespace smf {

ModSolution solve_mod_p(const ModMatrix& a, const std::vector<std::uint64_t>& b, std::uint64_t p) {
  if (b.size() != a.rows) throw DomainError("solve_mod_p: right-hand side has the wrong length");
  const std::size_t n = a.cols;
  // Augmented copy; elimination picks pivot rows greedily and never touches rows after an inconsistency.
  ModMatrix m(a.rows, n + 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = a.at(i, j) % p;
    m.at(i, n) = b[i] % p;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m.rows; ++col) {
    std::size_t sel = row;
    while (sel < m.rows && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows) continue;
    if (sel != row) {
      for (std::size_t j = 0; j <= n; ++j) std::swap(m.at(sel, j), m.at(row, j));
    }
    const std::uint64_t inv = inv_mod(m.at(row, col), p);
    for (std::size_t j = col; j <= n; ++j) m.at(row, j) = mul_mod(m.at(row, j), inv, p);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      const std::uint64_t f = m.at(i, col);
      for (std::size_t j = col; j <= n; ++j) {
        m.at(i, j) = (m.at(i, j) + p - mul_mod(f, m.at(row, j), p)) % p;
      }
    }
    pivot_col.push_back(col);
    ++row;
  }
  ModSolution sol;
  sol.rank = pivot_col.size();
  sol.x.assign(n, 0);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) sol.x[pivot_col[i]] = m.at(i, n);
  for (std::size_t i = 0; i < a.rows; ++i) {
    unsigned __int128 acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += mul_mod(a.at(i, j) % p, sol.x[j], p);
    if (static_cast<std::uint64_t>(acc % p) != b[i] % p) ++sol.residual_violations;
  }
  sol.consistent = sol.residual_violations == 0;
  return sol;
}

}  // namespace smf
