#include "smf/kernels.hpp"

#include <omp.h>

namespace smf::kernels {

namespace {

struct Cell {
  long n;
  long m;
};

std::vector<Cell> cells_of(const IndexLayout& layout) {
  std::vector<Cell> cells;
  for (long n = 0; n <= layout.box(); ++n) {
    for (long m = 0; m <= layout.box(); ++m) cells.push_back({n, m});
  }
  return cells;
}

template <typename Acc, typename Body>
void gather_cell(const IndexLayout& layout, long n, long m, Acc& acc, Body&& body) {
  const long R = layout.rmax(n, m);
  for (long n1 = 0; n1 <= n; ++n1) {
    for (long m1 = 0; m1 <= m; ++m1) {
      const long n2 = n - n1, m2 = m - m1;
      const long R1 = layout.rmax(n1, m1), R2 = layout.rmax(n2, m2);
      const std::size_t base1 = layout.cell_offset(n1, m1);
      const std::size_t base2 = layout.cell_offset(n2, m2);
      for (long r1 = -R1; r1 <= R1; ++r1) {
        const std::size_t i = base1 + static_cast<std::size_t>(r1 + R1);
        for (long r2 = -R2; r2 <= R2; ++r2) {
          // |r1 + r2| <= R because T1 + T2 is positive semidefinite.
          body(acc[static_cast<std::size_t>(r1 + r2 + R)], i, base2 + static_cast<std::size_t>(r2 + R2));
        }
      }
    }
  }
}

}  // namespace

std::vector<Rational> mul_exact_parallel(const IndexLayout& layout, const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(layout.size());
  const std::vector<Cell> cells = cells_of(layout);
  const long ncells = static_cast<long>(cells.size());
#pragma omp parallel
  {
    Rational tmp;
#pragma omp for schedule(dynamic, 1)
    for (long c = 0; c < ncells; ++c) {
      const auto [n, m] = cells[static_cast<std::size_t>(c)];
      std::vector<Rational> acc(static_cast<std::size_t>(2 * layout.rmax(n, m) + 1));
      gather_cell(layout, n, m, acc, [&](Rational& slot, std::size_t i, std::size_t j) {
        if (sgn(a[i]) == 0 || sgn(b[j]) == 0) return;
        mpq_mul(tmp.get_mpq_t(), a[i].get_mpq_t(), b[j].get_mpq_t());
        mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), tmp.get_mpq_t());
      });
      const std::size_t base = layout.cell_offset(n, m);
      for (std::size_t k = 0; k < acc.size(); ++k) out[base + k] = std::move(acc[k]);
    }
  }
  return out;
}

std::vector<Rational> mul_exact_serial(const IndexLayout& layout, const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(layout.size());
  const std::vector<SiegelIndex> idx = layout.indices();
  std::vector<SiegelIndex> nz_a, nz_b;
  for (const auto& t : idx) {
    if (a[layout.offset(t.n, t.r, t.m)] != 0) nz_a.push_back(t);
    if (b[layout.offset(t.n, t.r, t.m)] != 0) nz_b.push_back(t);
  }
  for (const auto& s : nz_a) {
    for (const auto& t : nz_b) {
      const long n = s.n + t.n, m = s.m + t.m;
      if (n > layout.box() || m > layout.box()) continue;
      out[layout.offset(n, s.r + t.r, m)] += a[layout.offset(s.n, s.r, s.m)] * b[layout.offset(t.n, t.r, t.m)];
    }
  }
  return out;
}

std::vector<std::uint64_t> mul_modp_parallel(const IndexLayout& layout, const std::vector<std::uint64_t>& a,
                                             const std::vector<std::uint64_t>& b, std::uint64_t p) {
  std::vector<std::uint64_t> out(layout.size());
  const std::vector<Cell> cells = cells_of(layout);
  const long ncells = static_cast<long>(cells.size());
  const bool narrow = p < (1ull << 32);
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < ncells; ++c) {
    const auto [n, m] = cells[static_cast<std::size_t>(c)];
    std::vector<unsigned __int128> acc(static_cast<std::size_t>(2 * layout.rmax(n, m) + 1));
    gather_cell(layout, n, m, acc, [&](unsigned __int128& slot, std::size_t i, std::size_t j) {
      if (a[i] == 0 || b[j] == 0) return;
      // With p < 2^32 each product fits 64 bits and the 128-bit sum cannot overflow.
      slot += narrow ? static_cast<unsigned __int128>(a[i] * b[j]) : static_cast<unsigned __int128>(mul_mod(a[i], b[j], p));
    });
    const std::size_t base = layout.cell_offset(n, m);
    for (std::size_t k = 0; k < acc.size(); ++k) out[base + k] = static_cast<std::uint64_t>(acc[k] % p);
  }
  return out;
}

std::vector<std::uint64_t> mul_modp_serial(const IndexLayout& layout, const std::vector<std::uint64_t>& a,
                                           const std::vector<std::uint64_t>& b, std::uint64_t p) {
  std::vector<std::uint64_t> out(layout.size());
  const std::vector<SiegelIndex> idx = layout.indices();
  for (const auto& s : idx) {
    const std::uint64_t x = a[layout.offset(s.n, s.r, s.m)];
    if (x == 0) continue;
    for (const auto& t : idx) {
      const long n = s.n + t.n, m = s.m + t.m;
      if (n > layout.box() || m > layout.box()) continue;
      const std::uint64_t y = b[layout.offset(t.n, t.r, t.m)];
      if (y == 0) continue;
      std::uint64_t& slot = out[layout.offset(n, s.r + t.r, m)];
      slot = static_cast<std::uint64_t>((static_cast<unsigned __int128>(slot) + mul_mod(x, y, p)) % p);
    }
  }
  return out;
}

}  // namespace smf::kernels
