#pragma once

// Multiplication kernels for box-truncated genus-2 series.
//
// The parallel kernels gather each output cell (n, m) independently and are
// bit-identical to a sequential run. The serial kernels scatter every pair of
// nonzero input terms and are kept as the reference the tests compare against.

#include <cstdint>
#include <vector>

#include "smf/siegel.hpp"

namespace smf::kernels {

std::vector<Rational> mul_exact_parallel(const IndexLayout& layout, const std::vector<Rational>& a, const std::vector<Rational>& b);
std::vector<Rational> mul_exact_serial(const IndexLayout& layout, const std::vector<Rational>& a, const std::vector<Rational>& b);

std::vector<std::uint64_t> mul_modp_parallel(const IndexLayout& layout, const std::vector<std::uint64_t>& a,
                                             const std::vector<std::uint64_t>& b, std::uint64_t p);
std::vector<std::uint64_t> mul_modp_serial(const IndexLayout& layout, const std::vector<std::uint64_t>& a,
                                           const std::vector<std::uint64_t>& b, std::uint64_t p);

}  // namespace smf::kernels
