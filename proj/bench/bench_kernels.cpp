// Times the parallel kernels against their serial references.
// Usage: smf_bench [box] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "smf/constructors.hpp"
#include "smf/kernels.hpp"
#include "smf/theta.hpp"

namespace {

template <typename F>
double time_ms(int repeats, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / repeats;
}

void report(const std::string& what, double serial, double parallel, bool same) {
  std::cout << what << ": serial " << serial << " ms, parallel " << parallel << " ms, speedup " << (parallel > 0 ? serial / parallel : 0.0)
            << (same ? "" : "  RESULTS DIFFER") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace smf;
  const int box = argc > 1 ? std::atoi(argv[1]) : 8;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::cout << "threads: " << omp_get_max_threads() << ", box " << box << ", repeats " << repeats << "\n";

  const SiegelExpansion e4 = igusa_generator("E4", box), x10 = igusa_generator("chi10", box);
  SiegelExpansion ps(0, "1", box), pp(0, "1", box);
  const double ts = time_ms(repeats, [&] { ps = mul(e4, x10, KernelMode::Serial); });
  const double tp = time_ms(repeats, [&] { pp = mul(e4, x10, KernelMode::Parallel); });
  report("exact mul E4 * chi10", ts, tp, ps == pp);

  const PrimeModulus p(11);
  const SiegelExpansion r4 = reduce(e4, p), r10 = reduce(x10, p);
  SiegelExpansion ms = r4, mp = r4;
  const double ms_t = time_ms(repeats, [&] { ms = mul(r4, r10, KernelMode::Serial); });
  const double mp_t = time_ms(repeats, [&] { mp = mul(r4, r10, KernelMode::Parallel); });
  report("mod-11 mul E4 * chi10", ms_t, mp_t, ms == mp);

  const int theta_box = box < 3 ? box : 3;
  const QuadraticForm4& s = builtin_form("S1^19");
  SiegelExpansion a = theta_series(s, theta_box, KernelMode::Serial), b = a;
  const double th_s = time_ms(1, [&] { a = theta_series(s, theta_box, KernelMode::Serial); });
  const double th_p = time_ms(1, [&] { b = theta_series(s, theta_box, KernelMode::Parallel); });
  report("theta S1^19 box " + std::to_string(theta_box), th_s, th_p, a == b);
  return 0;
}
