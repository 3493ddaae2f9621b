// Point-counting kernels side by side: O(q^2) reference, serial per-x, OpenMP per-x.
// Usage: bench_point_count [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <omp.h>

#include "ptord/point_count.hpp"

using namespace ptord;

namespace {

template <class F>
double best_of(int reps, F&& f, std::uint64_t& result) {
  double best = 1e30;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    result = f();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s < best) best = s;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  struct Case {
    std::uint64_t ell;
    unsigned k;
    ResidualCurve curve;
  };
  const std::vector<Case> cases{
      {2, 11, {2, 1, 0, 1, 0, 1}},     {3, 7, {3, 0, 1, 0, 2, 1}},      {1009, 1, {1009, 0, 0, 0, 3, 7}},
      {2, 19, {2, 1, 0, 1, 0, 1}},     {3, 12, {3, 0, 1, 0, 2, 1}},     {999983, 1, {999983, 0, 0, 0, 3, 7}},
      {31, 4, {31, 0, 0, 0, 3, 7}},
  };
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%10s %12s %12s %12s %12s %8s\n", "q", "#E", "reference", "serial", "parallel", "speedup");
  for (const auto& c : cases) {
    const SmallField F(c.ell, c.k);
    const auto curve = SmallCurve::lift(F, c.curve);
    std::uint64_t n_ser = 0, n_par = 0, n_ref = 0;
    const double ser = best_of(reps, [&] { return count_points_serial(curve); }, n_ser);
    const double par = best_of(reps, [&] { return count_points_parallel(curve); }, n_par);
    char ref_text[32] = "-";
    if (F.size() <= 4096) {
      const double ref = best_of(1, [&] { return count_points_reference(curve); }, n_ref);
      std::snprintf(ref_text, sizeof ref_text, "%.6f", ref);
      if (n_ref != n_ser) {
        std::fprintf(stderr, "mismatch at q = %llu\n", static_cast<unsigned long long>(F.size()));
        return 1;
      }
    }
    if (n_ser != n_par) {
      std::fprintf(stderr, "serial/parallel mismatch at q = %llu\n", static_cast<unsigned long long>(F.size()));
      return 1;
    }
    std::printf("%10llu %12llu %12s %12.6f %12.6f %8.2f\n", static_cast<unsigned long long>(F.size()),
                static_cast<unsigned long long>(n_ser), ref_text, ser, par, ser / par);
  }
  return 0;
}
