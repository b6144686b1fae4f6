// Wall-time comparison of the parallel enumeration kernel against the serial
// reference implementation. The two must produce identical lists; the serial
// path is the ground truth the tests pin, the parallel path is the default.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "jmono/dessin.hpp"
#include "jmono/enumerate.hpp"

#ifdef JMONO_HAVE_OPENMP
#include <omp.h>
#endif

using namespace jmono;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void bench_one(int n, const Filter& f, const char* label) {
  auto t0 = clock_type::now();
  std::vector<Dessin> serial = enumerate_dessins_serial(n, f);
  double ts = seconds_since(t0);

  t0 = clock_type::now();
  std::vector<Dessin> parallel = enumerate_dessins(n, f);
  double tp = seconds_since(t0);

  bool same = serial == parallel;
  std::printf("%-28s n=%2d classes=%6zu serial=%8.3fs parallel=%8.3fs speedup=%5.2fx %s\n",
              label, n, serial.size(), ts, tp, tp > 0 ? ts / tp : 0.0,
              same ? "identical" : "MISMATCH");
  if (!same) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
  int n_max = argc > 1 ? std::atoi(argv[1]) : 9;
#ifdef JMONO_HAVE_OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif
  for (int n = 7; n <= n_max; ++n) bench_one(n, {}, "all classes");
  Filter g0;
  g0.genus = 0;
  for (int n = 7; n <= n_max; ++n) bench_one(n, g0, "genus 0");
  Filter tf;
  tf.genus = 0;
  tf.torsion_free = true;
  bench_one(12, tf, "genus 0 torsion-free");
  return 0;
}
