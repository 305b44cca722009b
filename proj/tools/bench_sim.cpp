// Benchmark: parallel simulator against the serial reference, checking that
// both produce identical results while measuring the speedup.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "fmscore/sim.hpp"

using namespace fmscore;

namespace {

double run_ms(SimResult (*fn)(const SimConfig&), const SimConfig& config,
              SimResult& out) {
  const auto start = std::chrono::steady_clock::now();
  out = fn(config);
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::int64_t replicates = 20000;
  if (argc > 1) {
    replicates = std::atoll(argv[1]);
    if (replicates < 1) {
      std::fprintf(stderr, "usage: %s [replicates]\n", argv[0]);
      return 2;
    }
  }

  const SimConfig configs[] = {
      {50, 50, 0.99, 0.99, Margin(0.1), 0.95, Alternative::TwoSided,
       replicates, 42},
      {200, 200, 0.95, 0.85, Margin(0.1), 0.95, Alternative::TwoSided,
       replicates, 42},
      {80, 40, 0.6, 0.5, Margin(0.2), 0.95, Alternative::TwoSided, replicates,
       42},
  };
  const char* names[] = {"extreme (p=0.99/0.99, n=50)",
                         "point null (p=0.95/0.85, n=200)",
                         "unbalanced (p=0.6/0.5, n=80/40)"};

  std::printf("threads available: %d\n", max_thread_count());
  std::printf("replicates per config: %lld\n\n",
              static_cast<long long>(replicates));

  for (int i = 0; i < 3; ++i) {
    SimResult serial_res{};
    SimResult parallel_res{};
    const double serial_ms = run_ms(simulate_serial, configs[i], serial_res);
    const double parallel_ms = run_ms(simulate, configs[i], parallel_res);
    const bool identical = serial_res == parallel_res;
    std::printf("%-34s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   identical: %s\n",
                names[i], serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "yes" : "NO");
    if (!identical) {
      std::fprintf(stderr, "parallel result diverged from serial reference\n");
      return 1;
    }
  }
  return 0;
}
