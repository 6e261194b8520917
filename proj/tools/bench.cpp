// Compares the serial reference path (threads = 1) with the OpenMP fan-out
// over the verification suites. Results must be identical; only wall time
// differs.
#include <chrono>
#include <iostream>

#include "logtr/parallel.hpp"
#include "logtr/suites.hpp"

using namespace logtr;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const std::function<std::vector<CheckReport>()>& job) {
  auto t0 = Clock::now();
  auto reps = job();
  auto t1 = Clock::now();
  if (!all_pass(reps)) std::cerr << "warning: benchmark suite reported failures\n";
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  long bound = argc > 1 ? std::atol(argv[1]) : 6;
  std::cout << "hardware threads: " << hardware_threads() << "\n";
  std::cout << "grid bound 2h+k <= " << bound << "\n\n";

  struct Row {
    const char* name;
    CurveSpec spec;
  };
  std::vector<Row> rows = {
      {"mixed", mixed_curve()},
      {"airy", airy_curve()},
      {"sw-half M=3", sw_half_curve({Rat(0), Rat(1), Rat(-2)}, {Rat(2), Rat(-1, 3), Rat(5)}, Rat(3))},
  };

  std::cout << "suite                      serial[ms]   parallel[ms]   speedup\n";
  for (auto& row : rows) {
    Curve c = Curve::analyze(row.spec);
    for (const char* which : {"dilaton", "loops", "variational"}) {
      auto make = [&](int threads) -> std::vector<CheckReport> {
        SuiteConfig cfg;
        cfg.hk_bound = bound;
        cfg.loop_bound = bound - 1;
        cfg.var_bound = 4;
        cfg.threads = threads;
        std::string name = which;
        if (name == "dilaton") return run_dilaton_suite(c, cfg);
        if (name == "loops") return run_loop_suite(c, cfg);
        return run_variational_suite(c, cfg, true, true);
      };
      // fresh engines inside each run: both paths do the same work
      double serial = run_ms([&] { return make(1); });
      double parallel = run_ms([&] { return make(0); });
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%-12s %-12s %10.1f %14.1f %9.2fx", row.name, which, serial,
                    parallel, serial / parallel);
      std::cout << buf << "\n";
    }
  }
  return 0;
}
