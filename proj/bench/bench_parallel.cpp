// Times the serial reference paths against the OpenMP kernels and checks
// that both produce identical numbers.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "collide/optimize.hpp"
#include "collide/output.hpp"
#include "collide/sweeps.hpp"

using namespace collide;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
  std::printf("threads: %d\n", threads);

  SweepConfig cfg;
  cfg.nbar_grid = make_grid(0.1, 10.0, 12, true);
  cfg.gamma_tau_grid = make_grid(0.01, 3.0, 12, true);
  cfg.block = parse_block("optimize-b1");
  cfg.n_measured = 2;
  cfg.quantities = {Quantity::Qfi, Quantity::RatioThermal, Quantity::ThetaOpt};

  std::vector<SweepRow> serial, parallel;
  const double ts = seconds([&] { serial = run_sweep_serial(cfg); });
  const double tp = seconds([&] { parallel = run_sweep(cfg, threads); });
  const bool same = format_csv(serial, cfg.quantities) == format_csv(parallel, cfg.quantities);
  std::printf("sweep 12x12 optimize-b1 N=2: serial %.3fs  parallel %.3fs  speedup %.2fx  identical %s\n",
              ts, tp, ts / tp, same ? "yes" : "NO");

  ModelParams p;
  p.nbar = 2.0;
  p.gamma_tau_se = 0.3;
  OptimizeOptions serial_opt, parallel_opt;
  parallel_opt.threads = threads;
  Optimum a, b;
  const double os = seconds([&] { a = optimize_b2(p, 2, serial_opt); });
  const double op = seconds([&] { b = optimize_b2(p, 2, parallel_opt); });
  std::printf("optimize_b2 N=2 (72 starts): serial %.3fs  parallel %.3fs  speedup %.2fx  identical %s\n",
              os, op, os / op, a.value_nbar == b.value_nbar ? "yes" : "NO");
  return same && a.value_nbar == b.value_nbar ? 0 : 1;
}
