// Compares the OpenMP batch runner against the serial reference on a
// moderate dataset sweep and reports the speedup. Also cross-checks that
// both produce identical results, since the parallel path must not change
// any numbers.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "capflow/batch.hpp"
#include "capflow/generators.hpp"
#include "capflow/harness.hpp"

using namespace capflow;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

int main() {
  DatasetSpec spec;
  spec.dimensionalities = {9, 30, 51, 100};
  spec.noise_levels = {0.25, 0.5, 0.75};
  spec.channels_per_cell = 6;
  spec.seed = 42;

  auto t0 = clock_type::now();
  const auto entries = generate_dataset(spec, true);
  std::printf("dataset: %zu channels, generated in %.3f s\n", entries.size(), seconds_since(t0));

  std::vector<Channel> channels;
  std::vector<RunTask> tasks;
  for (const auto& e : entries) {
    channels.push_back(e.channel);
    RunTask t;
    t.channel_index = channels.size() - 1;
    t.start = start_point(e, 1);
    t.config = {Method::mwu, 1.0, 1e-8, 200000};
    tasks.push_back(std::move(t));
  }

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled, both runners are serial\n");
#endif

  t0 = clock_type::now();
  const auto serial = run_batch_serial(channels, tasks);
  const double t_serial = seconds_since(t0);

  t0 = clock_type::now();
  const auto parallel = run_batch(channels, tasks);
  const double t_parallel = seconds_since(t0);

  bool identical = serial.size() == parallel.size();
  long long iters = 0;
  for (std::size_t k = 0; identical && k < serial.size(); ++k) {
    identical = serial[k].run.final_point == parallel[k].run.final_point &&
                serial[k].run.iterations == parallel[k].run.iterations &&
                serial[k].run.capacity_estimate == parallel[k].run.capacity_estimate;
    iters += serial[k].run.iterations;
  }

  std::printf("serial:   %.3f s\n", t_serial);
  std::printf("parallel: %.3f s\n", t_parallel);
  std::printf("speedup:  %.2fx over %zu runs (%lld solver iterations)\n",
              t_parallel > 0.0 ? t_serial / t_parallel : 0.0, tasks.size(), iters);
  std::printf("results identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
