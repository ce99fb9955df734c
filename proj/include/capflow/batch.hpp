#pragma once

#include <vector>

#include "capflow/solvers.hpp"

namespace capflow {

struct RunTask {
  std::size_t channel_index = 0;
  SimplexVector start;
  SolverConfig config;
};

struct BatchResult {
  SolverRun run;
  double wall_seconds = 0.0;
};

// Fans independent solver runs out across OpenMP threads. Each run is fully
// sequential inside, so results match run_batch_serial bit for bit and do
// not depend on the thread count. Results come back in task order.
std::vector<BatchResult> run_batch(const std::vector<Channel>& channels,
                                   const std::vector<RunTask>& tasks);

// Plain loop over the same work; reference implementation for tests and the
// serial side of the benchmark.
std::vector<BatchResult> run_batch_serial(const std::vector<Channel>& channels,
                                          const std::vector<RunTask>& tasks);

}  // namespace capflow
