#include "capflow/batch.hpp"

#include <chrono>
#include <string>

#include "capflow/errors.hpp"

namespace capflow {

namespace {

BatchResult run_one(const std::vector<Channel>& channels, const RunTask& task) {
  if (task.channel_index >= channels.size())
    throw InputError("task references channel " + std::to_string(task.channel_index) +
                     " but only " + std::to_string(channels.size()) + " exist");
  const auto t0 = std::chrono::steady_clock::now();
  BatchResult res;
  res.run = run(channels[task.channel_index], task.start, task.config);
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace

std::vector<BatchResult> run_batch(const std::vector<Channel>& channels,
                                   const std::vector<RunTask>& tasks) {
  std::vector<BatchResult> out(tasks.size());
  std::vector<std::string> errors(tasks.size());
  bool failed = false;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(tasks.size()); ++t) {
    try {
      out[t] = run_one(channels, tasks[t]);
    } catch (const std::exception& e) {
      errors[t] = e.what();
      failed = true;
    }
  }
  if (failed)
    for (std::size_t t = 0; t < tasks.size(); ++t)
      if (!errors[t].empty())
        throw SolverError("task " + std::to_string(t) + " failed: " + errors[t]);
  return out;
}

std::vector<BatchResult> run_batch_serial(const std::vector<Channel>& channels,
                                          const std::vector<RunTask>& tasks) {
  std::vector<BatchResult> out;
  out.reserve(tasks.size());
  for (const RunTask& task : tasks) out.push_back(run_one(channels, task));
  return out;
}

}  // namespace capflow
