#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capflow/batch.hpp"
#include "capflow/flow.hpp"
#include "capflow/io.hpp"

namespace capflow {

std::string method_name(Method m);
Method parse_method(const std::string& name);  // euler | mwu | baa

// 25 evenly spaced step sizes in [0.01, 30].
std::vector<double> default_tau_grid();

// Start point for a dataset channel: deterministic in (seed, channel id).
SimplexVector start_point(const DatasetEntry& e, std::uint64_t seed);

struct SweepOptions {
  Method method = Method::euler_adjusted;
  std::vector<double> tau_grid;  // default grid when empty
  double tolerance = 1e-4;
  int max_iterations = 10000;
  std::uint64_t seed = 1;
  bool parallel = true;
  bool include_baseline = true;  // one BAA run per channel, same start
};

struct ExperimentRecord {
  std::string channel_id;
  int n = 0;
  double sigma = 0.0;
  std::string method;
  std::optional<double> tau;  // empty for the BAA baseline
  double capacity_estimate = 0.0;
  double ground_truth = 0.0;
  std::optional<double> relative_error;  // absent when ground truth is 0
  double absolute_error = 0.0;
  int iterations = 0;
  bool converged = false;
  double wall_seconds = 0.0;
};

// One record per (channel, tau) plus the per-channel baseline, sorted by
// (channel_id, method, tau). Wall times are measured, everything else is a
// deterministic function of dataset and options.
std::vector<ExperimentRecord> sweep_dataset(const LoadedDataset& ds, const SweepOptions& opt);

// Timings are off by default so equal invocations produce identical bytes.
std::string experiment_csv(const std::vector<ExperimentRecord>& records, bool timings = false);

struct CompareOptions {
  double tolerance = 1e-4;
  int max_iterations = 10000;
  std::uint64_t seed = 1;
  bool parallel = true;
};

struct CompareRecord {
  std::string channel_id;
  int n = 0;
  double sigma = 0.0;
  int iterations_mwu = 0;
  int iterations_baa = 0;
  double iteration_ratio = 0.0;
  double estimate_mwu = 0.0;
  double estimate_baa = 0.0;
  double estimate_abs_diff = 0.0;
  double ground_truth = 0.0;
};

// MWU at tau = 1 against the BAA baseline, both from the same start point.
std::vector<CompareRecord> compare_dataset(const LoadedDataset& ds, const CompareOptions& opt);
std::string compare_csv(const std::vector<CompareRecord>& records);

struct TrajectoryTable {
  std::size_t n = 0;
  std::size_t m = 0;
  bool with_direction = false;  // projected gradient, emitted for n = 3
  struct Row {
    int iteration = 0;
    std::vector<double> z;
    std::vector<double> q;
    double objective = 0.0;
    std::vector<double> direction;  // may be empty on boundary rows
  };
  std::vector<Row> rows;
  bool converged = false;
};

TrajectoryTable trajectory_run(const Channel& ch, Method method, double tau, double tolerance,
                               int max_iterations, std::uint64_t seed);
std::string trajectory_csv(const TrajectoryTable& table);

struct DriftTable {
  bool adjusted = true;
  struct Row {
    int iteration = 0;
    double sum_abs_error = 0.0;                // |sum z - 1| before normalization
    std::optional<double> l1_correction;       // adjusted mode only
  };
  std::vector<Row> rows;
  bool converged = false;
  bool blew_up = false;
  int blow_up_iteration = -1;
};

// Per-step drift log; the classic mode stops gracefully when the iterate
// blows up and records the iteration where it happened.
DriftTable drift_run(const Channel& ch, double tau, bool normalize, double tolerance,
                     int max_iterations, std::uint64_t seed);
std::string drift_csv(const DriftTable& table);

struct CapacityReport {
  CapacityEstimate estimate;
  DiagnosticsReport diagnostics;
  std::string method;
  double tau = 0.0;
};

CapacityReport estimate_capacity(const Channel& ch, Method method, double tau, double tolerance,
                                 int max_iterations, std::uint64_t seed,
                                 double diagnostic_tol = 1e-6);
nlohmann::json capacity_report_to_json(const CapacityReport& rep);

}  // namespace capflow
