#include "capflow/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "capflow/errors.hpp"
#include "capflow/rng.hpp"

namespace capflow {

std::string method_name(Method m) {
  switch (m) {
    case Method::euler_adjusted: return "euler";
    case Method::euler_classic: return "euler-classic";
    case Method::mwu: return "mwu";
    case Method::baa: return "baa";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "euler") return Method::euler_adjusted;
  if (name == "mwu") return Method::mwu;
  if (name == "baa") return Method::baa;
  throw InputError("unknown method '" + name + "' (expected euler, mwu or baa)");
}

std::vector<double> default_tau_grid() {
  std::vector<double> grid(25);
  const double lo = 0.01, hi = 30.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid.size() - 1);
  return grid;
}

SimplexVector start_point(const DatasetEntry& e, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, {fnv1a(e.id)}));
  return sample_interior(static_cast<std::size_t>(e.n), rng);
}

namespace {

std::string csv_bool(bool b) { return b ? "1" : "0"; }

void append_record(std::vector<ExperimentRecord>& records, const DatasetEntry& e,
                   const BatchResult& res, Method method, std::optional<double> tau) {
  ExperimentRecord r;
  r.channel_id = e.id;
  r.n = e.n;
  r.sigma = e.sigma;
  r.method = method_name(method);
  r.tau = tau;
  r.capacity_estimate = res.run.capacity_estimate;
  r.ground_truth = e.ground_truth;
  r.absolute_error = std::abs(res.run.capacity_estimate - e.ground_truth);
  if (e.ground_truth != 0.0) r.relative_error = r.absolute_error / e.ground_truth;
  r.iterations = res.run.iterations;
  r.converged = res.run.converged;
  r.wall_seconds = res.wall_seconds;
  records.push_back(std::move(r));
}

}  // namespace

std::vector<ExperimentRecord> sweep_dataset(const LoadedDataset& ds, const SweepOptions& opt) {
  if (opt.method == Method::euler_classic)
    throw InputError("sweep supports the adjusted methods only");
  const std::vector<double> grid = opt.tau_grid.empty() ? default_tau_grid() : opt.tau_grid;

  std::vector<Channel> channels;
  channels.reserve(ds.entries.size());
  for (const auto& e : ds.entries) channels.push_back(e.channel);

  std::vector<RunTask> tasks;
  for (std::size_t c = 0; c < ds.entries.size(); ++c) {
    const SimplexVector z0 = start_point(ds.entries[c], opt.seed);
    for (double tau : grid) {
      SolverConfig cfg{opt.method, tau, opt.tolerance, opt.max_iterations, false, false};
      tasks.push_back({c, z0, cfg});
    }
    if (opt.include_baseline) {
      SolverConfig cfg{Method::baa, 1.0, opt.tolerance, opt.max_iterations, false, false};
      tasks.push_back({c, z0, cfg});
    }
  }
  const std::vector<BatchResult> results =
      opt.parallel ? run_batch(channels, tasks) : run_batch_serial(channels, tasks);

  std::vector<ExperimentRecord> records;
  records.reserve(results.size());
  std::size_t t = 0;
  for (std::size_t c = 0; c < ds.entries.size(); ++c) {
    for (double tau : grid) append_record(records, ds.entries[c], results[t++], opt.method, tau);
    if (opt.include_baseline)
      append_record(records, ds.entries[c], results[t++], Method::baa, std::nullopt);
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     if (a.channel_id != b.channel_id) return a.channel_id < b.channel_id;
                     if (a.method != b.method) return a.method < b.method;
                     return a.tau.value_or(-1.0) < b.tau.value_or(-1.0);
                   });
  return records;
}

std::string experiment_csv(const std::vector<ExperimentRecord>& records, bool timings) {
  std::ostringstream out;
  out << "# capflow sweep csv v1\n";
  out << "channel_id,n,sigma,method,tau,capacity_estimate,ground_truth,relative_error,"
         "absolute_error,iterations,converged";
  if (timings) out << ",wall_seconds";
  out << '\n';
  for (const auto& r : records) {
    out << r.channel_id << ',' << r.n << ',' << format_double(r.sigma) << ',' << r.method << ','
        << (r.tau ? format_double(*r.tau) : "") << ',' << format_double(r.capacity_estimate)
        << ',' << format_double(r.ground_truth) << ','
        << (r.relative_error ? format_double(*r.relative_error) : "") << ','
        << format_double(r.absolute_error) << ',' << r.iterations << ',' << csv_bool(r.converged);
    if (timings) out << ',' << format_double(r.wall_seconds);
    out << '\n';
  }
  return out.str();
}

std::vector<CompareRecord> compare_dataset(const LoadedDataset& ds, const CompareOptions& opt) {
  std::vector<Channel> channels;
  channels.reserve(ds.entries.size());
  for (const auto& e : ds.entries) channels.push_back(e.channel);

  std::vector<RunTask> tasks;
  for (std::size_t c = 0; c < ds.entries.size(); ++c) {
    const SimplexVector z0 = start_point(ds.entries[c], opt.seed);
    tasks.push_back({c, z0, {Method::mwu, 1.0, opt.tolerance, opt.max_iterations, false, false}});
    tasks.push_back({c, z0, {Method::baa, 1.0, opt.tolerance, opt.max_iterations, false, false}});
  }
  const std::vector<BatchResult> results =
      opt.parallel ? run_batch(channels, tasks) : run_batch_serial(channels, tasks);

  std::vector<CompareRecord> records;
  records.reserve(ds.entries.size());
  for (std::size_t c = 0; c < ds.entries.size(); ++c) {
    const SolverRun& mwu = results[2 * c].run;
    const SolverRun& baa = results[2 * c + 1].run;
    CompareRecord r;
    r.channel_id = ds.entries[c].id;
    r.n = ds.entries[c].n;
    r.sigma = ds.entries[c].sigma;
    r.iterations_mwu = mwu.iterations;
    r.iterations_baa = baa.iterations;
    r.iteration_ratio = static_cast<double>(mwu.iterations) / static_cast<double>(baa.iterations);
    r.estimate_mwu = mwu.capacity_estimate;
    r.estimate_baa = baa.capacity_estimate;
    r.estimate_abs_diff = std::abs(mwu.capacity_estimate - baa.capacity_estimate);
    r.ground_truth = ds.entries[c].ground_truth;
    records.push_back(std::move(r));
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const CompareRecord& a, const CompareRecord& b) {
                     return a.channel_id < b.channel_id;
                   });
  return records;
}

std::string compare_csv(const std::vector<CompareRecord>& records) {
  std::ostringstream out;
  out << "# capflow compare csv v1\n";
  out << "channel_id,n,sigma,iterations_mwu,iterations_baa,iteration_ratio,estimate_mwu,"
         "estimate_baa,estimate_abs_diff,ground_truth\n";
  for (const auto& r : records)
    out << r.channel_id << ',' << r.n << ',' << format_double(r.sigma) << ',' << r.iterations_mwu
        << ',' << r.iterations_baa << ',' << format_double(r.iteration_ratio) << ','
        << format_double(r.estimate_mwu) << ',' << format_double(r.estimate_baa) << ','
        << format_double(r.estimate_abs_diff) << ',' << format_double(r.ground_truth) << '\n';
  return out.str();
}

TrajectoryTable trajectory_run(const Channel& ch, Method method, double tau, double tolerance,
                               int max_iterations, std::uint64_t seed) {
  if (method == Method::euler_classic)
    throw InputError("trajectory supports the adjusted methods only");
  std::mt19937_64 rng(seed);
  const SimplexVector z0 = sample_interior(ch.input_size(), rng);
  SolverConfig cfg{method, tau, tolerance, max_iterations, true, false};
  const SolverRun res = run(ch, z0, cfg);

  TrajectoryTable table;
  table.n = ch.input_size();
  table.m = ch.output_size();
  table.with_direction = ch.input_size() == 3;
  table.converged = res.converged;
  for (std::size_t k = 0; k < res.trajectory.size(); ++k) {
    TrajectoryTable::Row row;
    row.iteration = static_cast<int>(k);
    row.z = res.trajectory[k].point.entries();
    detail::output_distribution_raw(ch, row.z, row.q);
    row.objective = res.trajectory[k].objective;
    if (table.with_direction) {
      bool interior_image = true;
      for (double qj : row.q)
        if (qj < kBoundaryEps) interior_image = false;
      if (interior_image)
        row.direction = projected_gradient_direction(ch, res.trajectory[k].point);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string trajectory_csv(const TrajectoryTable& table) {
  std::ostringstream out;
  out << "# capflow trajectory csv v1\n";
  out << "iteration";
  for (std::size_t i = 1; i <= table.n; ++i) out << ",z" << i;
  for (std::size_t j = 1; j <= table.m; ++j) out << ",q" << j;
  out << ",objective";
  if (table.with_direction)
    for (std::size_t i = 1; i <= table.n; ++i) out << ",d" << i;
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.iteration;
    for (double x : row.z) out << ',' << format_double(x);
    for (double x : row.q) out << ',' << format_double(x);
    out << ',' << format_double(row.objective);
    if (table.with_direction) {
      for (std::size_t i = 0; i < table.n; ++i)
        out << ',' << (i < row.direction.size() ? format_double(row.direction[i]) : "");
    }
    out << '\n';
  }
  return out.str();
}

DriftTable drift_run(const Channel& ch, double tau, bool normalize, double tolerance,
                     int max_iterations, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SimplexVector z = sample_interior(ch.input_size(), rng);
  DriftTable table;
  table.adjusted = normalize;
  for (int k = 1; k <= max_iterations; ++k) {
    EulerResult step;
    try {
      step = euler_step(ch, z, tau, normalize);
    } catch (const BlowUpError&) {
      table.blew_up = true;
      table.blow_up_iteration = k;
      break;
    }
    DriftTable::Row row;
    row.iteration = k;
    row.sum_abs_error = step.drift.sum_abs_error;
    if (normalize) row.l1_correction = step.drift.l1_correction;
    table.rows.push_back(row);
    const double dist = l1_distance(z, step.next);
    z = std::move(step.next);
    if (dist < tolerance) {
      table.converged = true;
      break;
    }
  }
  return table;
}

std::string drift_csv(const DriftTable& table) {
  std::ostringstream out;
  out << "# capflow drift csv v1\n";
  out << "iteration,sum_abs_error,l1_correction\n";
  for (const auto& row : table.rows)
    out << row.iteration << ',' << format_double(row.sum_abs_error) << ','
        << (row.l1_correction ? format_double(*row.l1_correction) : "") << '\n';
  return out.str();
}

CapacityReport estimate_capacity(const Channel& ch, Method method, double tau, double tolerance,
                                 int max_iterations, std::uint64_t seed, double diagnostic_tol) {
  if (method == Method::euler_classic)
    throw InputError("capacity estimation supports the adjusted methods only");
  std::mt19937_64 rng(seed);
  const SimplexVector z0 = sample_interior(ch.input_size(), rng);
  SolverConfig cfg{method, tau, tolerance, max_iterations, false, false};
  SolverRun res = run(ch, z0, cfg);

  CapacityReport rep;
  rep.method = method_name(method);
  rep.tau = tau;
  rep.diagnostics = check_kkt(ch, res.final_point, diagnostic_tol);
  rep.estimate.value = res.capacity_estimate;
  rep.estimate.output_distribution = output_distribution(ch, res.final_point);
  rep.estimate.optimal_input = std::move(res.final_point);
  rep.estimate.iterations = res.iterations;
  rep.estimate.converged = res.converged;
  return rep;
}

nlohmann::json capacity_report_to_json(const CapacityReport& rep) {
  return {{"capacity_nats", rep.estimate.value},
          {"capacity_bits", rep.estimate.value / std::log(2.0)},
          {"optimal_input", simplex_to_json(rep.estimate.optimal_input)},
          {"output_distribution", simplex_to_json(rep.estimate.output_distribution)},
          {"iterations", rep.estimate.iterations},
          {"converged", rep.estimate.converged},
          {"method", rep.method},
          {"tau", rep.tau},
          {"diagnostics", diagnostics_to_json(rep.diagnostics)}};
}

}  // namespace capflow
