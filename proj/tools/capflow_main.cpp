#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "capflow/errors.hpp"
#include "capflow/harness.hpp"

namespace {

using namespace capflow;

bool looks_builtin(const std::string& spec) {
  return spec == "symmetric3" || spec == "ternary-confusion" || spec == "ternary" ||
         spec.rfind("identity:", 0) == 0 || spec.rfind("bsc:", 0) == 0;
}

Channel load_channel_arg(const std::string& spec) {
  if (looks_builtin(spec)) return builtin_channel(spec);
  return load_channel_file(spec);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + out_path + "'");
  out << text;
}

std::vector<double> parse_tau_grid(const std::string& spec) {
  if (spec.empty()) return default_tau_grid();
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    if (!(ss >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1)
      throw InputError("bad tau grid '" + spec + "' (expected lo:hi:count)");
    if (count == 1) return {lo};
    for (int k = 0; k < count; ++k)
      grid.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
    return grid;
  }
  std::istringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) grid.push_back(std::stod(tok));
  if (grid.empty()) throw InputError("bad tau grid '" + spec + "'");
  return grid;
}

template <typename T>
std::vector<T> parse_list(const std::string& spec, const char* what) {
  std::vector<T> out;
  std::istringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if constexpr (std::is_same_v<T, int>)
      out.push_back(std::stoi(tok));
    else
      out.push_back(std::stod(tok));
  }
  if (out.empty()) throw InputError(std::string("empty list for ") + what);
  return out;
}

std::string simplex_text(const SimplexVector& z) {
  std::string s = "[";
  for (std::size_t i = 0; i < z.dimension(); ++i) {
    if (i) s += ", ";
    s += format_double(z[i]);
  }
  return s + "]";
}

struct CommonOpts {
  std::uint64_t seed = 1;
  double tol = 1e-4;
  int max_iter = 10000;
  double tau = 1.0;
  std::string out;
  std::string format;
};

void add_common(CLI::App* cmd, CommonOpts& o, const char* default_format) {
  cmd->add_option("--seed", o.seed, "RNG seed (64-bit)")->capture_default_str();
  cmd->add_option("--tol", o.tol, "L1 stopping tolerance")->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "iteration cap")->capture_default_str();
  cmd->add_option("--tau", o.tau, "step size")->capture_default_str();
  cmd->add_option("--out", o.out, "output file (stdout when omitted)");
  o.format = default_format;
  cmd->add_option("--format", o.format, "output format")->capture_default_str();
}

int run_cli(int argc, char** argv) {
  CLI::App app{"capacity of a discrete memoryless channel via simplex vector flows"};
  app.require_subcommand(1);

  // capacity
  auto* cap = app.add_subcommand("capacity", "estimate channel capacity");
  std::string cap_channel, cap_method = "mwu";
  CommonOpts cap_o;
  cap->add_option("channel", cap_channel,
                  "channel file (JSON or text) or builtin: identity:N, bsc:P, symmetric3, "
                  "ternary-confusion")
      ->required();
  cap->add_option("--method", cap_method, "euler | mwu | baa")->capture_default_str();
  add_common(cap, cap_o, "text");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a step-size sweep over a dataset");
  std::string sweep_dir, sweep_method = "euler", sweep_grid;
  bool sweep_serial = false, sweep_timings = false, sweep_no_baseline = false;
  CommonOpts sweep_o;
  sweep->add_option("--dataset", sweep_dir, "dataset directory")->required();
  sweep->add_option("--method", sweep_method, "euler | mwu | baa")->capture_default_str();
  sweep->add_option("--tau-grid", sweep_grid, "lo:hi:count or comma list (default 0.01:30:25)");
  sweep->add_flag("--serial", sweep_serial, "disable the parallel batch runner");
  sweep->add_flag("--timings", sweep_timings, "append a wall_seconds column");
  sweep->add_flag("--no-baseline", sweep_no_baseline, "skip the per-channel BAA baseline");
  add_common(sweep, sweep_o, "csv");

  // compare
  auto* cmp = app.add_subcommand("compare", "compare MWU (tau = 1) against BAA per channel");
  std::string cmp_dir;
  bool cmp_serial = false;
  CommonOpts cmp_o;
  cmp->add_option("--dataset", cmp_dir, "dataset directory")->required();
  cmp->add_flag("--serial", cmp_serial, "disable the parallel batch runner");
  add_common(cmp, cmp_o, "csv");

  // trajectory
  auto* traj = app.add_subcommand("trajectory", "log per-iteration state of a single run");
  std::string traj_channel, traj_method = "euler";
  CommonOpts traj_o;
  traj->add_option("channel", traj_channel, "channel file or builtin")->required();
  traj->add_option("--method", traj_method, "euler | mwu | baa")->capture_default_str();
  add_common(traj, traj_o, "csv");

  // drift
  auto* drift = app.add_subcommand("drift", "per-step simplex drift of the Euler solvers");
  std::string drift_channel;
  bool drift_classic = false;
  CommonOpts drift_o;
  drift->add_option("channel", drift_channel, "channel file or builtin")->required();
  drift->add_flag("--classic", drift_classic, "skip the ReLU clamp and renormalization");
  add_common(drift, drift_o, "csv");

  // gen-dataset
  auto* gen = app.add_subcommand("gen-dataset", "generate a symmetric-channel dataset");
  std::string gen_dir, gen_dims, gen_sigmas;
  int gen_per_cell = 15;
  std::uint64_t gen_seed = 42;
  bool gen_serial = false;
  gen->add_option("--out-dir", gen_dir, "output directory")->required();
  gen->add_option("--dims", gen_dims, "comma list of input sizes (default 2,9,...,100)");
  gen->add_option("--sigmas", gen_sigmas, "comma list of noise levels (default 0,0.25,0.5,0.75,1)");
  gen->add_option("--per-cell", gen_per_cell, "channels per (n, sigma) cell")->capture_default_str();
  gen->add_option("--seed", gen_seed, "RNG seed (64-bit)")->capture_default_str();
  gen->add_flag("--serial", gen_serial, "generate on a single thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (cap->parsed()) {
    const Channel ch = load_channel_arg(cap_channel);
    const CapacityReport rep = estimate_capacity(ch, parse_method(cap_method), cap_o.tau,
                                                 cap_o.tol, cap_o.max_iter, cap_o.seed);
    if (cap_o.format == "json") {
      emit(capacity_report_to_json(rep).dump(1) + "\n", cap_o.out);
    } else if (cap_o.format == "text") {
      std::ostringstream s;
      s << "capacity: " << format_double(rep.estimate.value) << " nats ("
        << format_double(rep.estimate.value / std::log(2.0)) << " bits)\n"
        << "method: " << rep.method << " (tau = " << format_double(rep.tau)
        << "), iterations: " << rep.estimate.iterations
        << ", converged: " << (rep.estimate.converged ? "yes" : "no") << "\n"
        << "optimal input: " << simplex_text(rep.estimate.optimal_input) << "\n"
        << "output distribution: " << simplex_text(rep.estimate.output_distribution) << "\n"
        << "kkt: " << (rep.diagnostics.is_kkt ? "satisfied" : "not satisfied")
        << " (multiplier = " << format_double(rep.diagnostics.kkt_multiplier)
        << ", max violation = " << format_double(rep.diagnostics.max_violation)
        << ", lyapunov rate = " << format_double(rep.diagnostics.lyapunov_rate) << ")\n";
      emit(s.str(), cap_o.out);
    } else {
      throw InputError("capacity supports --format text or json");
    }
    return 0;
  }

  if (sweep->parsed()) {
    const LoadedDataset ds = load_dataset(sweep_dir);
    SweepOptions opt;
    opt.method = parse_method(sweep_method);
    opt.tau_grid = parse_tau_grid(sweep_grid);
    opt.tolerance = sweep_o.tol;
    opt.max_iterations = sweep_o.max_iter;
    opt.seed = sweep_o.seed;
    opt.parallel = !sweep_serial;
    opt.include_baseline = !sweep_no_baseline;
    const auto records = sweep_dataset(ds, opt);
    if (sweep_o.format == "json") {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& r : records) {
        nlohmann::json e = {{"channel_id", r.channel_id},
                            {"n", r.n},
                            {"sigma", r.sigma},
                            {"method", r.method},
                            {"capacity_estimate", r.capacity_estimate},
                            {"ground_truth", r.ground_truth},
                            {"absolute_error", r.absolute_error},
                            {"iterations", r.iterations},
                            {"converged", r.converged}};
        if (r.tau) e["tau"] = *r.tau;
        if (r.relative_error) e["relative_error"] = *r.relative_error;
        if (sweep_timings) e["wall_seconds"] = r.wall_seconds;
        j.push_back(std::move(e));
      }
      emit(j.dump(1) + "\n", sweep_o.out);
    } else if (sweep_o.format == "csv") {
      emit(experiment_csv(records, sweep_timings), sweep_o.out);
    } else {
      throw InputError("sweep supports --format csv or json");
    }
    return 0;
  }

  if (cmp->parsed()) {
    const LoadedDataset ds = load_dataset(cmp_dir);
    CompareOptions opt;
    opt.tolerance = cmp_o.tol;
    opt.max_iterations = cmp_o.max_iter;
    opt.seed = cmp_o.seed;
    opt.parallel = !cmp_serial;
    const auto records = compare_dataset(ds, opt);
    if (cmp_o.format == "json") {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& r : records)
        j.push_back({{"channel_id", r.channel_id},
                     {"n", r.n},
                     {"sigma", r.sigma},
                     {"iterations_mwu", r.iterations_mwu},
                     {"iterations_baa", r.iterations_baa},
                     {"iteration_ratio", r.iteration_ratio},
                     {"estimate_mwu", r.estimate_mwu},
                     {"estimate_baa", r.estimate_baa},
                     {"estimate_abs_diff", r.estimate_abs_diff},
                     {"ground_truth", r.ground_truth}});
      emit(j.dump(1) + "\n", cmp_o.out);
    } else if (cmp_o.format == "csv") {
      emit(compare_csv(records), cmp_o.out);
    } else {
      throw InputError("compare supports --format csv or json");
    }
    return 0;
  }

  if (traj->parsed()) {
    const Channel ch = load_channel_arg(traj_channel);
    const TrajectoryTable table = trajectory_run(ch, parse_method(traj_method), traj_o.tau,
                                                 traj_o.tol, traj_o.max_iter, traj_o.seed);
    if (traj_o.format == "csv") {
      emit(trajectory_csv(table), traj_o.out);
    } else {
      throw InputError("trajectory supports --format csv");
    }
    return 0;
  }

  if (drift->parsed()) {
    const Channel ch = load_channel_arg(drift_channel);
    const DriftTable table = drift_run(ch, drift_o.tau, !drift_classic, drift_o.tol,
                                       drift_o.max_iter, drift_o.seed);
    if (drift_o.format == "csv") {
      emit(drift_csv(table), drift_o.out);
    } else {
      throw InputError("drift supports --format csv");
    }
    if (table.blew_up)
      std::cerr << "classic iterate blew up at iteration " << table.blow_up_iteration << "\n";
    return 0;
  }

  if (gen->parsed()) {
    DatasetSpec spec = default_dataset_spec();
    if (!gen_dims.empty()) spec.dimensionalities = parse_list<int>(gen_dims, "--dims");
    if (!gen_sigmas.empty()) spec.noise_levels = parse_list<double>(gen_sigmas, "--sigmas");
    spec.channels_per_cell = gen_per_cell;
    spec.seed = gen_seed;
    const auto entries = generate_dataset(spec, !gen_serial);
    write_dataset(entries, spec, gen_dir);
    std::cout << "wrote " << entries.size() << " channels to " << gen_dir << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const capflow::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const capflow::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
