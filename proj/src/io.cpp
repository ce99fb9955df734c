#include "capflow/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "capflow/errors.hpp"

namespace fs = std::filesystem;

namespace capflow {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

nlohmann::json simplex_to_json(const SimplexVector& z) {
  return nlohmann::json(z.entries());
}

SimplexVector simplex_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("simplex JSON must be an array");
  return SimplexVector::validated(j.get<std::vector<double>>());
}

nlohmann::json channel_to_json(const Channel& ch) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < ch.input_size(); ++i) {
    const auto row = ch.row(i);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return {{"n", ch.input_size()}, {"m", ch.output_size()}, {"transition", rows}};
}

Channel channel_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("m") || !j.contains("transition"))
    throw InputError("channel JSON needs fields n, m, transition");
  const auto n = j.at("n").get<std::size_t>();
  const auto m = j.at("m").get<std::size_t>();
  auto rows = j.at("transition").get<std::vector<std::vector<double>>>();
  if (rows.size() != n) throw InputError("transition has wrong number of rows");
  for (const auto& r : rows)
    if (r.size() != m) throw InputError("transition has a row of wrong length");
  return Channel::from_rows(rows);
}

nlohmann::json diagnostics_to_json(const DiagnosticsReport& rep) {
  return {{"is_stationary", rep.is_stationary},
          {"is_kkt", rep.is_kkt},
          {"kkt_multiplier", rep.kkt_multiplier},
          {"max_violation", rep.max_violation},
          {"lyapunov_rate", rep.lyapunov_rate}};
}

nlohmann::json solver_run_to_json(const SolverRun& run) {
  nlohmann::json j = {{"final_point", simplex_to_json(run.final_point)},
                      {"capacity_estimate", run.capacity_estimate},
                      {"iterations", run.iterations},
                      {"converged", run.converged}};
  if (!run.trajectory.empty()) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& pt : run.trajectory)
      t.push_back({{"point", simplex_to_json(pt.point)}, {"objective", pt.objective}});
    j["trajectory"] = t;
  }
  if (!run.drift_log.empty()) {
    nlohmann::json d = nlohmann::json::array();
    for (const auto& s : run.drift_log)
      d.push_back({{"sum_abs_error", s.sum_abs_error}, {"l1_correction", s.l1_correction}});
    j["drift_log"] = d;
  }
  if (!run.baa_bounds.empty()) j["baa_bounds"] = run.baa_bounds;
  return j;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Channel channel_from_text(const std::string& text, const std::string& path) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::vector<double> row;
    double x;
    while (fields >> x) row.push_back(x);
    if (!fields.eof())
      throw InputError("non-numeric token in channel file '" + path + "'");
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("channel file '" + path + "' has no rows");
  return Channel::from_rows(rows);
}

}  // namespace

Channel load_channel_file(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return channel_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("cannot parse '" + path + "' as JSON: " + e.what());
    }
  }
  return channel_from_text(text, path);
}

void save_channel_file(const Channel& ch, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << channel_to_json(ch).dump(1) << '\n';
}

void write_dataset(const std::vector<DatasetEntry>& entries, const DatasetSpec& spec,
                   const std::string& dir) {
  fs::create_directories(fs::path(dir) / "channels");
  nlohmann::json manifest = {
      {"version", 1},
      {"spec",
       {{"dimensionalities", spec.dimensionalities},
        {"noise_levels", spec.noise_levels},
        {"channels_per_cell", spec.channels_per_cell},
        {"seed", spec.seed}}},
      {"channels", nlohmann::json::array()}};
  for (const DatasetEntry& e : entries) {
    const std::string file = "channels/" + e.id + ".json";
    save_channel_file(e.channel, (fs::path(dir) / file).string());
    manifest["channels"].push_back({{"id", e.id},
                                    {"file", file},
                                    {"n", e.n},
                                    {"sigma", e.sigma},
                                    {"index", e.index},
                                    {"sub_seed", e.sub_seed},
                                    {"ground_truth", e.ground_truth}});
  }
  std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
  if (!out) throw InputError("cannot write manifest in '" + dir + "'");
  out << manifest.dump(1) << '\n';
}

LoadedDataset load_dataset(const std::string& dir) {
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_file((fs::path(dir) / "manifest.json").string()));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("cannot parse dataset manifest: " + std::string(e.what()));
  }
  LoadedDataset ds;
  try {
    const auto& spec = manifest.at("spec");
    ds.spec.dimensionalities = spec.at("dimensionalities").get<std::vector<int>>();
    ds.spec.noise_levels = spec.at("noise_levels").get<std::vector<double>>();
    ds.spec.channels_per_cell = spec.at("channels_per_cell").get<int>();
    ds.spec.seed = spec.at("seed").get<std::uint64_t>();
    for (const auto& c : manifest.at("channels")) {
      DatasetEntry e;
      e.id = c.at("id").get<std::string>();
      e.n = c.at("n").get<int>();
      e.sigma = c.at("sigma").get<double>();
      e.index = c.at("index").get<int>();
      e.sub_seed = c.at("sub_seed").get<std::uint64_t>();
      e.ground_truth = c.at("ground_truth").get<double>();
      e.channel = load_channel_file((fs::path(dir) / c.at("file").get<std::string>()).string());
      ds.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed dataset manifest: " + std::string(e.what()));
  }
  return ds;
}

}  // namespace capflow
