// End-to-end smoke test driving the installed CLI binary. The binary path
// arrives as argv[1] (wired up in CMakeLists). Runs every subcommand against
// a throwaway dataset and checks exit codes and output shapes.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::string g_cli;
fs::path g_dir;

void expect(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
  if (!ok) ++g_failures;
}

int run(const std::string& args) {
  const std::string cmd = "'" + g_cli + "' " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli>\n", argv[0]);
    return 2;
  }
  g_cli = argv[1];
  g_dir = fs::temp_directory_path() / "capflow_cli_smoke";
  fs::remove_all(g_dir);
  fs::create_directories(g_dir);
  const std::string dir = g_dir.string();

  expect(run("--help >/dev/null") == 0, "--help exits 0");
  expect(run("") == 1, "missing subcommand exits 1");
  expect(run("capacity /no/such/file.json >/dev/null") == 1, "missing channel file exits 1");
  expect(run("capacity bsc:0.1 --method newton >/dev/null") == 1, "unknown method exits 1");
  expect(run("capacity bsc:2.0 >/dev/null") == 1, "invalid crossover exits 1");

  // capacity against a builtin, json output
  expect(run("capacity bsc:0.1 --format json --tol 1e-8 --out " + dir + "/cap.json") == 0,
         "capacity bsc:0.1 exits 0");
  {
    nlohmann::json j = nlohmann::json::parse(slurp(g_dir / "cap.json"));
    const double analytic = std::log(2.0) + 0.1 * std::log(0.1) + 0.9 * std::log(0.9);
    expect(std::abs(j.at("capacity_nats").get<double>() - analytic) < 1e-8,
           "capacity_nats matches the closed form");
    expect(j.at("converged").get<bool>(), "run converged");
    expect(j.at("diagnostics").at("is_kkt").get<bool>(), "kkt certificate holds");
    expect(std::abs(j.at("capacity_bits").get<double>() -
                    j.at("capacity_nats").get<double>() / std::log(2.0)) < 1e-15,
           "bits and nats agree");
  }

  // capacity text output
  expect(run("capacity identity:4 --method euler --out " + dir + "/cap.txt") == 0,
         "capacity identity:4 exits 0");
  expect(slurp(g_dir / "cap.txt").rfind("capacity: ", 0) == 0, "text output starts with capacity");

  // capacity from a channel file written by hand
  {
    std::ofstream out(g_dir / "chan.txt");
    out << "0.9 0.1\n0.1 0.9\n";
  }
  expect(run("capacity " + dir + "/chan.txt >/dev/null") == 0, "text channel file loads");
  {
    std::ofstream out(g_dir / "broken.json");
    out << "{\"n\": 2, bad\n";
  }
  expect(run("capacity " + dir + "/broken.json >/dev/null") == 1, "malformed json exits 1");

  // dataset generation plus the dataset-driven subcommands
  expect(run("gen-dataset --out-dir " + dir + "/ds --dims 2,9 --sigmas 0.5 --per-cell 2 "
             "--seed 5 >/dev/null") == 0,
         "gen-dataset exits 0");
  expect(fs::exists(g_dir / "ds" / "manifest.json"), "manifest written");
  expect(fs::exists(g_dir / "ds" / "channels" / "n002_s0_c00.json"), "channel files written");

  expect(run("sweep --dataset " + dir + "/ds --method mwu --tau-grid 1,2 --tol 1e-6 --out " +
             dir + "/s1.csv") == 0,
         "sweep exits 0");
  expect(run("sweep --dataset " + dir + "/ds --method mwu --tau-grid 1,2 --tol 1e-6 --serial "
             "--out " + dir + "/s2.csv") == 0,
         "serial sweep exits 0");
  const std::string s1 = slurp(g_dir / "s1.csv");
  expect(s1 == slurp(g_dir / "s2.csv"), "parallel and serial sweeps are byte-identical");
  expect(first_line(s1) == "# capflow sweep csv v1", "sweep csv header");

  expect(run("compare --dataset " + dir + "/ds --tol 1e-6 --out " + dir + "/c.csv") == 0,
         "compare exits 0");
  expect(first_line(slurp(g_dir / "c.csv")) == "# capflow compare csv v1", "compare csv header");

  expect(run("trajectory symmetric3 --method mwu --tol 1e-6 --out " + dir + "/t.csv") == 0,
         "trajectory exits 0");
  const std::string traj = slurp(g_dir / "t.csv");
  expect(first_line(traj) == "# capflow trajectory csv v1", "trajectory csv header");
  expect(traj.find(",d1") != std::string::npos, "trajectory carries direction columns for n=3");

  expect(run("drift bsc:0.3 --tol 1e-8 --out " + dir + "/da.csv") == 0, "adjusted drift exits 0");
  expect(run("drift bsc:0.3 --classic --max-iter 30 --out " + dir + "/dc.csv") == 0,
         "classic drift exits 0");
  expect(first_line(slurp(g_dir / "dc.csv")) == "# capflow drift csv v1", "drift csv header");

  fs::remove_all(g_dir);
  if (g_failures > 0) {
    std::printf("%d cli checks failed\n", g_failures);
    return 1;
  }
  std::printf("all cli checks passed\n");
  return 0;
}
