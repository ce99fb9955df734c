#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "capflow/flow.hpp"
#include "capflow/generators.hpp"
#include "capflow/solvers.hpp"

namespace capflow {

// Shortest representation that parses back to the same double.
std::string format_double(double x);

nlohmann::json simplex_to_json(const SimplexVector& z);  // plain array
SimplexVector simplex_from_json(const nlohmann::json& j);

// {"n": ..., "m": ..., "transition": [[...], ...]}
nlohmann::json channel_to_json(const Channel& ch);
Channel channel_from_json(const nlohmann::json& j);

nlohmann::json diagnostics_to_json(const DiagnosticsReport& rep);
nlohmann::json solver_run_to_json(const SolverRun& run);

// Accepts the JSON object format above, or plain text with one
// whitespace-separated row per non-empty line.
Channel load_channel_file(const std::string& path);
void save_channel_file(const Channel& ch, const std::string& path);

struct LoadedDataset {
  DatasetSpec spec;
  std::vector<DatasetEntry> entries;
};

// Directory layout: <dir>/manifest.json plus <dir>/channels/<id>.json.
// The manifest records the generating spec, per-channel sub-seeds and
// ground truths, so a dataset can be reproduced from it exactly.
void write_dataset(const std::vector<DatasetEntry>& entries, const DatasetSpec& spec,
                   const std::string& dir);
LoadedDataset load_dataset(const std::string& dir);

}  // namespace capflow
