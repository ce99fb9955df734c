#include "capflow/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "capflow/errors.hpp"
#include "capflow/rng.hpp"

namespace capflow {

Channel generate_symmetric_channel(std::size_t n, double sigma, std::mt19937_64& rng) {
  if (n < 2) throw InputError("symmetric channel needs n >= 2");
  if (sigma < 0.0 || sigma > 1.0) throw InputError("sigma must lie in [0, 1]");
  const SimplexVector r = sample_interior(n, rng);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t src = (j + n - i) % n;  // right rotation by i
      rows[i][j] = (i == j ? 1.0 - sigma : 0.0) + sigma * r[src];
    }
  return Channel::from_rows(rows);
}

double symmetric_ground_truth(const Channel& ch) {
  const std::size_t n = ch.input_size();
  if (n != ch.output_size()) throw NotSymmetricError("channel matrix is not square");
  std::vector<double> first(ch.row(0).begin(), ch.row(0).end());
  std::sort(first.begin(), first.end());
  std::vector<double> other(n);
  for (std::size_t i = 1; i < n; ++i) {
    const auto row = ch.row(i);
    other.assign(row.begin(), row.end());
    std::sort(other.begin(), other.end());
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(other[j] - first[j]) > 1e-9)
        throw NotSymmetricError("row " + std::to_string(i) +
                                " is not a permutation of the first row");
  }
  return mutual_information(ch, uniform_vector(n));
}

Channel identity_channel(std::size_t n) {
  if (n < 1) throw InputError("identity channel needs n >= 1");
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
  return Channel::from_rows(rows);
}

Channel bsc_channel(double crossover) {
  if (crossover < 0.0 || crossover > 1.0) throw InputError("crossover must lie in [0, 1]");
  return Channel::from_rows({{1.0 - crossover, crossover}, {crossover, 1.0 - crossover}});
}

Channel symmetric3_channel() {
  return Channel::from_rows({{0.3668, 0.5678, 0.0654},
                             {0.5678, 0.0654, 0.3668},
                             {0.0654, 0.3668, 0.5678}});
}

Channel ternary_confusion_channel() {
  return Channel::from_rows({{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}});
}

std::vector<NamedChannel> canonical_channels() {
  return {{"identity:4", identity_channel(4)},
          {"bsc:0.1", bsc_channel(0.1)},
          {"symmetric3", symmetric3_channel()},
          {"ternary-confusion", ternary_confusion_channel()}};
}

Channel builtin_channel(const std::string& spec) {
  if (spec == "symmetric3") return symmetric3_channel();
  if (spec == "ternary-confusion" || spec == "ternary") return ternary_confusion_channel();
  if (spec.rfind("identity:", 0) == 0) {
    const int n = std::stoi(spec.substr(9));
    if (n < 1) throw InputError("identity channel needs n >= 1");
    return identity_channel(static_cast<std::size_t>(n));
  }
  if (spec.rfind("bsc:", 0) == 0) return bsc_channel(std::stod(spec.substr(4)));
  throw InputError("unknown builtin channel '" + spec + "'");
}

DatasetSpec default_dataset_spec() {
  DatasetSpec spec;
  for (int n = 2; n <= 100; n += 7) spec.dimensionalities.push_back(n);
  spec.noise_levels = {0.0, 0.25, 0.5, 0.75, 1.0};
  spec.channels_per_cell = 15;
  spec.seed = 42;
  return spec;
}

std::vector<DatasetEntry> generate_dataset(const DatasetSpec& spec, bool parallel) {
  if (spec.dimensionalities.empty() || spec.noise_levels.empty())
    throw InputError("dataset spec has no cells");
  if (spec.channels_per_cell < 1) throw InputError("channels_per_cell must be >= 1");
  for (int n : spec.dimensionalities)
    if (n < 2) throw InputError("dataset dimensionalities must be >= 2");
  for (double s : spec.noise_levels)
    if (s < 0.0 || s > 1.0) throw InputError("noise levels must lie in [0, 1]");

  const std::size_t per = static_cast<std::size_t>(spec.channels_per_cell);
  const std::size_t total = spec.dimensionalities.size() * spec.noise_levels.size() * per;
  std::vector<DatasetEntry> out(total);

  const auto build = [&](std::size_t flat) {
    const std::size_t k = flat % per;
    const std::size_t b = (flat / per) % spec.noise_levels.size();
    const std::size_t a = flat / (per * spec.noise_levels.size());
    const int n = spec.dimensionalities[a];
    const double sigma = spec.noise_levels[b];

    DatasetEntry& e = out[flat];
    e.n = n;
    e.sigma = sigma;
    e.index = static_cast<int>(k);
    e.sub_seed = derive_seed(spec.seed, {static_cast<std::uint64_t>(n), b, k});
    char buf[64];
    std::snprintf(buf, sizeof buf, "n%03d_s%zu_c%02zu", n, b, k);
    e.id = buf;
    std::mt19937_64 rng(e.sub_seed);
    e.channel = generate_symmetric_channel(static_cast<std::size_t>(n), sigma, rng);
    e.ground_truth = symmetric_ground_truth(e.channel);
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t flat = 0; flat < static_cast<std::ptrdiff_t>(total); ++flat)
      build(static_cast<std::size_t>(flat));
  } else {
    for (std::size_t flat = 0; flat < total; ++flat) build(flat);
  }
  return out;
}

}  // namespace capflow
