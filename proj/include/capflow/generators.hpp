#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "capflow/channel.hpp"

namespace capflow {

// P = (1 - sigma) I + sigma R, where R is the circulant matrix whose first
// row is a uniform Dirichlet draw and whose row i is that row rotated right
// by i positions. Rows and columns are permutations of each other, so the
// uniform input is capacity-achieving.
Channel generate_symmetric_channel(std::size_t n, double sigma, std::mt19937_64& rng);

// ln n - H(row). Validated by checking the matrix is square and every row
// is a permutation of the first within 1e-9; NotSymmetric otherwise.
double symmetric_ground_truth(const Channel& ch);

Channel identity_channel(std::size_t n);
Channel bsc_channel(double crossover);
// Fixed 3x3 circulant benchmark with rows drawn from (0.3668, 0.5678, 0.0654).
Channel symmetric3_channel();
// Three inputs, two outputs; the third input is a coin flip between the
// first two. Capacity ln 2 at input (1/2, 1/2, 0).
Channel ternary_confusion_channel();

struct NamedChannel {
  std::string name;
  Channel channel;
};
std::vector<NamedChannel> canonical_channels();

// Parses "identity:N", "bsc:P", "symmetric3", "ternary-confusion".
Channel builtin_channel(const std::string& spec);

struct DatasetSpec {
  std::vector<int> dimensionalities;
  std::vector<double> noise_levels;
  int channels_per_cell = 15;
  std::uint64_t seed = 42;
};

// 15 dimensionalities evenly spaced in [2, 100], sigma in {0, .25, .5, .75, 1},
// 15 channels per cell.
DatasetSpec default_dataset_spec();

struct DatasetEntry {
  std::string id;
  int n = 0;
  double sigma = 0.0;
  int index = 0;  // position within the (n, sigma) cell
  std::uint64_t sub_seed = 0;
  Channel channel;
  double ground_truth = 0.0;  // nats
};

// Deterministic function of the spec: every entry gets its own sub-seed
// derived from (seed, n, sigma index, channel index), so generation order
// and thread count cannot change the result.
std::vector<DatasetEntry> generate_dataset(const DatasetSpec& spec, bool parallel = true);

}  // namespace capflow
