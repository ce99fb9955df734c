#pragma once

#include <random>
#include <vector>

#include "capflow/channel.hpp"
#include "capflow/simplex.hpp"

namespace testutil {

// Dense strictly positive channel with Dirichlet rows.
inline capflow::Channel random_channel(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  std::vector<std::vector<double>> rows(n);
  for (auto& row : rows) row = capflow::sample_interior(m, rng).entries();
  return capflow::Channel::from_rows(rows);
}

inline double linf(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace testutil
