#include "capflow/simplex.hpp"

#include <cmath>
#include <string>

#include "capflow/errors.hpp"
#include "capflow/rng.hpp"

namespace capflow {

SimplexVector SimplexVector::validated(std::vector<double> raw) {
  if (raw.empty()) throw InputError("simplex vector needs at least one entry");
  double sum = 0.0;
  for (double& x : raw) {
    if (x < -kSimplexSumTol)
      throw NegativeEntryError("simplex entry " + std::to_string(x) + " below -1e-12");
    if (x < 0.0) x = 0.0;  // rounding band
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSimplexSumTol)
    throw NotNormalizedError("simplex entries sum to " + std::to_string(sum));
  return SimplexVector(std::move(raw));
}

SimplexVector SimplexVector::unchecked(std::vector<double> raw) {
  return SimplexVector(std::move(raw));
}

std::vector<std::size_t> SimplexVector::support() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] > 0.0) idx.push_back(i);
  return idx;
}

bool SimplexVector::full_support() const {
  for (double x : entries_)
    if (x <= 0.0) return false;
  return true;
}

double SimplexVector::sum() const {
  double s = 0.0;
  for (double x : entries_) s += x;
  return s;
}

SimplexVector uniform_vector(std::size_t n) {
  if (n == 0) throw InputError("uniform vector needs n >= 1");
  return SimplexVector::validated(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SimplexVector relu_l1_normalize(const std::vector<double>& raw) {
  if (raw.empty()) throw InputError("cannot normalize an empty vector");
  std::vector<double> v(raw.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    v[i] = raw[i] > 0.0 ? raw[i] : 0.0;
    sum += v[i];
  }
  if (sum <= 0.0) throw AllZeroError("all entries clamped to zero");
  for (double& x : v) x /= sum;
  return SimplexVector::validated(std::move(v));
}

SimplexVector sample_interior(std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw InputError("sample_interior needs n >= 1");
  std::vector<double> v(n);
  for (;;) {
    double sum = 0.0;
    for (double& x : v) {
      x = exponential_draw(rng);
      sum += x;
    }
    bool ok = sum > 0.0;
    for (std::size_t i = 0; ok && i < n; ++i) {
      v[i] /= sum;
      if (v[i] <= 0.0) ok = false;
    }
    if (ok) return SimplexVector::validated(v);
  }
}

double l1_distance(const SimplexVector& a, const SimplexVector& b) {
  if (a.dimension() != b.dimension())
    throw DimensionMismatchError("l1_distance: dimensions " + std::to_string(a.dimension()) +
                                 " vs " + std::to_string(b.dimension()));
  double d = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace capflow
