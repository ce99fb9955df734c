#pragma once

#include <cstddef>
#include <random>
#include <vector>

namespace capflow {

// Absolute tolerance on |sum - 1| accepted at construction.
inline constexpr double kSimplexSumTol = 1e-12;

// Probability vector on the standard simplex: non-negative entries summing
// to 1 within kSimplexSumTol. Support means strictly positive coordinates;
// tiny positive entries are kept as they are, never flushed to zero.
class SimplexVector {
 public:
  // Empty placeholder so the type can sit in default-constructed records.
  SimplexVector() = default;

  // Validates: entries below -kSimplexSumTol raise NegativeEntry, the
  // rounding band [-tol, 0) is clamped to 0, sum must be 1 within tolerance.
  static SimplexVector validated(std::vector<double> raw);

  // Wraps without checks. Only for the classic Euler mode, whose iterates
  // are allowed to drift off the simplex.
  static SimplexVector unchecked(std::vector<double> raw);

  std::size_t dimension() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<double>& entries() const { return entries_; }

  std::vector<std::size_t> support() const;
  bool full_support() const;
  double sum() const;

  friend bool operator==(const SimplexVector&, const SimplexVector&) = default;

 private:
  explicit SimplexVector(std::vector<double> v) : entries_(std::move(v)) {}
  std::vector<double> entries_;
};

SimplexVector uniform_vector(std::size_t n);

// Clamp negatives to zero, then divide by the L1 norm. AllZero if nothing
// positive survives the clamp.
SimplexVector relu_l1_normalize(const std::vector<double>& raw);

// Dirichlet(1,...,1) draw via normalized standard exponentials. Resamples
// in the (measure zero) event that a coordinate comes out exactly 0, so the
// result always has full support.
SimplexVector sample_interior(std::size_t n, std::mt19937_64& rng);

double l1_distance(const SimplexVector& a, const SimplexVector& b);

}  // namespace capflow
