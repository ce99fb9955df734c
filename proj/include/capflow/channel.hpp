#pragma once

#include <span>
#include <vector>

#include "capflow/simplex.hpp"

namespace capflow {

// Output probabilities below this are treated as exactly zero where a
// logarithm would otherwise be taken.
inline constexpr double kBoundaryEps = 1e-300;

// Row-stochastic transition matrix of a discrete memoryless channel with
// n inputs and m outputs, stored dense row-major. The per-row constants
// c_i = sum_j p(j|i) ln p(j|i)  (0 ln 0 = 0)
// are precomputed at load time; all values are in nats.
class Channel {
 public:
  Channel() = default;  // empty placeholder

  // Validates shape, non-negativity, row sums (1 within 1e-12) and that no
  // output column is identically zero. Rows more than 1e-13 off unit sum are
  // rescaled so induced output distributions stay normalized at round-off
  // scale; rows already at round-off scale are kept as given.
  static Channel from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t input_size() const { return n_; }
  std::size_t output_size() const { return m_; }
  double prob(std::size_t i, std::size_t j) const { return p_[i * m_ + j]; }
  std::span<const double> row(std::size_t i) const { return {p_.data() + i * m_, m_}; }
  const std::vector<double>& row_constants() const { return c_; }

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<double> p_;
  std::vector<double> c_;
};

struct CapacityEstimate {
  double value = 0.0;  // nats
  SimplexVector optimal_input;
  SimplexVector output_distribution;
  int iterations = 0;
  bool converged = false;
};

// q_j = sum_i p(j|i) z_i, a point on the output simplex.
SimplexVector output_distribution(const Channel& ch, const SimplexVector& z);

// I(z) = sum_i c_i z_i - sum_j q_j ln q_j, in nats.
double mutual_information(const Channel& ch, const SimplexVector& z);

// dI/dz_k = c_k - 1 - sum_j p(j|k) ln q_j. BoundarySingularity if any
// output probability vanishes.
std::vector<double> gradient(const Channel& ch, const SimplexVector& z);

// z_i dI_i extended by continuity to the whole simplex: terms with
// p(j|i) z_i = 0 contribute nothing even when q_j = 0.
double extended_field_term(const Channel& ch, const SimplexVector& z, std::size_t i);

namespace detail {
// Unvalidated kernels shared by the solvers; z may be off the simplex in
// the classic Euler mode.
void output_distribution_raw(const Channel& ch, const std::vector<double>& z, std::vector<double>& q);
double mutual_information_raw(const Channel& ch, const std::vector<double>& z);
double extended_field_term_raw(const Channel& ch, const std::vector<double>& z,
                               const std::vector<double>& q, std::size_t i);
}  // namespace detail

}  // namespace capflow
