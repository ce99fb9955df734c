#include "capflow/channel.hpp"

#include <cmath>
#include <string>

#include "capflow/errors.hpp"

namespace capflow {

Channel Channel::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows[0].empty()) throw InputError("channel matrix is empty");
  const std::size_t n = rows.size();
  const std::size_t m = rows[0].size();

  Channel ch;
  ch.n_ = n;
  ch.m_ = m;
  ch.p_.assign(n * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != m)
      throw DimensionMismatchError("row " + std::to_string(i) + " has " +
                                   std::to_string(rows[i].size()) + " entries, expected " +
                                   std::to_string(m));
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double p = rows[i][j];
      if (p < -kSimplexSumTol)
        throw NegativeProbabilityError("p(" + std::to_string(j) + "|" + std::to_string(i) +
                                       ") = " + std::to_string(p));
      if (p < 0.0) p = 0.0;
      ch.p_[i * m + j] = p;
      sum += p;
    }
    if (std::abs(sum - 1.0) > kSimplexSumTol)
      throw RowNotStochasticError("row " + std::to_string(i) + " sums to " + std::to_string(sum));
    // rescale sloppy rows, but leave clean ones untouched so that a matrix
    // built from already normalized data survives a save/load cycle bit for bit
    if (std::abs(sum - 1.0) > 1e-13)
      for (std::size_t j = 0; j < m; ++j) ch.p_[i * m + j] /= sum;
  }
  for (std::size_t j = 0; j < m; ++j) {
    bool alive = false;
    for (std::size_t i = 0; i < n && !alive; ++i) alive = ch.p_[i * m + j] > 0.0;
    if (!alive) throw DeadOutputColumnError("output column " + std::to_string(j) + " is all zero");
  }
  ch.c_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double c = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double p = ch.p_[i * m + j];
      if (p > 0.0) c += p * std::log(p);
    }
    ch.c_[i] = c;
  }
  return ch;
}

namespace detail {

void output_distribution_raw(const Channel& ch, const std::vector<double>& z,
                             std::vector<double>& q) {
  const std::size_t n = ch.input_size(), m = ch.output_size();
  q.assign(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double zi = z[i];
    if (zi == 0.0) continue;
    const auto row = ch.row(i);
    for (std::size_t j = 0; j < m; ++j) q[j] += row[j] * zi;
  }
}

double mutual_information_raw(const Channel& ch, const std::vector<double>& z) {
  std::vector<double> q;
  output_distribution_raw(ch, z, q);
  double acc = 0.0;
  const auto& c = ch.row_constants();
  for (std::size_t i = 0; i < ch.input_size(); ++i) acc += c[i] * z[i];
  for (double qj : q)
    if (qj > 0.0) acc -= qj * std::log(qj);
  return acc;
}

double extended_field_term_raw(const Channel& ch, const std::vector<double>& z,
                               const std::vector<double>& q, std::size_t i) {
  const double zi = z[i];
  if (zi == 0.0) return 0.0;
  double t = zi * (ch.row_constants()[i] - 1.0);
  const auto row = ch.row(i);
  for (std::size_t j = 0; j < ch.output_size(); ++j) {
    const double p = row[j];
    if (p <= 0.0) continue;
    const double qj = q[j];
    // |p z ln q| <= |q ln q| -> 0, so a vanished output contributes nothing
    if (qj < kBoundaryEps) continue;
    t -= p * zi * std::log(qj);
  }
  return t;
}

}  // namespace detail

SimplexVector output_distribution(const Channel& ch, const SimplexVector& z) {
  if (z.dimension() != ch.input_size())
    throw DimensionMismatchError("input has dimension " + std::to_string(z.dimension()) +
                                 ", channel expects " + std::to_string(ch.input_size()));
  std::vector<double> q;
  detail::output_distribution_raw(ch, z.entries(), q);
  return SimplexVector::validated(std::move(q));
}

double mutual_information(const Channel& ch, const SimplexVector& z) {
  if (z.dimension() != ch.input_size())
    throw DimensionMismatchError("input dimension mismatch in mutual_information");
  return detail::mutual_information_raw(ch, z.entries());
}

std::vector<double> gradient(const Channel& ch, const SimplexVector& z) {
  if (z.dimension() != ch.input_size())
    throw DimensionMismatchError("input dimension mismatch in gradient");
  const std::size_t n = ch.input_size(), m = ch.output_size();
  std::vector<double> q;
  detail::output_distribution_raw(ch, z.entries(), q);
  std::vector<double> lnq(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (q[j] < kBoundaryEps)
      throw BoundarySingularityError("output probability " + std::to_string(j) +
                                     " vanished; gradient undefined");
    lnq[j] = std::log(q[j]);
  }
  std::vector<double> g(n);
  const auto& c = ch.row_constants();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    const auto row = ch.row(i);
    for (std::size_t j = 0; j < m; ++j) s += row[j] * lnq[j];
    g[i] = c[i] - 1.0 - s;
  }
  return g;
}

double extended_field_term(const Channel& ch, const SimplexVector& z, std::size_t i) {
  if (z.dimension() != ch.input_size())
    throw DimensionMismatchError("input dimension mismatch in extended_field_term");
  if (i >= ch.input_size()) throw InputError("coordinate index out of range");
  std::vector<double> q;
  detail::output_distribution_raw(ch, z.entries(), q);
  return detail::extended_field_term_raw(ch, z.entries(), q, i);
}

}  // namespace capflow
