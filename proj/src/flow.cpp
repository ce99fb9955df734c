#include "capflow/flow.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "capflow/errors.hpp"

namespace capflow {

namespace {

void require_dims(const Channel& ch, const SimplexVector& z, const char* where) {
  if (z.dimension() != ch.input_size())
    throw DimensionMismatchError(std::string("input dimension mismatch in ") + where);
}

// dI_i allowing -inf log terms off support; never NaN because zero
// transition probabilities are skipped before the log is taken.
double component_extended(const Channel& ch, const std::vector<double>& q, std::size_t i) {
  double s = 0.0;
  const auto row = ch.row(i);
  for (std::size_t j = 0; j < ch.output_size(); ++j) {
    const double p = row[j];
    if (p <= 0.0) continue;
    if (q[j] < kBoundaryEps) return std::numeric_limits<double>::infinity();
    s += p * std::log(q[j]);
  }
  return ch.row_constants()[i] - 1.0 - s;
}

}  // namespace

FieldValue vector_field(const Channel& ch, const SimplexVector& z) {
  require_dims(ch, z, "vector_field");
  const std::size_t n = ch.input_size();
  std::vector<double> q;
  detail::output_distribution_raw(ch, z.entries(), q);
  std::vector<double> term(n);
  double mu = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    term[i] = detail::extended_field_term_raw(ch, z.entries(), q, i);
    mu += term[i];
  }
  FieldValue out;
  out.mean_payoff = mu;
  out.velocity.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.velocity[i] = term[i] - z[i] * mu;
  return out;
}

double lyapunov_rate(const Channel& ch, const SimplexVector& z) {
  require_dims(ch, z, "lyapunov_rate");
  const std::vector<double> g = gradient(ch, z);  // BoundarySingularity if q hits zero
  double mu = 0.0;
  for (std::size_t i = 0; i < z.dimension(); ++i) mu += z[i] * g[i];
  double rate = 0.0;
  for (std::size_t i = 0; i < z.dimension(); ++i) {
    if (z[i] == 0.0) continue;
    const double d = g[i] - mu;
    rate += z[i] * d * d;
  }
  return rate;
}

bool check_stationary(const Channel& ch, const SimplexVector& z, double tol) {
  require_dims(ch, z, "check_stationary");
  std::vector<double> q;
  detail::output_distribution_raw(ch, z.entries(), q);
  const std::size_t n = ch.input_size();
  std::vector<double> comp(n, 0.0);
  double mu = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] == 0.0) continue;
    comp[i] = component_extended(ch, q, i);
    mu += z[i] * comp[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] == 0.0) continue;
    if (std::abs(comp[i] - mu) > tol) return false;
  }
  return true;
}

DiagnosticsReport check_kkt(const Channel& ch, const SimplexVector& z, double tol) {
  require_dims(ch, z, "check_kkt");
  const std::size_t n = ch.input_size();
  std::vector<double> q;
  detail::output_distribution_raw(ch, z.entries(), q);
  std::vector<double> comp(n);
  for (std::size_t i = 0; i < n; ++i) comp[i] = component_extended(ch, q, i);

  double mu = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (z[i] > 0.0) mu += z[i] * comp[i];

  DiagnosticsReport rep;
  rep.kkt_multiplier = mu;
  double worst = 0.0;
  bool on_support_ok = true;
  bool off_support_ok = true;
  double rate = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = comp[i] - mu;
    if (z[i] > 0.0) {
      if (std::abs(d) > tol) on_support_ok = false;
      worst = std::max(worst, std::abs(d));
      rate += z[i] * d * d;
    } else {
      if (d > tol) off_support_ok = false;
      worst = std::max(worst, std::max(0.0, d));
    }
  }
  rep.is_stationary = on_support_ok;
  rep.is_kkt = on_support_ok && off_support_ok;
  rep.max_violation = worst;
  rep.lyapunov_rate = rate;
  return rep;
}

std::vector<double> projected_gradient_direction(const Channel& ch, const SimplexVector& z) {
  require_dims(ch, z, "projected_gradient_direction");
  std::vector<double> g = gradient(ch, z);
  double mean = 0.0;
  for (double x : g) mean += x;
  mean /= static_cast<double>(g.size());
  for (double& x : g) x -= mean;
  return g;
}

}  // namespace capflow
