#include "capflow/solvers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "capflow/errors.hpp"
#include "capflow/flow.hpp"

namespace capflow {

namespace {

void check_output_positive(const std::vector<double>& q) {
  for (std::size_t j = 0; j < q.size(); ++j)
    if (q[j] < kBoundaryEps)
      throw BoundarySingularityError("output probability " + std::to_string(j) +
                                     " vanished during a multiplicative step");
}

}  // namespace

EulerResult euler_step(const Channel& ch, const SimplexVector& z, double tau, bool normalize) {
  const FieldValue f = vector_field(ch, z);
  const std::size_t n = z.dimension();
  std::vector<double> raw(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    raw[i] = z[i] + tau * f.velocity[i];
    sum += raw[i];
  }
  EulerResult out;
  out.drift.sum_abs_error = std::abs(sum - 1.0);
  if (normalize) {
    SimplexVector next = relu_l1_normalize(raw);
    double corr = 0.0;
    for (std::size_t i = 0; i < n; ++i) corr += std::abs(raw[i] - next[i]);
    out.drift.l1_correction = corr;
    out.next = std::move(next);
  } else {
    for (double x : raw)
      if (!std::isfinite(x)) throw BlowUpError("non-finite iterate in classic Euler mode");
    out.next = SimplexVector::unchecked(std::move(raw));
  }
  return out;
}

SimplexVector mwu_step(const Channel& ch, const SimplexVector& z, double tau) {
  if (z.dimension() != ch.input_size())
    throw DimensionMismatchError("input dimension mismatch in mwu_step");
  const std::size_t n = ch.input_size(), m = ch.output_size();
  std::vector<double> q;
  detail::output_distribution_raw(ch, z.entries(), q);
  check_output_positive(q);
  std::vector<double> lnq(m);
  for (std::size_t j = 0; j < m; ++j) lnq[j] = std::log(q[j]);

  const auto& c = ch.row_constants();
  std::vector<double> a(n, 0.0);
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] == 0.0) continue;  // off-support coordinates stay off
    double s = 0.0;
    const auto row = ch.row(i);
    for (std::size_t j = 0; j < m; ++j) s += row[j] * lnq[j];
    a[i] = tau * (c[i] - 1.0 - s);
    shift = std::max(shift, a[i]);
  }
  std::vector<double> w(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] == 0.0) continue;
    w[i] = z[i] * std::exp(a[i] - shift);
    total += w[i];
  }
  for (double& x : w) x /= total;
  return SimplexVector::validated(std::move(w));
}

BaaResult baa_step(const Channel& ch, const SimplexVector& z) {
  if (z.dimension() != ch.input_size())
    throw DimensionMismatchError("input dimension mismatch in baa_step");
  const std::size_t n = ch.input_size(), m = ch.output_size();
  std::vector<double> q;
  detail::output_distribution_raw(ch, z.entries(), q);
  check_output_positive(q);

  // e_i = sum_j p(j|i) ln( p(j|i) z_i / q_j ), with r_i = exp(e_i) and
  // e_i = -inf (r_i = 0) off support
  std::vector<double> e(n, 0.0);
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] == 0.0) continue;
    double s = 0.0;
    const auto row = ch.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      const double p = row[j];
      if (p <= 0.0) continue;
      s += p * std::log(p * z[i] / q[j]);
    }
    e[i] = s;
    shift = std::max(shift, s);
  }
  std::vector<double> r(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] == 0.0) continue;
    r[i] = std::exp(e[i] - shift);
    total += r[i];
  }
  BaaResult out;
  out.bound = shift + std::log(total);  // ln sum_i exp(e_i)
  for (double& x : r) x /= total;
  out.next = SimplexVector::validated(std::move(r));
  return out;
}

SolverRun run(const Channel& ch, const SimplexVector& start, const SolverConfig& cfg) {
  if (start.dimension() != ch.input_size())
    throw DimensionMismatchError("start point dimension mismatch in run");
  if (cfg.max_iterations < 1) throw InputError("max_iterations must be >= 1");
  if (!(cfg.tolerance > 0.0)) throw InputError("tolerance must be positive");
  if (cfg.method != Method::baa && !(cfg.step_size > 0.0))
    throw InputError("step_size must be positive");

  SolverRun out;
  SimplexVector z = start;
  if (cfg.record_trajectory)
    out.trajectory.push_back({z, detail::mutual_information_raw(ch, z.entries())});

  for (int k = 1; k <= cfg.max_iterations; ++k) {
    SimplexVector next;
    switch (cfg.method) {
      case Method::euler_adjusted:
      case Method::euler_classic: {
        EulerResult st = euler_step(ch, z, cfg.step_size, cfg.method == Method::euler_adjusted);
        if (cfg.record_drift) out.drift_log.push_back(st.drift);
        next = std::move(st.next);
        break;
      }
      case Method::mwu:
        next = mwu_step(ch, z, cfg.step_size);
        break;
      case Method::baa: {
        BaaResult st = baa_step(ch, z);
        out.baa_bounds.push_back(st.bound);
        next = std::move(st.next);
        break;
      }
    }
    const double dist = l1_distance(z, next);
    if (cfg.record_trajectory)
      out.trajectory.push_back({next, detail::mutual_information_raw(ch, next.entries())});
    z = std::move(next);
    out.iterations = k;
    if (dist < cfg.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.capacity_estimate = detail::mutual_information_raw(ch, z.entries());
  out.final_point = std::move(z);
  return out;
}

}  // namespace capflow
