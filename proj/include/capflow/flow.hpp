#pragma once

#include <vector>

#include "capflow/channel.hpp"

namespace capflow {

// Velocity of the simplex dynamics dz_i/dt = z_i (dI_i - mu) at a point.
// mu is accumulated from the boundary-safe terms z_i dI_i, so the field is
// finite on the whole simplex, vertices included.
struct FieldValue {
  std::vector<double> velocity;
  double mean_payoff = 0.0;  // mu, nats
};

struct DiagnosticsReport {
  bool is_stationary = false;
  bool is_kkt = false;
  double kkt_multiplier = 0.0;  // nats; equals I(z) - 1 at an optimum
  double max_violation = 0.0;
  double lyapunov_rate = 0.0;
};

FieldValue vector_field(const Channel& ch, const SimplexVector& z);

// sum_i z_i (dI_i - mu)^2, the growth rate of I along the flow. Needs every
// output probability positive (interior point, or boundary point whose
// image avoids the output boundary).
double lyapunov_rate(const Channel& ch, const SimplexVector& z);

// max_{i in supp(z)} |dI_i - mu| <= tol. On-support components are always
// finite, so this works at any point of the simplex.
bool check_stationary(const Channel& ch, const SimplexVector& z, double tol);

// Stationarity plus the off-support condition dI_i <= mu + tol. Off-support
// components may be +inf when an output probability vanishes; the check then
// simply fails, it does not throw.
DiagnosticsReport check_kkt(const Channel& ch, const SimplexVector& z, double tol);

// Gradient minus its coordinate mean; tangent to the simplex, for plots.
std::vector<double> projected_gradient_direction(const Channel& ch, const SimplexVector& z);

}  // namespace capflow
