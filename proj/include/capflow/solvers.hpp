#pragma once

#include <vector>

#include "capflow/channel.hpp"

namespace capflow {

enum class Method {
  euler_adjusted,  // explicit Euler step, then ReLU clamp and L1 renormalize
  euler_classic,   // explicit Euler step left unprojected; drift study only
  mwu,             // multiplicative weights, z_i <- z_i exp(tau dI_i) / norm
  baa,             // Blahut-Arimoto recurrence (equals mwu at tau = 1)
};

struct SolverConfig {
  Method method = Method::mwu;
  double step_size = 1.0;   // tau; ignored by baa
  double tolerance = 1e-4;  // L1 stopping threshold on successive iterates
  int max_iterations = 10000;
  bool record_trajectory = false;
  bool record_drift = false;  // euler modes only
};

struct DriftSample {
  double sum_abs_error = 0.0;   // |sum_i z_i - 1| before any normalization
  double l1_correction = 0.0;   // ||raw - normalized||_1 (adjusted mode)
};

struct TrajectoryPoint {
  SimplexVector point;
  double objective = 0.0;  // I(point), nats
};

struct SolverRun {
  SimplexVector final_point;
  double capacity_estimate = 0.0;  // I(final_point), nats
  int iterations = 0;
  bool converged = false;
  std::vector<TrajectoryPoint> trajectory;  // filled when record_trajectory
  std::vector<DriftSample> drift_log;       // filled when record_drift
  std::vector<double> baa_bounds;           // ln S per iteration, baa only
};

struct EulerResult {
  SimplexVector next;
  DriftSample drift;
};

// One explicit Euler step of the flow. With normalize the raw update is
// clamped and renormalized (AllZero if the clamp wipes everything); without
// it the raw point is returned as-is and BlowUp is raised on non-finite
// entries.
EulerResult euler_step(const Channel& ch, const SimplexVector& z, double tau, bool normalize);

// Multiplicative-weight update with exponent shift for overflow safety.
// Off-support coordinates stay exactly zero. BoundarySingularity if an
// output probability vanishes.
SimplexVector mwu_step(const Channel& ch, const SimplexVector& z, double tau);

struct BaaResult {
  SimplexVector next;
  double bound = 0.0;  // ln S, the per-iteration capacity bound
};

// One Blahut-Arimoto iteration written as in the classical recurrence.
BaaResult baa_step(const Channel& ch, const SimplexVector& z);

// Iterate the chosen method from start until the L1 change of successive
// iterates drops below tolerance or max_iterations is hit. Step errors
// propagate; plain non-convergence is reported through converged = false.
SolverRun run(const Channel& ch, const SimplexVector& start, const SolverConfig& cfg);

}  // namespace capflow
