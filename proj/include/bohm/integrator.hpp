#pragma once

#include <cstddef>
#include <vector>

#include "bohm/wavefield.hpp"

namespace bohm {

struct IntegratorConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double h_init = 1e-2;   // magnitude of the first trial step
  double h_min = 1e-14;   // below this the step cannot shrink further
  double h_max = 0.5;     // step magnitude cap
  std::size_t max_steps = 50000000;  // accepted + rejected attempts
  double singularity_radius = 1e-6;  // abort when this close to the node
};

enum class TrajectoryStatus { completed, hit_singularity, step_limit };

struct Trajectory {
  std::vector<PlanarState> samples;  // accepted steps, first entry is the IC
  TrajectoryStatus status = TrajectoryStatus::completed;
  std::size_t steps = 0;     // accepted steps
  std::size_t rejected = 0;  // rejected attempts
};

// Integrate the guidance flow from (ic, t0) to t1 (backward when t1 < t0)
// with an embedded Runge-Kutta 7(8) pair and PI-free proportional step
// control.  The final accepted step lands on t1 exactly.  Never throws for
// flow-related failures: the outcome is carried in Trajectory::status.
Trajectory integrate(const Field& field, Vec2 ic, double t0, double t1,
                     const IntegratorConfig& cfg = {});

// Throws SingularityAbort / StepLimitExceeded unless tr completed.
void require_completed(const Trajectory& tr);

struct StroboscopicOrbit {
  Vec2 ic;
  double t0 = 0.0;
  std::vector<Vec2> points;  // states at t0 + 2 pi n, n = 1..n_sections
  TrajectoryStatus status = TrajectoryStatus::completed;
};

// Sample the flow at integer multiples of the driving period 2 pi starting
// from t0 (descending multiples when backward is true).
StroboscopicOrbit stroboscopic(const Field& field, Vec2 ic,
                               std::size_t n_sections,
                               const IntegratorConfig& cfg = {},
                               double t0 = 0.0, bool backward = false);

// Advance a bare state from t to t1 in place; h carries the adapted step
// across calls (pass 0 to start fresh).
TrajectoryStatus advance_state(const Field& field, Vec2& r, double& t,
                               double t1, const IntegratorConfig& cfg,
                               double& h);

enum class TangentMode { analytic, finite_difference };

// Advance a state together with a fundamental matrix of the linearized flow
// from t to t1 (in place; h carries the adapted step across calls, pass 0 to
// start fresh).  analytic mode requires Field::jacobian; finite_difference
// builds the Jacobian from central differences of the velocity with
// increment 1e-7 * max(1, |r|).
TrajectoryStatus advance_tangent(const Field& field, TangentMode mode, Vec2& r,
                                 Mat2& m, double& t, double t1,
                                 const IntegratorConfig& cfg, double& h);

struct TangentResult {
  Trajectory base;
  Mat2 fundamental;  // M(t1) with M(t0) = identity
};

TangentResult integrate_tangent(const Field& field, Vec2 ic, double t0,
                                double t1, TangentMode mode,
                                const IntegratorConfig& cfg = {});

}  // namespace bohm
