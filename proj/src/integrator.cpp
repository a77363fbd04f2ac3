#include "bohm/integrator.hpp"

#include <array>
#include <stdexcept>

#include "bohm/detail/rkf78.hpp"
#include "bohm/errors.hpp"

namespace bohm {

namespace {

// Node-proximity guard shared by the drivers.
bool clear_of_node(const Field& field, double t, Vec2 r, double radius) {
  std::optional<Vec2> v = field.vortex(t);
  if (!v) return true;
  return dist(r, *v) >= radius;
}

struct StateRhs {
  const Field& field;
  void operator()(double t, const std::array<double, 2>& y,
                  std::array<double, 2>& dydt) const {
    Vec2 v = field.velocity(t, {y[0], y[1]});
    dydt[0] = v.x;
    dydt[1] = v.y;
  }
};

// State plus the two columns of a fundamental matrix.
struct TangentRhs {
  const Field& field;
  TangentMode mode;
  void operator()(double t, const std::array<double, 6>& y,
                  std::array<double, 6>& dydt) const {
    Vec2 r{y[0], y[1]};
    Vec2 v = field.velocity(t, r);
    dydt[0] = v.x;
    dydt[1] = v.y;
    Mat2 j;
    if (mode == TangentMode::analytic) {
      std::optional<Mat2> ja = field.jacobian(t, r);
      if (!ja)
        throw std::invalid_argument(
            "integrate_tangent: field has no analytic Jacobian");
      j = *ja;
    } else {
      double eps = 1e-7 * std::max(1.0, norm(r));
      Vec2 vxp = field.velocity(t, {r.x + eps, r.y});
      Vec2 vxm = field.velocity(t, {r.x - eps, r.y});
      Vec2 vyp = field.velocity(t, {r.x, r.y + eps});
      Vec2 vym = field.velocity(t, {r.x, r.y - eps});
      j.m00 = (vxp.x - vxm.x) / (2.0 * eps);
      j.m10 = (vxp.y - vxm.y) / (2.0 * eps);
      j.m01 = (vyp.x - vym.x) / (2.0 * eps);
      j.m11 = (vyp.y - vym.y) / (2.0 * eps);
    }
    dydt[2] = j.m00 * y[2] + j.m01 * y[3];
    dydt[3] = j.m10 * y[2] + j.m11 * y[3];
    dydt[4] = j.m00 * y[4] + j.m01 * y[5];
    dydt[5] = j.m10 * y[4] + j.m11 * y[5];
  }
};

}  // namespace

Trajectory integrate(const Field& field, Vec2 ic, double t0, double t1,
                     const IntegratorConfig& cfg) {
  Trajectory tr;
  tr.samples.push_back({ic.x, ic.y, t0});
  if (!clear_of_node(field, t0, ic, cfg.singularity_radius)) {
    tr.status = TrajectoryStatus::hit_singularity;
    return tr;
  }
  std::array<double, 2> y{ic.x, ic.y};
  double t = t0, h = 0.0;
  tr.status = detail::rkf78_integrate(
      StateRhs{field}, y, t, t1, cfg, h, tr.steps, tr.rejected,
      [&](double tc, const std::array<double, 2>& yc) {
        tr.samples.push_back({yc[0], yc[1], tc});
        return clear_of_node(field, tc, {yc[0], yc[1]},
                             cfg.singularity_radius);
      });
  return tr;
}

void require_completed(const Trajectory& tr) {
  if (tr.status == TrajectoryStatus::hit_singularity)
    throw SingularityAbort("trajectory aborted near a node");
  if (tr.status == TrajectoryStatus::step_limit)
    throw StepLimitExceeded("trajectory exceeded the step limit");
}

StroboscopicOrbit stroboscopic(const Field& field, Vec2 ic,
                               std::size_t n_sections,
                               const IntegratorConfig& cfg, double t0,
                               bool backward) {
  StroboscopicOrbit orbit;
  orbit.ic = ic;
  orbit.t0 = t0;
  orbit.points.reserve(n_sections);
  std::array<double, 2> y{ic.x, ic.y};
  double t = t0, h = 0.0;
  std::size_t steps = 0, rejected = 0;
  const double span = backward ? -two_pi : two_pi;
  for (std::size_t n = 1; n <= n_sections; ++n) {
    double target = t0 + span * static_cast<double>(n);
    TrajectoryStatus st = detail::rkf78_integrate(
        StateRhs{field}, y, t, target, cfg, h, steps, rejected,
        [&](double tc, const std::array<double, 2>& yc) {
          return clear_of_node(field, tc, {yc[0], yc[1]},
                               cfg.singularity_radius);
        });
    if (st != TrajectoryStatus::completed) {
      orbit.status = st;
      return orbit;
    }
    orbit.points.push_back({y[0], y[1]});
  }
  return orbit;
}

TrajectoryStatus advance_state(const Field& field, Vec2& r, double& t,
                               double t1, const IntegratorConfig& cfg,
                               double& h) {
  std::array<double, 2> y{r.x, r.y};
  std::size_t steps = 0, rejected = 0;
  TrajectoryStatus st = detail::rkf78_integrate(
      StateRhs{field}, y, t, t1, cfg, h, steps, rejected,
      [&](double tc, const std::array<double, 2>& yc) {
        return clear_of_node(field, tc, {yc[0], yc[1]},
                             cfg.singularity_radius);
      });
  r = {y[0], y[1]};
  return st;
}

TrajectoryStatus advance_tangent(const Field& field, TangentMode mode, Vec2& r,
                                 Mat2& m, double& t, double t1,
                                 const IntegratorConfig& cfg, double& h) {
  std::array<double, 6> y{r.x, r.y, m.m00, m.m10, m.m01, m.m11};
  std::size_t steps = 0, rejected = 0;
  TrajectoryStatus st = detail::rkf78_integrate(
      TangentRhs{field, mode}, y, t, t1, cfg, h, steps, rejected,
      [&](double tc, const std::array<double, 6>& yc) {
        return clear_of_node(field, tc, {yc[0], yc[1]},
                             cfg.singularity_radius);
      });
  r = {y[0], y[1]};
  m = {y[2], y[4], y[3], y[5]};
  return st;
}

TangentResult integrate_tangent(const Field& field, Vec2 ic, double t0,
                                double t1, TangentMode mode,
                                const IntegratorConfig& cfg) {
  TangentResult res;
  res.base.samples.push_back({ic.x, ic.y, t0});
  if (!clear_of_node(field, t0, ic, cfg.singularity_radius)) {
    res.base.status = TrajectoryStatus::hit_singularity;
    return res;
  }
  std::array<double, 6> y{ic.x, ic.y, 1.0, 0.0, 0.0, 1.0};
  double t = t0, h = 0.0;
  res.base.status = detail::rkf78_integrate(
      TangentRhs{field, mode}, y, t, t1, cfg, h, res.base.steps,
      res.base.rejected, [&](double tc, const std::array<double, 6>& yc) {
        res.base.samples.push_back({yc[0], yc[1], tc});
        return clear_of_node(field, tc, {yc[0], yc[1]},
                             cfg.singularity_radius);
      });
  res.fundamental = {y[2], y[4], y[3], y[5]};
  return res;
}

}  // namespace bohm
