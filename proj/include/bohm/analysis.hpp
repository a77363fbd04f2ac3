#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bohm/integrator.hpp"
#include "bohm/wavefield.hpp"

namespace bohm {

// Autonomous frame of the circular configuration (B = C), with the node
// moving on the circle of radius a: velocity
//   dx/dt = -(y + a sin t) / W,  dy/dt = (x + a cos t) / W,
//   W = (x + a cos t)^2 + (y + a sin t)^2.
// Identical trajectories to the reduced field with equal semi-axes; W plays
// the role of the squared distance to the node.
class ReducedCircleField : public Field {
 public:
  explicit ReducedCircleField(double a) : a_(a) {}
  double radius() const { return a_; }
  Vec2 velocity(double t, Vec2 r) const override;
  std::optional<Vec2> vortex(double t) const override {
    return Vec2{-a_ * std::cos(t), -a_ * std::sin(t)};
  }
  std::optional<Mat2> jacobian(double t, Vec2 r) const override;

 private:
  double a_;
};

// Stream function of the reduced circle field, in the convention
// dx/dt = dH/dy, dy/dt = -dH/dx.
double hamiltonian_H(double a, Vec2 r, double t);

// Conserved quantity of the reduced circle flow:
// ((x + a cos t)^2 + (y + a sin t)^2) e^{-x^2 - y^2}.
double first_integral_H2(double a, Vec2 r, double t);

enum class OrbitKind { elliptic, hyperbolic };

// One of the two circular periodic orbits r(t) = q (cos t, sin t) of the
// reduced circle field.  exponent is the characteristic exponent: growth
// rate sigma for the hyperbolic orbit, angular rate nu for the elliptic one
// (multipliers e^{+-2 pi sigma} and e^{+-2 pi i nu}).
struct PeriodicOrbit {
  double radius = 0.0;
  OrbitKind kind = OrbitKind::elliptic;
  double exponent = 0.0;
};

// The elliptic/hyperbolic pair of circular periodic orbits, radii
// q = (-a +- sqrt(a^2 + 4)) / 2.  Throws DegenerateError at a = 0; a < 0 is
// handled by reflecting the a > 0 pair through the origin.
std::pair<PeriodicOrbit, PeriodicOrbit> periodic_orbits(double a);

// Monodromy matrix over one period of the linearized flow around the orbit,
//   dw/dt = q^2 [ sin 2t, -cos 2t; -cos 2t, -sin 2t ] w,
// integrated from the identity over [0, 2 pi].
Mat2 monodromy(const PeriodicOrbit& orbit, const IntegratorConfig& cfg = {});

// Eigenvalues of a real 2x2 matrix as (re, im) pairs, large modulus first.
std::pair<Cx, Cx> eigenvalues(const Mat2& m);

// Unstable / stable directions at t = 0 of the hyperbolic orbit:
// (1 - q^2, +- sigma) with q the hyperbolic radius.
std::pair<Vec2, Vec2> hyperbolic_directions(double a);

// Driftless case A = 0: every trajectory is the circle of radius alpha,
// traversed nonuniformly; the angular frequency is
//   omega = 2 B C / (alpha^2 (B^2 + C^2)),
// strictly decreasing in alpha.
double autonomous_frequency(double B, double C, double alpha);

// Position on the circle at time t given the phase beta at t = 0.  The time
// parametrization gamma t = tau + delta sin(2 B C tau + 2 beta) is inverted
// with a safeguarded Newton iteration (it is strictly monotone).
Vec2 autonomous_solution(double B, double C, double alpha, double beta,
                         double t);

// Near-node expansion of the interpolating Hamiltonian of the circle-case
// period map, as a function of the first-integral level I (small I > 0):
//   h(I) = -(1/2) ln I - a^2/2 - e^{a^2} I / 2 - (3/2) a^2 e^{2 a^2} I^2.
// Throws DomainError for I <= 0.
double h_vortex(double a, double I);
double dh_vortex(double a, double I);

// Orbit averages entering the twist expansion around the elliptic orbit.
// P = 1 - q^2 cos 2t with q the elliptic radius; the three integrands are
//   alpha_1   = 1 / P
//   alpha_3/2 = -(q (1 + q^2) sin t - (8/3) q^3 sin^3 t) / P^{5/2}
//   alpha_2   = (3/2) (q (1 + q^2) sin t - (8/3) q^3 sin^3 t)^2 / P^4.
// pi1 is the closed form 1 / sqrt(1 - q^4) of the alpha_1 average; the two
// pi2 readings evaluate a published closed-form candidate for the alpha_2
// average at x = a and x = q, kept for comparison (the quadrature value is
// the authoritative one).
struct EllipticExpansion {
  double a = 0.0;
  double q = 0.0;  // elliptic radius
  double pi1 = 0.0;
  double avg_alpha1 = 0.0;
  double avg_alpha32 = 0.0;
  double avg_alpha2 = 0.0;
  double pi2_reading_a = 0.0;
  double pi2_reading_q = 0.0;
};

EllipticExpansion elliptic_expansion(double a, std::size_t quad_points = 20001);

// Affine action variable around the elliptic orbit: J = 1 - e^{a^2} I / (a + q)^2.
double elliptic_J(double a, double I);

// Interpolating Hamiltonian around the elliptic orbit through second order,
//   h(J) = -ln((a + q)^2) + (1 - pi1) J / 2 - (1 + 2 pi2) J^2 / 4,
// with pi2 taken from the quadrature average.
double h_elliptic(double a, double J);

struct RotationEstimate {
  double value = 0.0;  // mean advance per section, in [0, 2 pi)
  double error = 0.0;  // half-sample discrepancy of the windowed mean
  std::size_t increments = 0;
};

// Mean advance of the section sequence around center.  Increments are taken
// mod 2 pi, recentered on their circular mean, and averaged with a smooth
// Birkhoff window, which converges superpolynomially on invariant circles;
// the error field compares against the half-length estimate.  Throws
// NonRotatingError when the points do not wind (degenerate radius).
RotationEstimate rotation_number(const std::vector<Vec2>& points, Vec2 center);

// Continuous winding rate of the flow around the moving node, measured by
// accumulating the angle of r(t) - node(t) along the trajectory.  The field
// must expose a node position.  Requires T != 0.
double comoving_winding_rate(const Field& field, Vec2 ic, double T,
                             const IntegratorConfig& cfg = {});

// Largest Lyapunov exponent by tangent-vector renormalization: the tangent
// vector is renormalized every renorm_interval and the average log growth
// per unit time is returned.  Throws SingularityAbort / StepLimitExceeded
// when the base trajectory fails.
double lyapunov_exponent(const Field& field, Vec2 ic, double T,
                         double renorm_interval = two_pi,
                         TangentMode mode = TangentMode::finite_difference,
                         const IntegratorConfig& cfg = {},
                         Vec2 seed = {1.0, 0.0});

// Largest deviation between the forward flow from (x, -y) and the reflected
// backward flow from (x, y), sampled at n_samples equal time fractions of T.
// Zero (to integration accuracy) for fields with the reversal symmetry
// (x, y, t) -> (x, -y, -t).
double reversibility_residual(const Field& field, Vec2 ic, double T,
                              std::size_t n_samples = 16,
                              const IntegratorConfig& cfg = {});

// Fixed point of the period-2pi map near guess, by Newton iteration on
// P(r) - r with the Jacobian from the tangent flow.
Vec2 find_section_fixed_point(const Field& field, Vec2 guess,
                              const IntegratorConfig& cfg = {},
                              int max_iter = 16, double tol = 1e-12);

}  // namespace bohm
