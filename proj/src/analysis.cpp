#include "bohm/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bohm/detail/rkf78.hpp"
#include "bohm/errors.hpp"

namespace bohm {

Vec2 ReducedCircleField::velocity(double t, Vec2 r) const {
  double u = r.x + a_ * std::cos(t);
  double v = r.y + a_ * std::sin(t);
  double w = u * u + v * v;
  if (!(w > 1e-12))
    throw SingularityError("velocity: evaluation at the node (distance^2 " +
                           std::to_string(w) + ")");
  return {-v / w, u / w};
}

std::optional<Mat2> ReducedCircleField::jacobian(double t, Vec2 r) const {
  double u = r.x + a_ * std::cos(t);
  double v = r.y + a_ * std::sin(t);
  double w = u * u + v * v;
  if (!(w > 1e-12))
    throw SingularityError("jacobian: evaluation at the node");
  double w2 = w * w;
  Mat2 j;
  j.m00 = 2.0 * u * v / w2;
  j.m01 = (v * v - u * u) / w2;
  j.m10 = j.m01;
  j.m11 = -j.m00;
  return j;
}

double hamiltonian_H(double a, Vec2 r, double t) {
  double u = r.x + a * std::cos(t);
  double v = r.y + a * std::sin(t);
  double w = u * u + v * v;
  if (!(w > 0.0)) throw DomainError("hamiltonian_H: evaluation at the node");
  return -0.5 * std::log(w);
}

double first_integral_H2(double a, Vec2 r, double t) {
  double u = r.x + a * std::cos(t);
  double v = r.y + a * std::sin(t);
  return (u * u + v * v) * std::exp(-r.x * r.x - r.y * r.y);
}

std::pair<PeriodicOrbit, PeriodicOrbit> periodic_orbits(double a) {
  if (std::abs(a) < 1e-12)
    throw DegenerateError(
        "periodic_orbits: the orbit pair degenerates at a = 0");
  double s = a < 0.0 ? -1.0 : 1.0;
  double aa = std::abs(a);
  double root = std::sqrt(aa * aa + 4.0);
  double qp = 0.5 * (-aa + root);  // elliptic radius, in (0, 1)
  double qm = 0.5 * (-aa - root);  // hyperbolic radius, < -1
  PeriodicOrbit elliptic{s * qp, OrbitKind::elliptic,
                         std::sqrt(1.0 - qp * qp * qp * qp)};
  PeriodicOrbit hyperbolic{s * qm, OrbitKind::hyperbolic,
                           std::sqrt(qm * qm * qm * qm - 1.0)};
  return {elliptic, hyperbolic};
}

Mat2 monodromy(const PeriodicOrbit& orbit, const IntegratorConfig& cfg) {
  double q2 = orbit.radius * orbit.radius;
  auto rhs = [q2](double t, const std::array<double, 4>& w,
                  std::array<double, 4>& dw) {
    double s2 = std::sin(2.0 * t), c2 = std::cos(2.0 * t);
    dw[0] = q2 * (s2 * w[0] - c2 * w[1]);
    dw[1] = q2 * (-c2 * w[0] - s2 * w[1]);
    dw[2] = q2 * (s2 * w[2] - c2 * w[3]);
    dw[3] = q2 * (-c2 * w[2] - s2 * w[3]);
  };
  std::array<double, 4> w{1.0, 0.0, 0.0, 1.0};
  double t = 0.0, h = 0.0;
  std::size_t steps = 0, rejected = 0;
  TrajectoryStatus st = detail::rkf78_integrate(
      rhs, w, t, two_pi, cfg, h, steps, rejected,
      [](double, const std::array<double, 4>&) { return true; });
  if (st != TrajectoryStatus::completed)
    throw StepLimitExceeded("monodromy: variational integration failed");
  return {w[0], w[2], w[1], w[3]};
}

std::pair<Cx, Cx> eigenvalues(const Mat2& m) {
  double s = 0.5 * trace(m);
  double d = det(m);
  double disc = s * s - d;
  if (disc >= 0.0) {
    double r = std::sqrt(disc);
    double big = s >= 0.0 ? s + r : s - r;
    double small = big != 0.0 ? d / big : s - std::copysign(r, s);
    if (std::abs(big) >= std::abs(small))
      return {Cx{big, 0.0}, Cx{small, 0.0}};
    return {Cx{small, 0.0}, Cx{big, 0.0}};
  }
  double im = std::sqrt(-disc);
  return {Cx{s, im}, Cx{s, -im}};
}

std::pair<Vec2, Vec2> hyperbolic_directions(double a) {
  PeriodicOrbit hyp = periodic_orbits(a).second;
  double q2 = hyp.radius * hyp.radius;
  Vec2 unstable{1.0 - q2, hyp.exponent};
  Vec2 stable{1.0 - q2, -hyp.exponent};
  double nu = norm(unstable), ns = norm(stable);
  return {(1.0 / nu) * unstable, (1.0 / ns) * stable};
}

double autonomous_frequency(double B, double C, double alpha) {
  if (B == 0.0 || C == 0.0 || alpha == 0.0)
    throw std::invalid_argument("autonomous_frequency: B, C, alpha nonzero");
  return 2.0 * B * C / (alpha * alpha * (B * B + C * C));
}

Vec2 autonomous_solution(double B, double C, double alpha, double beta,
                         double t) {
  if (B == 0.0 || C == 0.0 || alpha == 0.0)
    throw std::invalid_argument("autonomous_solution: B, C, alpha nonzero");
  double bc = B * C;
  double gamma = 2.0 / (alpha * alpha * (B * B + C * C));
  double delta = (B * B - C * C) / (2.0 * (B * B + C * C) * bc);
  // gamma t + delta sin(2 beta) = tau + delta sin(2 B C tau + 2 beta); the
  // right side has slope >= 1 - |B^2 - C^2| / (B^2 + C^2) > 0, so Newton
  // with a bracket is safe.
  double target = gamma * t + delta * std::sin(2.0 * beta);
  double lo = target - std::abs(delta), hi = target + std::abs(delta);
  double tau = target;
  for (int i = 0; i < 100; ++i) {
    double g = tau + delta * std::sin(2.0 * bc * tau + 2.0 * beta) - target;
    if (std::abs(g) <= 1e-14 * (1.0 + std::abs(target))) break;
    if (g > 0.0)
      hi = tau;
    else
      lo = tau;
    double gp = 1.0 + 2.0 * bc * delta * std::cos(2.0 * bc * tau + 2.0 * beta);
    double next = tau - g / gp;
    tau = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
  }
  double phase = bc * tau + beta;
  return {alpha * std::cos(phase), alpha * std::sin(phase)};
}

double h_vortex(double a, double I) {
  if (!(I > 0.0)) throw DomainError("h_vortex: I must be positive");
  double ea = std::exp(a * a);
  return -0.5 * std::log(I) - 0.5 * a * a - 0.5 * ea * I -
         1.5 * a * a * ea * ea * I * I;
}

double dh_vortex(double a, double I) {
  if (!(I > 0.0)) throw DomainError("dh_vortex: I must be positive");
  double ea = std::exp(a * a);
  return -0.5 / I - 0.5 * ea - 3.0 * a * a * ea * ea * I;
}

namespace {

double pi2_candidate(double x) {
  double x2 = x * x;
  double x4 = x2 * x2;
  double poly =
      41.0 * x4 * x4 - 88.0 * x4 * x2 + 119.0 * x4 - 54.0 * x2 + 18.0;
  double one_m = 1.0 - x4;
  return x2 * poly /
         (36.0 * std::sqrt(one_m) * one_m * one_m * (1.0 + x2));
}

}  // namespace

EllipticExpansion elliptic_expansion(double a, std::size_t quad_points) {
  if (!(a > 0.0))
    throw DegenerateError("elliptic_expansion: requires a > 0");
  if (quad_points < 3)
    throw std::invalid_argument("elliptic_expansion: too few nodes");
  EllipticExpansion ex;
  ex.a = a;
  double q = periodic_orbits(a).first.radius;
  ex.q = q;
  double q2 = q * q, q4 = q2 * q2;
  ex.pi1 = 1.0 / std::sqrt(1.0 - q4);

  std::size_t n = quad_points;
  double hstep = two_pi / static_cast<double>(n - 1);
  double s1 = 0.0, s32 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = hstep * static_cast<double>(i);
    double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    double st = std::sin(t);
    double p = 1.0 - q2 * std::cos(2.0 * t);
    double c3 = q * (1.0 + q2) * st - (8.0 / 3.0) * q2 * q * st * st * st;
    s1 += w / p;
    s32 += w * (-c3) / (p * p * std::sqrt(p));
    s2 += w * 1.5 * c3 * c3 / (p * p * p * p);
  }
  double scale = hstep / two_pi;
  ex.avg_alpha1 = s1 * scale;
  ex.avg_alpha32 = s32 * scale;
  ex.avg_alpha2 = s2 * scale;
  ex.pi2_reading_a = pi2_candidate(a);
  ex.pi2_reading_q = pi2_candidate(q);
  return ex;
}

double elliptic_J(double a, double I) {
  double q = periodic_orbits(a).first.radius;
  double denom = (a + q) * (a + q);
  return 1.0 - std::exp(a * a) * I / denom;
}

double h_elliptic(double a, double J) {
  EllipticExpansion ex = elliptic_expansion(a);
  double c0 = -std::log((a + ex.q) * (a + ex.q));
  return c0 + 0.5 * (1.0 - ex.pi1) * J -
         0.25 * (1.0 + 2.0 * ex.avg_alpha2) * J * J;
}

namespace {

// Smooth bump window w(s) = exp(-1 / (s (1 - s))) on (0, 1).
double windowed_mean(const std::vector<double>& inc, std::size_t count) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    double s = (static_cast<double>(i) + 1.0) / (static_cast<double>(count) + 1.0);
    double w = std::exp(-1.0 / (s * (1.0 - s)));
    num += w * inc[i];
    den += w;
  }
  return num / den;
}

}  // namespace

RotationEstimate rotation_number(const std::vector<Vec2>& points,
                                 Vec2 center) {
  if (points.size() < 9)
    throw std::invalid_argument("rotation_number: need at least 9 points");
  double ref = 1.0 + norm(center);
  double diam = 0.0;
  std::vector<double> theta(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    Vec2 d = points[i] - center;
    if (norm(d) < 1e-12 * ref)
      throw NonRotatingError("rotation_number: point on the center");
    theta[i] = std::atan2(d.y, d.x);
    diam = std::max(diam, dist(points[i], points[0]));
  }
  if (diam < 1e-9)
    throw NonRotatingError("rotation_number: section points coincide");

  std::size_t m = points.size() - 1;
  std::vector<double> inc(m);
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    inc[i] = wrap_pi(theta[i + 1] - theta[i]);
    sx += std::cos(inc[i]);
    sy += std::sin(inc[i]);
  }
  // Recenter each increment on the circular mean so that a true advance near
  // the wrap boundary does not alternate between +pi and -pi.
  double m0 = std::atan2(sy, sx);
  for (std::size_t i = 0; i < m; ++i) inc[i] = m0 + wrap_pi(inc[i] - m0);

  RotationEstimate est;
  double full = windowed_mean(inc, m);
  double half = windowed_mean(inc, m / 2);
  est.value = wrap_2pi(full);
  est.error = std::abs(full - half);
  est.increments = m;
  return est;
}

double comoving_winding_rate(const Field& field, Vec2 ic, double T,
                             const IntegratorConfig& cfg) {
  if (T == 0.0)
    throw std::invalid_argument("comoving_winding_rate: T must be nonzero");
  std::optional<Vec2> v0 = field.vortex(0.0);
  if (!v0)
    throw std::invalid_argument(
        "comoving_winding_rate: field has no node to wind about");
  Vec2 d0 = ic - *v0;
  double prev = std::atan2(d0.y, d0.x);
  double total = 0.0;
  std::array<double, 2> y{ic.x, ic.y};
  double t = 0.0, h = 0.0;
  std::size_t steps = 0, rejected = 0;
  auto rhs = [&field](double tc, const std::array<double, 2>& yc,
                      std::array<double, 2>& dy) {
    Vec2 v = field.velocity(tc, {yc[0], yc[1]});
    dy[0] = v.x;
    dy[1] = v.y;
  };
  TrajectoryStatus st = detail::rkf78_integrate(
      rhs, y, t, T, cfg, h, steps, rejected,
      [&](double tc, const std::array<double, 2>& yc) {
        Vec2 d = Vec2{yc[0], yc[1]} - *field.vortex(tc);
        if (norm(d) < cfg.singularity_radius) return false;
        double th = std::atan2(d.y, d.x);
        total += wrap_pi(th - prev);
        prev = th;
        return true;
      });
  if (st == TrajectoryStatus::hit_singularity)
    throw SingularityAbort("comoving_winding_rate: trajectory hit the node");
  if (st == TrajectoryStatus::step_limit)
    throw StepLimitExceeded("comoving_winding_rate: step limit");
  return total / T;
}

double lyapunov_exponent(const Field& field, Vec2 ic, double T,
                         double renorm_interval, TangentMode mode,
                         const IntegratorConfig& cfg, Vec2 seed) {
  if (!(T > 0.0) || !(renorm_interval > 0.0))
    throw std::invalid_argument("lyapunov_exponent: T and interval positive");
  double ns = norm(seed);
  if (!(ns > 0.0))
    throw std::invalid_argument("lyapunov_exponent: zero seed vector");
  Vec2 w = (1.0 / ns) * seed;
  Vec2 r = ic;
  double t = 0.0, h = 0.0, sum = 0.0;
  while (t < T - 1e-9) {
    double target = std::min(t + renorm_interval, T);
    Mat2 m;
    TrajectoryStatus st = advance_tangent(field, mode, r, m, t, target, cfg, h);
    if (st == TrajectoryStatus::hit_singularity)
      throw SingularityAbort("lyapunov_exponent: trajectory hit the node");
    if (st == TrajectoryStatus::step_limit)
      throw StepLimitExceeded("lyapunov_exponent: step limit");
    w = apply(m, w);
    double g = norm(w);
    if (!(g > 0.0) || !std::isfinite(g))
      throw std::runtime_error("lyapunov_exponent: tangent vector collapsed");
    sum += std::log(g);
    w = (1.0 / g) * w;
  }
  return sum / T;
}

double reversibility_residual(const Field& field, Vec2 ic, double T,
                              std::size_t n_samples,
                              const IntegratorConfig& cfg) {
  if (n_samples == 0)
    throw std::invalid_argument("reversibility_residual: need samples");
  Vec2 fwd{ic.x, -ic.y};  // reflected start, flows forward
  Vec2 bwd = ic;          // original start, flows backward
  double tf = 0.0, tb = 0.0, hf = 0.0, hb = 0.0;
  double residual = 0.0;
  for (std::size_t k = 1; k <= n_samples; ++k) {
    double tk = T * static_cast<double>(k) / static_cast<double>(n_samples);
    TrajectoryStatus sf = advance_state(field, fwd, tf, tk, cfg, hf);
    TrajectoryStatus sb = advance_state(field, bwd, tb, -tk, cfg, hb);
    if (sf != TrajectoryStatus::completed || sb != TrajectoryStatus::completed)
      throw SingularityAbort("reversibility_residual: trajectory aborted");
    Vec2 mirrored{bwd.x, -bwd.y};
    residual = std::max(residual, dist(mirrored, fwd));
  }
  return residual;
}

Vec2 find_section_fixed_point(const Field& field, Vec2 guess,
                              const IntegratorConfig& cfg, int max_iter,
                              double tol) {
  Vec2 r = guess;
  for (int it = 0; it < max_iter; ++it) {
    Vec2 p = r;
    Mat2 m;
    double t = 0.0, h = 0.0;
    TrajectoryStatus st = advance_tangent(
        field, TangentMode::finite_difference, p, m, t, two_pi, cfg, h);
    if (st != TrajectoryStatus::completed)
      throw SingularityAbort("find_section_fixed_point: map evaluation failed");
    Vec2 g = p - r;
    if (norm(g) < tol) return r;
    Mat2 a{m.m00 - 1.0, m.m01, m.m10, m.m11 - 1.0};
    double dd = det(a);
    if (std::abs(dd) < 1e-14)
      throw std::runtime_error(
          "find_section_fixed_point: singular Newton system");
    Vec2 step{(-g.x * a.m11 + g.y * a.m01) / dd,
              (g.x * a.m10 - g.y * a.m00) / dd};
    r = r + step;
  }
  throw std::runtime_error("find_section_fixed_point: no convergence");
}

}  // namespace bohm
