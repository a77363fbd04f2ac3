#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bohm/analysis.hpp"
#include "bohm/errors.hpp"
#include "bohm/integrator.hpp"
#include "bohm/wavefield.hpp"

using namespace bohm;

TEST_CASE("periodic orbit radii and exponents match frozen references") {
  // Values computed independently with extended precision and frozen here.
  struct Ref {
    double a, q_plus, q_minus, sigma, nu;
  };
  const Ref refs[] = {
      {0.1, 0.9512492197250393, -1.0512492197250394, 0.4704265013418496,
       0.4256772171079078},
      {0.4, 0.8198039027185571, -1.219803902718557, 1.1017760988280847,
       0.7404799605315684},
      {1.0, 0.6180339887498949, -1.618033988749895, 2.4195251530516657,
       0.9241763718304448},
  };
  for (const Ref& r : refs) {
    auto [ell, hyp] = periodic_orbits(r.a);
    CHECK(std::abs(ell.radius - r.q_plus) < 1e-14);
    CHECK(std::abs(hyp.radius - r.q_minus) < 1e-14);
    CHECK(std::abs(ell.exponent - r.nu) < 1e-14);
    CHECK(std::abs(hyp.exponent - r.sigma) < 1e-14);
    CHECK(ell.kind == OrbitKind::elliptic);
    CHECK(hyp.kind == OrbitKind::hyperbolic);
  }
  auto [e2, h2] = periodic_orbits(2.0);
  CHECK(std::abs(e2.radius - 0.41421356237309515) < 1e-14);
  CHECK(std::abs(h2.exponent - 5.7419998910203) < 1e-11);
  CHECK(std::abs(std::exp(two_pi * periodic_orbits(0.4).second.exponent) -
                 1015.020) < 0.01);
  CHECK_THROWS_AS(periodic_orbits(0.0), DegenerateError);
}

TEST_CASE("periodic orbits of a reflected field are reflected") {
  auto [ell_p, hyp_p] = periodic_orbits(0.4);
  auto [ell_m, hyp_m] = periodic_orbits(-0.4);
  CHECK(std::abs(std::abs(ell_m.radius) - ell_p.radius) < 1e-14);
  CHECK(std::abs(std::abs(hyp_m.radius) - std::abs(hyp_p.radius)) < 1e-14);
  CHECK(ell_m.exponent == ell_p.exponent);
  CHECK(hyp_m.exponent == hyp_p.exponent);
  // Whatever the sign convention, the returned points are fixed points.
  ReducedCircleField f(-0.4);
  for (double q : {ell_m.radius, hyp_m.radius}) {
    Trajectory tr = integrate(f, {q, 0.0}, 0.0, two_pi);
    REQUIRE(tr.status == TrajectoryStatus::completed);
    CHECK(dist({tr.samples.back().x, tr.samples.back().y}, {q, 0.0}) < 1e-7);
  }
}

TEST_CASE("both circular orbits close after one period") {
  ReducedCircleField f(0.4);
  auto [ell, hyp] = periodic_orbits(0.4);
  IntegratorConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-13;
  for (const PeriodicOrbit& o : {ell, hyp}) {
    Trajectory tr = integrate(f, {o.radius, 0.0}, 0.0, two_pi, cfg);
    REQUIRE(tr.status == TrajectoryStatus::completed);
    CHECK(dist({tr.samples.back().x, tr.samples.back().y}, {o.radius, 0.0}) <
          1e-8);
  }
}

TEST_CASE("monodromy equals the field's variational matrix") {
  // The closed-form variational system used by monodromy() must agree with
  // the linearization of the actual field along the orbit: q(q + a) = 1
  // makes the two coefficient matrices identical.
  double a = 0.4;
  auto [ell, hyp] = periodic_orbits(a);
  ReducedCircleField f(a);
  for (const PeriodicOrbit& o : {ell, hyp}) {
    Mat2 m_orbit = monodromy(o);
    TangentResult tr =
        integrate_tangent(f, {o.radius, 0.0}, 0.0, two_pi,
                          TangentMode::analytic);
    REQUIRE(tr.base.status == TrajectoryStatus::completed);
    CHECK(std::abs(m_orbit.m00 - tr.fundamental.m00) <
          1e-7 * (1.0 + std::abs(m_orbit.m00)));
    CHECK(std::abs(m_orbit.m01 - tr.fundamental.m01) <
          1e-7 * (1.0 + std::abs(m_orbit.m01)));
    CHECK(std::abs(m_orbit.m10 - tr.fundamental.m10) <
          1e-7 * (1.0 + std::abs(m_orbit.m10)));
    CHECK(std::abs(m_orbit.m11 - tr.fundamental.m11) <
          1e-7 * (1.0 + std::abs(m_orbit.m11)));
  }
}

TEST_CASE("monodromy spectra match the characteristic exponents") {
  for (double a : {0.1, 0.4}) {
    auto [ell, hyp] = periodic_orbits(a);
    {
      Mat2 m = monodromy(hyp);
      double big = std::exp(two_pi * hyp.exponent);
      auto [l1, l2] = eigenvalues(m);
      CHECK(std::abs(l1.im) == 0.0);
      CHECK(std::abs(l1.re - big) < 1e-6 * big);
      CHECK(std::abs(l2.re * big - 1.0) < 1e-6);
    }
    {
      Mat2 m = monodromy(ell);
      CHECK(std::abs(trace(m) - 2.0 * std::cos(two_pi * ell.exponent)) <
            1e-6);
      CHECK(std::abs(det(m) - 1.0) < 1e-8);
      auto [l1, l2] = eigenvalues(m);
      CHECK(std::abs(std::hypot(l1.re, l1.im) - 1.0) < 1e-6);
      CHECK(l1.im != 0.0);
      CHECK(std::abs(l1.im + l2.im) < 1e-12);
    }
  }
  CHECK(std::abs(two_pi * periodic_orbits(0.4).first.exponent -
                 4.65257280827287) < 1e-12);
}

TEST_CASE("hyperbolic directions are monodromy eigenvectors") {
  double a = 0.4;
  PeriodicOrbit hyp = periodic_orbits(a).second;
  Mat2 m = monodromy(hyp);
  auto [vu, vs] = hyperbolic_directions(a);
  CHECK(std::abs(norm(vu) - 1.0) < 1e-14);
  CHECK(std::abs(norm(vs) - 1.0) < 1e-14);
  double big = std::exp(two_pi * hyp.exponent);
  Vec2 mu_v = apply(m, vu);
  Vec2 ms_v = apply(m, vs);
  CHECK(dist(mu_v, big * vu) < 1e-5 * big);
  CHECK(dist(ms_v, (1.0 / big) * vs) < 1e-6);
}

TEST_CASE("eigenvalue helper handles real and complex spectra") {
  {
    Mat2 m{2.0, 1.0, 1.0, 2.0};
    auto [l1, l2] = eigenvalues(m);
    CHECK(l1.re == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(l2.re == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(l1.im == 0.0);
  }
  {
    double th = 0.73;
    Mat2 rot{std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
    auto [l1, l2] = eigenvalues(rot);
    CHECK(l1.re == doctest::Approx(std::cos(th)).epsilon(1e-14));
    CHECK(std::abs(l1.im) == doctest::Approx(std::sin(th)).epsilon(1e-14));
    CHECK(l2.im == -l1.im);
  }
}

TEST_CASE("driftless solution matches direct integration") {
  double B = 0.6, C = 0.8, alpha = 1.3, beta = 0.7;
  CanonicalField f(CanonicalCoefficients(0.0, B, C, 1e-9));
  Vec2 ic = autonomous_solution(B, C, alpha, beta, 0.0);
  CHECK(dist(ic, {alpha * std::cos(beta), alpha * std::sin(beta)}) < 1e-12);
  for (double t : {0.9, 3.7, 8.1}) {
    Trajectory tr = integrate(f, ic, 0.0, t);
    REQUIRE(tr.status == TrajectoryStatus::completed);
    Vec2 predicted = autonomous_solution(B, C, alpha, beta, t);
    CHECK(std::abs(norm(predicted) - alpha) < 1e-12);
    CHECK(dist({tr.samples.back().x, tr.samples.back().y}, predicted) <
          1e-9);
  }
  // One full predicted period returns to the start.
  double T = two_pi / autonomous_frequency(B, C, alpha);
  CHECK(dist(autonomous_solution(B, C, alpha, beta, T), ic) < 1e-12);
}

TEST_CASE("first integral and stream function are consistent") {
  double a = 0.4;
  ReducedCircleField f(a);
  Vec2 r{0.9, -0.5};
  double t = 1.3;
  double u = r.x + a * std::cos(t), v = r.y + a * std::sin(t);
  double W = u * u + v * v;
  CHECK(std::abs(first_integral_H2(a, r, t) -
                 W * std::exp(-r.x * r.x - r.y * r.y)) < 1e-15);
  CHECK(std::abs(hamiltonian_H(a, r, t) - (-0.5 * std::log(W))) < 1e-15);
  // Conservation along a short run.
  Trajectory tr = integrate(f, {1.0, 0.2}, 0.0, two_pi);
  REQUIRE(tr.status == TrajectoryStatus::completed);
  double h0 = first_integral_H2(a, {1.0, 0.2}, 0.0);
  for (const PlanarState& s : tr.samples) {
    CHECK(std::abs(first_integral_H2(a, {s.x, s.y}, s.t) - h0) <
          1e-10 * std::abs(h0));
  }
}

TEST_CASE("field jacobian agrees with finite differences") {
  double a = 0.4;
  ReducedCircleField f(a);
  Vec2 r{0.8, -0.35};
  double t = 2.1;
  auto jac = f.jacobian(t, r);
  REQUIRE(jac.has_value());
  const double h = 1e-6;
  Vec2 vxp = f.velocity(t, {r.x + h, r.y});
  Vec2 vxm = f.velocity(t, {r.x - h, r.y});
  Vec2 vyp = f.velocity(t, {r.x, r.y + h});
  Vec2 vym = f.velocity(t, {r.x, r.y - h});
  CHECK(std::abs(jac->m00 - (vxp.x - vxm.x) / (2 * h)) < 1e-6);
  CHECK(std::abs(jac->m01 - (vyp.x - vym.x) / (2 * h)) < 1e-6);
  CHECK(std::abs(jac->m10 - (vxp.y - vxm.y) / (2 * h)) < 1e-6);
  CHECK(std::abs(jac->m11 - (vyp.y - vym.y) / (2 * h)) < 1e-6);
  // The flow is divergence-free.
  CHECK(std::abs(jac->m00 + jac->m11) < 1e-13);
}

TEST_CASE("node expansion values match frozen references") {
  CHECK(std::abs(h_vortex(0.0, 0.01) - 2.297585092994046) < 1e-14);
  CHECK_THROWS_AS(h_vortex(0.4, 0.0), DomainError);
  CHECK_THROWS_AS(dh_vortex(0.4, -1e-3), DomainError);
  // dh/dI is the exact derivative of h.
  double a = 0.3, I = 2e-3, h = 1e-8;
  double num = (h_vortex(a, I + h) - h_vortex(a, I - h)) / (2 * h);
  CHECK(std::abs(num - dh_vortex(a, I)) < 1e-4 * std::abs(dh_vortex(a, I)));
}

TEST_CASE("elliptic expansion reproduces its closed forms") {
  EllipticExpansion ex = elliptic_expansion(0.4);
  CHECK(std::abs(ex.q - 0.8198039027185571) < 1e-14);
  CHECK(std::abs(ex.pi1 - 1.3504754393111866) < 1e-13);
  CHECK(std::abs(ex.avg_alpha1 - ex.pi1) < 1e-11);
  CHECK(std::abs(ex.avg_alpha32) < 1e-11);
  CHECK(std::abs(ex.avg_alpha2 - 1.2871342327416226) < 1e-10);
  CHECK_THROWS_AS(elliptic_expansion(0.0), DegenerateError);

  CHECK(std::abs(elliptic_J(0.4, 0.0) - 1.0) < 1e-15);
  CHECK(elliptic_J(0.4, 1e-3) < 1.0);
  CHECK(std::abs(h_elliptic(0.4, 0.0) - -0.39738022069848283) < 1e-14);
  // Slope at J = 0 is (1 - pi1) / 2.
  double h = 1e-7;
  double num = (h_elliptic(0.4, h) - h_elliptic(0.4, -h)) / (2 * h);
  CHECK(std::abs(num - (1.0 - ex.pi1) / 2.0) < 1e-6);
}

TEST_CASE("rotation number recovers synthetic dynamics") {
  // Uniform rotation by a fixed increment.
  double rho = 0.7;
  std::vector<Vec2> pts;
  for (int n = 1; n <= 400; ++n)
    pts.push_back({std::cos(rho * n), std::sin(rho * n)});
  RotationEstimate est = rotation_number(pts, {0.0, 0.0});
  CHECK(std::abs(est.value - rho) < 1e-10);
  CHECK(est.error < 1e-10);

  // Slightly wobbly circle: still recovered to high accuracy.
  std::vector<Vec2> wob;
  for (int n = 1; n <= 400; ++n) {
    double th = rho * n + 0.02 * std::sin(3.0 * rho * n);
    wob.push_back({1.1 * std::cos(th), 1.1 * std::sin(th)});
  }
  RotationEstimate est2 = rotation_number(wob, {0.0, 0.0});
  CHECK(std::abs(est2.value - rho) < 1e-6);

  CHECK_THROWS_AS(rotation_number(std::vector<Vec2>(400, Vec2{0.5, 0.0}),
                                  Vec2{0.5, 0.0}),
                  NonRotatingError);
  CHECK_THROWS_AS(rotation_number(std::vector<Vec2>(5, Vec2{1.0, 0.0}),
                                  Vec2{0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("winding rate on the elliptic orbit is the driving rate") {
  // On the elliptic circular orbit the vector to the node rotates rigidly
  // with the drive, so the comoving winding rate is exactly 1.
  double a = 0.4;
  ReducedCircleField f(a);
  double q = periodic_orbits(a).first.radius;
  double rate = comoving_winding_rate(f, {q, 0.0}, 10.0 * two_pi);
  CHECK(std::abs(rate - 1.0) < 1e-8);
}

TEST_CASE("reversibility residual is small for the symmetric field") {
  ReducedCircleField f(0.4);
  CHECK(reversibility_residual(f, {1.0, 0.3}, 4.0 * pi) < 1e-9);
}

TEST_CASE("lyapunov exponent on the hyperbolic orbit approaches sigma") {
  double a = 0.4;
  ReducedCircleField f(a);
  PeriodicOrbit hyp = periodic_orbits(a).second;
  Vec2 seed = hyperbolic_directions(a).first;
  double lam = lyapunov_exponent(f, {hyp.radius, 0.0}, 4.0 * pi, two_pi,
                                 TangentMode::analytic, {}, seed);
  CHECK(std::abs(lam - hyp.exponent) < 2e-2);
}

TEST_CASE("newton refinement finds the section fixed point") {
  double a = 0.4;
  ReducedCircleField f(a);
  double q = periodic_orbits(a).first.radius;
  Vec2 fp = find_section_fixed_point(f, {0.78, 0.05});
  CHECK(dist(fp, {q, 0.0}) < 1e-8);
}
