#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "bohm/errors.hpp"
#include "bohm/wavefield.hpp"

using namespace bohm;

namespace {

// A valid general coefficient set used in several tests: the free imaginary
// parts complete the normalization exactly.
GeneralCoefficients sample_general() {
  double A = 0.37, D = -0.02, B = 0.44, C = 0.44;
  double E = std::sqrt((1.0 - A * A - D * D - B * B - C * C) / 2.0);
  return GeneralCoefficients(A, D, B, E, C, -E);
}

GeneralCoefficients random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    double v[6];
    double n = 0.0;
    for (double& c : v) {
      c = gauss(rng);
      n += c * c;
    }
    n = std::sqrt(n);
    if (!(n > 0.0)) continue;
    try {
      return GeneralCoefficients(v[0] / n, v[1] / n, v[2] / n, v[3] / n,
                                 v[4] / n, v[5] / n);
    } catch (const DegenerateVortexError&) {
      continue;
    }
  }
}

}  // namespace

TEST_CASE("constructor enforces normalization") {
  CHECK_THROWS_AS(GeneralCoefficients(0.5, 0.5, 0.5, 0.5, 0.5, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(GeneralCoefficients(1.0, 0.0, 0.1, 0.0, 0.1, 0.0),
                  std::invalid_argument);
  // A slightly off-normalized set passes with a looser tolerance knob.
  CHECK_THROWS_AS(GeneralCoefficients(0.37 + 1e-8, -0.02, 0.44,
                                      0.48759614436539594, 0.44,
                                      -0.48759614436539594),
                  std::invalid_argument);
  CHECK_NOTHROW(GeneralCoefficients(0.37 + 1e-8, -0.02, 0.44,
                                    0.48759614436539594, 0.44,
                                    -0.48759614436539594, 1e-6));
}

TEST_CASE("constructor rejects a degenerate node") {
  // BC - EF = 0 here while the normalization holds.
  CHECK_THROWS_AS(GeneralCoefficients(0.6, 0.0, 0.4, 0.4, 0.4, 0.4),
                  DegenerateVortexError);
}

TEST_CASE("renormalized rescales and preserves ratios") {
  GeneralCoefficients g = renormalized(0.37, -0.02, 0.44, 0.48, 0.44, -0.48);
  double n = g.A * g.A + g.D * g.D + g.B * g.B + g.E * g.E + g.C * g.C +
             g.F * g.F;
  CHECK(std::abs(n - 1.0) < 1e-14);
  CHECK(g.A / g.B == doctest::Approx(0.37 / 0.44).epsilon(1e-14));
}

TEST_CASE("canonical coefficient constraints") {
  CHECK_NOTHROW(CanonicalCoefficients(0.0, std::sqrt(0.5), std::sqrt(0.5)));
  CHECK_THROWS_AS(CanonicalCoefficients(-0.1, 0.7, 0.7, 1e-6),
                  std::invalid_argument);
  CHECK_THROWS_AS(CanonicalCoefficients(0.37, -0.65, 0.65, 1e-6),
                  std::invalid_argument);
  CHECK_THROWS_AS(CanonicalCoefficients(0.6, 0.8, 0.0, 1e-6),
                  std::invalid_argument);
  CHECK_THROWS_AS(CanonicalCoefficients(0.5, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("velocity equals the gradient of the wave phase") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> pos(-1.5, 1.5);
  std::uniform_real_distribution<double> time(0.0, 4.0 * pi);
  const double h = 1e-6;
  int checked = 0;
  while (checked < 250) {
    GeneralCoefficients g = random_unit(rng);
    double x = pos(rng), y = pos(rng), t = time(rng);
    Cx psi = evaluate_psi(g, x, y, t);
    if (abs(psi) < 0.05) continue;  // need a well-conditioned phase
    Cx dx = (1.0 / (2.0 * h)) *
            (evaluate_psi(g, x + h, y, t) - evaluate_psi(g, x - h, y, t));
    Cx dy = (1.0 / (2.0 * h)) *
            (evaluate_psi(g, x, y + h, t) - evaluate_psi(g, x, y - h, t));
    double den = psi.re * psi.re + psi.im * psi.im;
    // grad(arg psi) = Im(grad psi / psi)
    Vec2 expected{(dx * conj(psi)).im / den, (dy * conj(psi)).im / den};
    Vec2 got = velocity(g, x, y, t);
    CHECK(std::abs(got.x - expected.x) < 1e-6 * (1.0 + std::abs(expected.x)));
    CHECK(std::abs(got.y - expected.y) < 1e-6 * (1.0 + std::abs(expected.y)));
    ++checked;
  }
}

TEST_CASE("general formulas reduce to the canonical ones") {
  CanonicalCoefficients k(0.370540146272978, 0.656772411113622, 0.656772411113622);
  GeneralCoefficients g = k.general();
  for (double t : {0.0, 0.7, 2.9, 5.5}) {
    for (double x : {-1.2, -0.3, 0.8}) {
      for (double y : {-0.9, 0.4, 1.3}) {
        Cx pg = evaluate_psi(g, x, y, t);
        Cx pk = evaluate_psi(k, x, y, t);
        CHECK(abs(pg - pk) < 1e-14);
        if (abs(pk) < 0.05) continue;
        Vec2 vg = velocity(g, x, y, t);
        Vec2 vk = velocity(k, x, y, t);
        CHECK(std::abs(vg.x - vk.x) < 1e-10 * (1.0 + std::abs(vk.x)));
        CHECK(std::abs(vg.y - vk.y) < 1e-10 * (1.0 + std::abs(vk.y)));
      }
    }
  }
}

TEST_CASE("the wave vanishes exactly at the node position") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> time(0.0, 10.0 * two_pi);
  for (int s = 0; s < 200; ++s) {
    GeneralCoefficients g = random_unit(rng);
    for (int k = 0; k < 20; ++k) {
      double t = time(rng);
      Vec2 z = vortex_position(g, t);
      CHECK(abs(evaluate_psi(g, z.x, z.y, t)) < 1e-12);
    }
  }
}

TEST_CASE("canonical node locus is the ellipse (-a cos t, -b sin t)") {
  CanonicalCoefficients k = coefficients_from_semi_axes(0.4, 0.48);
  VortexEllipse e = semi_axes(k);
  CHECK(e.a == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(e.b == doctest::Approx(0.48).epsilon(1e-12));
  for (double t : {0.0, 0.3, 1.7, 3.1, 5.9}) {
    Vec2 z = vortex_position(k, t);
    CHECK(std::abs(z.x - (-e.a * std::cos(t))) < 1e-12);
    CHECK(std::abs(z.y - (-e.b * std::sin(t))) < 1e-12);
  }
  // The general-formula node of the embedded set agrees.
  GeneralCoefficients g = k.general();
  for (double t : {0.2, 2.5, 4.4}) {
    Vec2 zg = vortex_position(g, t);
    Vec2 zk = vortex_position(k, t);
    CHECK(dist(zg, zk) < 1e-12);
  }
}

TEST_CASE("semi-axes roundtrip and inverse normalization") {
  for (double a : {0.2, 0.4, 1.0}) {
    for (double b : {0.25, 0.48, 0.9}) {
      CanonicalCoefficients k = coefficients_from_semi_axes(a, b);
      double norm = k.A * k.A + k.B * k.B + k.C * k.C;
      CHECK(std::abs(norm - 1.0) < 1e-12);
      VortexEllipse e = semi_axes(k);
      CHECK(e.a == doctest::Approx(a).epsilon(1e-12));
      CHECK(e.b == doctest::Approx(b).epsilon(1e-12));
      // Closed form of the ground amplitude.
      double expect_A =
          1.0 / std::sqrt(1.0 + 1.0 / (2.0 * a * a) + 1.0 / (2.0 * b * b));
      CHECK(k.A == doctest::Approx(expect_A).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(coefficients_from_semi_axes(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(coefficients_from_semi_axes(0.5, -0.1),
                  std::invalid_argument);
}

TEST_CASE("velocity is singular at the node") {
  GeneralCoefficients g = sample_general();
  Vec2 z = vortex_position(g, 1.3);
  CHECK_THROWS_AS(velocity(g, z.x, z.y, 1.3), SingularityError);
}

TEST_CASE("field wrappers expose the same dynamics") {
  GeneralCoefficients g = sample_general();
  GeneralField fg(g);
  Vec2 v1 = fg.velocity(0.9, {0.7, -0.5});
  Vec2 v2 = velocity(g, 0.7, -0.5, 0.9);
  CHECK(v1.x == v2.x);
  CHECK(v1.y == v2.y);
  CHECK(fg.vortex(0.9).has_value());
  CHECK(dist(*fg.vortex(0.9), vortex_position(g, 0.9)) == 0.0);
  CHECK(!fg.jacobian(0.9, {0.7, -0.5}).has_value());

  CanonicalCoefficients k = coefficients_from_semi_axes(0.4, 0.4);
  CanonicalField fk(k);
  Vec2 w1 = fk.velocity(0.2, {1.0, 0.3});
  Vec2 w2 = velocity(k, 1.0, 0.3, 0.2);
  CHECK(w1.x == w2.x);
  CHECK(w1.y == w2.y);
}
