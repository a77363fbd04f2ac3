#include "bohm/canonical.hpp"

#include <cmath>

#include "bohm/errors.hpp"

namespace bohm {

namespace {

const double sqrt_pi = std::sqrt(pi);
const double sqrt_2pi = std::sqrt(2.0 * pi);
const double sqrt_pi_half = std::sqrt(pi / 2.0);

double safe_arg(Cx z) { return abs(z) > 0.0 ? arg(z) : 0.0; }

}  // namespace

CanonicalTransform canonicalize(const GeneralCoefficients& g) {
  // Rotating-frame mode amplitudes.
  Cx Ah{g.A / sqrt_pi, g.D / sqrt_pi};
  Cx Bh{(g.B + g.C) / sqrt_2pi, (g.E - g.F) / sqrt_2pi};
  Cx Ch{(g.B - g.C) / sqrt_2pi, (g.E + g.F) / sqrt_2pi};

  double mA = abs(Ah), mB = abs(Bh), mC = abs(Ch);
  double a = safe_arg(Ah), b = safe_arg(Bh), c = safe_arg(Ch);

  // The plane rotation aligns the two excited-mode phases; the time shift
  // removes the remaining relative phase against the ground mode.
  double mu = wrap_pi(0.5 * (c - b));
  double lambda = wrap_pi(0.5 * (c + b) - a);

  double Ac = sqrt_pi * mA;
  double Bc = sqrt_pi_half * (mB + mC);
  double Cc = sqrt_pi_half * (mB - mC);

  // The reduction is an isometry of the six coefficients, so the triple is
  // exactly as normalized as the input; accept whatever defect it arrived
  // with instead of re-validating more strictly than the caller did.
  double defect = std::abs(g.A * g.A + g.D * g.D + g.B * g.B + g.E * g.E +
                           g.C * g.C + g.F * g.F - 1.0);
  CanonicalTransform tr{
      CanonicalCoefficients(Ac, Bc, std::abs(Cc),
                            std::max(1e-9, 2.0 * defect + 1e-12)),
      mu,
      lambda,
      Cc < 0.0,
      mA,
      mB,
      mC,
      a,
      b,
      c,
  };
  return tr;
}

PlanarState to_canonical(const CanonicalTransform& tr, const PlanarState& s) {
  double cm = std::cos(tr.mu), sm = std::sin(tr.mu);
  // Rotation by -mu.
  double x = cm * s.x + sm * s.y;
  double y = -sm * s.x + cm * s.y;
  double tau = tr.time_reversed ? tr.lambda - s.t : s.t - tr.lambda;
  return {x, y, tau};
}

PlanarState from_canonical(const CanonicalTransform& tr, const PlanarState& s) {
  double cm = std::cos(tr.mu), sm = std::sin(tr.mu);
  double x = cm * s.x - sm * s.y;
  double y = sm * s.x + cm * s.y;
  double t = tr.time_reversed ? tr.lambda - s.t : s.t + tr.lambda;
  return {x, y, t};
}

const std::map<std::string, GeneralCoefficients>& presets() {
  static const std::map<std::string, GeneralCoefficients> table = [] {
    std::map<std::string, GeneralCoefficients> m;
    {
      // Mild perturbation of a circular configuration.
      double A = 0.37, D = -0.02, B = 0.44, C = 0.44;
      double E = std::sqrt((1.0 - A * A - D * D - B * B - C * C) / 2.0);
      double F = -E;
      m.emplace("fig2-left", GeneralCoefficients(A, D, B, E, C, F));
    }
    {
      double A = 0.4, D = -0.018, B = 0.37, E = 0.49, C = 0.49;
      double F = -std::sqrt(1.0 - A * A - D * D - B * B - E * E - C * C);
      m.emplace("fig2-right", GeneralCoefficients(A, D, B, E, C, F));
    }
    // Reduced one-parameter family: node ellipse x semi-axis fixed at 0.4,
    // y semi-axis swept from circular to strongly eccentric.
    const std::pair<const char*, double> sweep[] = {
        {"fig3-a", 0.40}, {"fig3-b", 0.44}, {"fig3-c", 0.48}, {"fig3-d", 0.68}};
    for (auto [name, bax] : sweep) {
      CanonicalCoefficients k = coefficients_from_semi_axes(0.4, bax);
      m.emplace(name, GeneralCoefficients(k.A, 0.0, k.B, 0.0, k.C, 0.0, 1e-9));
    }
    return m;
  }();
  return table;
}

}  // namespace bohm
