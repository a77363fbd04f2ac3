#include "bohm/wavefield.hpp"

#include <stdexcept>
#include <string>

#include "bohm/errors.hpp"

namespace bohm {

namespace {

const double sqrt_pi = std::sqrt(pi);
const double sqrt_2pi = std::sqrt(2.0 * pi);
const double sqrt_2 = std::sqrt(2.0);

void check_normalization(double n2, double tolerance, const char* what) {
  if (!(std::abs(n2 - 1.0) <= tolerance))
    throw std::invalid_argument(std::string(what) +
                                ": coefficients are not normalized (|sum of "
                                "squares - 1| = " +
                                std::to_string(std::abs(n2 - 1.0)) + ")");
}

}  // namespace

GeneralCoefficients::GeneralCoefficients(double A_, double D_, double B_,
                                         double E_, double C_, double F_,
                                         double tolerance)
    : A(A_), D(D_), B(B_), E(E_), C(C_), F(F_) {
  double n2 = A * A + D * D + B * B + E * E + C * C + F * F;
  check_normalization(n2, tolerance, "GeneralCoefficients");
  if (!(std::abs(B * C - E * F) > 1e-12))
    throw DegenerateVortexError(
        "GeneralCoefficients: BC - EF vanishes, node structure degenerates");
}

GeneralCoefficients renormalized(double A, double D, double B, double E,
                                 double C, double F) {
  double n = std::sqrt(A * A + D * D + B * B + E * E + C * C + F * F);
  if (!(n > 0.0))
    throw std::invalid_argument("renormalized: zero coefficient vector");
  return GeneralCoefficients(A / n, D / n, B / n, E / n, C / n, F / n);
}

CanonicalCoefficients::CanonicalCoefficients(double A_, double B_, double C_,
                                             double tolerance)
    : A(A_), B(B_), C(C_) {
  double n2 = A * A + B * B + C * C;
  check_normalization(n2, tolerance, "CanonicalCoefficients");
  if (!(B > 0.0) || !(C > 0.0))
    throw std::invalid_argument("CanonicalCoefficients: B and C must be > 0");
  if (A < 0.0)
    throw std::invalid_argument("CanonicalCoefficients: A must be >= 0");
}

GeneralCoefficients CanonicalCoefficients::general(double tolerance) const {
  return GeneralCoefficients(A, 0.0, B, 0.0, C, 0.0, tolerance);
}

Cx evaluate_psi(const GeneralCoefficients& g, double x, double y, double t) {
  Cx ground = (1.0 / sqrt_pi) * Cx{g.A, g.D} * cis(-t);
  Cx xm = (2.0 * x / sqrt_2pi) * Cx{g.B, g.E} * cis(-2.0 * t);
  Cx ym = (2.0 * y / sqrt_2pi) * Cx{g.F, g.C} * cis(-2.0 * t);
  double env = std::exp(-0.5 * (x * x + y * y));
  return env * (ground + xm + ym);
}

Cx evaluate_psi(const CanonicalCoefficients& k, double x, double y, double t) {
  return evaluate_psi(k.general(), x, y, t);
}

Vec2 velocity(const GeneralCoefficients& g, double x, double y, double t) {
  double A = g.A, D = g.D, B = g.B, E = g.E, C = g.C, F = g.F;
  double ct = std::cos(t), st = std::sin(t);
  double V = 2.0 * (B * B + E * E) * x * x + 2.0 * (C * C + F * F) * y * y +
             4.0 * (B * F + E * C) * x * y + D * D + A * A +
             2.0 * sqrt_2 * ((A * B + D * E) * ct + (A * E - D * B) * st) * x +
             2.0 * sqrt_2 * ((D * C + A * F) * ct + (A * C - D * F) * st) * y;
  if (!(V > 1e-12))
    throw SingularityError("velocity: evaluation at a node (denominator " +
                           std::to_string(V) + ")");
  double vx = (-2.0 * (B * C - E * F) * y - sqrt_2 * (B * D - A * E) * ct -
               sqrt_2 * (A * B + D * E) * st) /
              V;
  double vy = (2.0 * (B * C - E * F) * x + sqrt_2 * (A * C - D * F) * ct -
               sqrt_2 * (D * C + A * F) * st) /
              V;
  return {vx, vy};
}

Vec2 velocity(const CanonicalCoefficients& k, double x, double y, double t) {
  double A = k.A, B = k.B, C = k.C;
  double ct = std::cos(t), st = std::sin(t);
  double V = 2.0 * B * B * x * x + 2.0 * C * C * y * y +
             2.0 * sqrt_2 * A * B * x * ct + 2.0 * sqrt_2 * A * C * y * st +
             A * A;
  if (!(V > 1e-12))
    throw SingularityError("velocity: evaluation at a node (denominator " +
                           std::to_string(V) + ")");
  return {(-2.0 * B * C * y - sqrt_2 * A * B * st) / V,
          (2.0 * B * C * x + sqrt_2 * A * C * ct) / V};
}

Vec2 vortex_position(const GeneralCoefficients& g, double t) {
  // Zero of the bracket: solved from the mode decomposition in the rotating
  // frame.  Writing Ah, Bh, Ch for the three complex mode amplitudes and
  // a, b, c for their phases, the node sits at
  //   z = (-|Ah||Bh| e^{i(t - b + a)} + |Ah||Ch| e^{-i(t - c + a)}) /
  //       (|Bh|^2 - |Ch|^2).
  double inv_s2pi = 1.0 / sqrt_2pi;
  Cx Ah{g.A / sqrt_pi, g.D / sqrt_pi};
  Cx Bh{(g.B + g.C) * inv_s2pi, (g.E - g.F) * inv_s2pi};
  Cx Ch{(g.B - g.C) * inv_s2pi, (g.E + g.F) * inv_s2pi};
  double mA = abs(Ah), mB = abs(Bh), mC = abs(Ch);
  double denom = mB * mB - mC * mC;  // equals 2 (BC - EF) / pi
  if (!(std::abs(denom) > 2.0 * 1e-12 / pi))
    throw DegenerateVortexError("vortex_position: node structure degenerates");
  double a = mA > 0.0 ? arg(Ah) : 0.0;
  double b = mB > 0.0 ? arg(Bh) : 0.0;
  double c = mC > 0.0 ? arg(Ch) : 0.0;
  Cx z = (-mA * mB / denom) * cis(t - b + a) + (mA * mC / denom) * cis(-(t - c + a));
  return {z.re, z.im};
}

Vec2 vortex_position(const CanonicalCoefficients& k, double t) {
  VortexEllipse e = semi_axes(k);
  return {-e.a * std::cos(t), -e.b * std::sin(t)};
}

VortexEllipse semi_axes(const CanonicalCoefficients& k) {
  return {k.A / (sqrt_2 * k.B), k.A / (sqrt_2 * k.C)};
}

CanonicalCoefficients coefficients_from_semi_axes(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument(
        "coefficients_from_semi_axes: semi-axes must be positive");
  double A = 1.0 / std::sqrt(1.0 + 0.5 / (a * a) + 0.5 / (b * b));
  return CanonicalCoefficients(A, A / (sqrt_2 * a), A / (sqrt_2 * b), 1e-9);
}

}  // namespace bohm
