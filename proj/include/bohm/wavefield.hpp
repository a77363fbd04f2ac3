#pragma once

#include <cmath>
#include <optional>

#include "bohm/types.hpp"

namespace bohm {

// Minimal complex value carried as an explicit (re, im) pair.
struct Cx {
  double re = 0.0;
  double im = 0.0;
};

inline Cx operator+(Cx a, Cx b) { return {a.re + b.re, a.im + b.im}; }
inline Cx operator-(Cx a, Cx b) { return {a.re - b.re, a.im - b.im}; }
inline Cx operator*(Cx a, Cx b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cx operator*(double s, Cx a) { return {s * a.re, s * a.im}; }
inline double abs(Cx a) { return std::hypot(a.re, a.im); }
inline double arg(Cx a) { return std::atan2(a.im, a.re); }
inline Cx conj(Cx a) { return {a.re, -a.im}; }
inline Cx cis(double t) { return {std::cos(t), std::sin(t)}; }

// Point of the configuration plane together with the time it refers to.
struct PlanarState {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

// Coefficients of the superposition
//
//   psi(x, y, t) = [ (A + iD) e^{-it} / sqrt(pi)
//                  + 2x (B + iE) e^{-2it} / sqrt(2 pi)
//                  + 2y (F + iC) e^{-2it} / sqrt(2 pi) ] e^{-(x^2+y^2)/2}
//
// normalized so that A^2 + B^2 + C^2 + D^2 + E^2 + F^2 = 1.  The combination
// BC - EF controls the single moving node of the wave; it must not vanish.
struct GeneralCoefficients {
  double A = 0.0, D = 0.0;  // ground mode, real and imaginary part
  double B = 0.0, E = 0.0;  // x mode, real and imaginary part
  double C = 0.0, F = 0.0;  // y mode, imaginary and real part
  GeneralCoefficients(double A_, double D_, double B_, double E_, double C_,
                      double F_, double tolerance = 1e-12);
};

// Normalizes a raw six-tuple (same component order as GeneralCoefficients).
GeneralCoefficients renormalized(double A, double D, double B, double E,
                                 double C, double F);

// Reduced coefficient set (D = E = F = 0) with B > 0, C > 0, A >= 0.
struct CanonicalCoefficients {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  CanonicalCoefficients(double A_, double B_, double C_,
                        double tolerance = 1e-12);
  GeneralCoefficients general(double tolerance = 1e-9) const;
};

// Semi-axes of the elliptical node locus: x semi-axis a, y semi-axis b.
struct VortexEllipse {
  double a = 0.0;
  double b = 0.0;
};

Cx evaluate_psi(const GeneralCoefficients& g, double x, double y, double t);
Cx evaluate_psi(const CanonicalCoefficients& k, double x, double y, double t);

// Velocity of the guidance flow; throws SingularityError when the evaluation
// point is too close to the node (denominator <= 1e-12).
Vec2 velocity(const GeneralCoefficients& g, double x, double y, double t);
Vec2 velocity(const CanonicalCoefficients& k, double x, double y, double t);

// Instantaneous node position.
Vec2 vortex_position(const GeneralCoefficients& g, double t);
Vec2 vortex_position(const CanonicalCoefficients& k, double t);

// Node locus of the reduced field: ellipse (-a cos t, -b sin t) with
// a = A / (sqrt(2) B), b = A / (sqrt(2) C).
VortexEllipse semi_axes(const CanonicalCoefficients& k);

// Inverse of semi_axes: reduced coefficients with the given node ellipse.
CanonicalCoefficients coefficients_from_semi_axes(double a, double b);

// Abstract time-dependent planar velocity field used by the integrator.
class Field {
 public:
  virtual ~Field() = default;
  virtual Vec2 velocity(double t, Vec2 r) const = 0;
  // Node position when the field has one.
  virtual std::optional<Vec2> vortex(double /*t*/) const {
    return std::nullopt;
  }
  // Closed-form Jacobian of the velocity, when available.
  virtual std::optional<Mat2> jacobian(double t, Vec2 r) const {
    (void)t;
    (void)r;
    return std::nullopt;
  }
};

class GeneralField : public Field {
 public:
  explicit GeneralField(const GeneralCoefficients& g) : g_(g) {}
  Vec2 velocity(double t, Vec2 r) const override {
    return bohm::velocity(g_, r.x, r.y, t);
  }
  std::optional<Vec2> vortex(double t) const override {
    return vortex_position(g_, t);
  }
  const GeneralCoefficients& coefficients() const { return g_; }

 private:
  GeneralCoefficients g_;
};

class CanonicalField : public Field {
 public:
  explicit CanonicalField(const CanonicalCoefficients& k) : k_(k) {}
  Vec2 velocity(double t, Vec2 r) const override {
    return bohm::velocity(k_, r.x, r.y, t);
  }
  std::optional<Vec2> vortex(double t) const override {
    return vortex_position(k_, t);
  }
  const CanonicalCoefficients& coefficients() const { return k_; }

 private:
  CanonicalCoefficients k_;
};

}  // namespace bohm
