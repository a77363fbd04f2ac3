#pragma once

#include <map>
#include <string>

#include "bohm/wavefield.hpp"

namespace bohm {

// Change of frame taking a general coefficient set to its reduced form:
// a rotation of the plane by mu and a shift of time by lambda.  When the
// reduced C coefficient comes out negative its sign is absorbed into a
// reversal of time, recorded in time_reversed.
struct CanonicalTransform {
  CanonicalCoefficients canonical;
  double mu = 0.0;      // plane rotation angle, in [-pi, pi)
  double lambda = 0.0;  // time shift, in [-pi, pi)
  bool time_reversed = false;
  // Rotating-frame mode magnitudes and phases (diagnostic).
  double mag_a = 0.0, mag_b = 0.0, mag_c = 0.0;
  double phase_a = 0.0, phase_b = 0.0, phase_c = 0.0;
};

// Reduce a general coefficient set.  The reduced triple satisfies
// A >= 0, B > |C| > 0 or B = C (circular node locus), and reducing an
// already reduced set with B >= C is the identity (mu = lambda = 0).
CanonicalTransform canonicalize(const GeneralCoefficients& g);

// Map a state of the original frame to the reduced frame:
// position rotated by -mu, time tau = t - lambda, or tau = lambda - t when
// the transform reverses time.
PlanarState to_canonical(const CanonicalTransform& tr, const PlanarState& s);

// Inverse of to_canonical.
PlanarState from_canonical(const CanonicalTransform& tr, const PlanarState& s);

// Named coefficient sets used throughout the tests and the CLI.
const std::map<std::string, GeneralCoefficients>& presets();

}  // namespace bohm
