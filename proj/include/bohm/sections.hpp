#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bohm/analysis.hpp"
#include "bohm/integrator.hpp"
#include "bohm/wavefield.hpp"

namespace bohm {

enum class OrbitLabel {
  regular,
  island_chain,
  chaotic,
  periodic,
  unresolved,
  aborted
};

const char* to_string(OrbitLabel label);

struct ClassifyThresholds {
  double lyap_regular = 1e-3;   // below: regular candidate
  double lyap_chaotic = 1e-2;   // above: chaotic
  double rotation_tail = 1e-4;  // rotation estimate convergence gate
  double periodic_diameter = 1e-6;
};

struct SectionRequest {
  std::vector<Vec2> ics;
  std::size_t n_sections = 10000;
  double t0 = 0.0;
  bool backward = false;
  bool classify = true;
  unsigned threads = 0;  // 0: BOHM_VORTEX_THREADS env var, else hardware
  IntegratorConfig config{};
  ClassifyThresholds thresholds{};
  std::optional<Vec2> fixed_point_guess;
};

struct OrbitRecord {
  std::size_t ic_index = 0;
  Vec2 ic;
  std::vector<Vec2> points;
  TrajectoryStatus status = TrajectoryStatus::completed;
  OrbitLabel label = OrbitLabel::unresolved;
  double lyapunov = 0.0;       // fitted exponential growth rate
  double rotation = 0.0;       // mean advance per section, [0, 2 pi)
  double rotation_error = 0.0;
  bool retried = false;        // classification extended the orbit once
};

struct SectionDataset {
  std::vector<OrbitRecord> orbits;
  Vec2 fixed_point;        // period-map fixed point used for classification
  bool fixed_point_found = false;
  std::size_t n_sections = 0;
  unsigned threads_used = 1;
};

// Integrate every IC through n_sections periods of the section map, with the
// tangent flow alongside, and classify each orbit.  Deterministic: results
// are keyed by input order regardless of the thread count.  Per-IC failures
// are recorded as aborted orbits, never propagated.
SectionDataset run_sections(const Field& field, const SectionRequest& req);

// Classification of one orbit record (exposed for testing).  The growth
// exponent must be the fitted rate produced by run_sections.
OrbitLabel classify_orbit(const OrbitRecord& rec, Vec2 fixed_point,
                          const ClassifyThresholds& th);

// IC layout helpers.
std::vector<Vec2> rect_grid(Vec2 lo, Vec2 hi, std::size_t nx, std::size_t ny);
std::vector<Vec2> radial_fan(Vec2 center, double r0, double r1,
                             std::size_t n_rays, std::size_t n_per_ray);
// Drop ICs closer than min_dist to the node ellipse (locus sampled densely).
std::vector<Vec2> exclude_near_ellipse(std::vector<Vec2> ics, VortexEllipse e,
                                       double min_dist = 1e-3);

unsigned resolve_threads(unsigned requested);

}  // namespace bohm
