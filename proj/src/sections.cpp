#include "bohm/sections.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "bohm/errors.hpp"

namespace bohm {

const char* to_string(OrbitLabel label) {
  switch (label) {
    case OrbitLabel::regular: return "regular";
    case OrbitLabel::island_chain: return "island-chain";
    case OrbitLabel::chaotic: return "chaotic";
    case OrbitLabel::periodic: return "periodic";
    case OrbitLabel::unresolved: return "unresolved";
    case OrbitLabel::aborted: return "aborted";
  }
  return "unknown";
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BOHM_VORTEX_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1024)
      return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

namespace {

// Least-squares growth rate: fit the cumulative tangent log growth L(t) with
// c0 + c1 ln t + c2 t and return c2.  The logarithmic term absorbs the
// polynomial shear of regular orbits, so c2 separates exponential growth
// from the integrable background even over moderate spans.
double fitted_growth_rate(const std::vector<double>& ts,
                          const std::vector<double>& ls) {
  std::size_t n = ts.size();
  if (n == 0) return 0.0;
  if (n < 4) return ls.back() / std::abs(ts.back());
  double m1 = 0.0, m2 = 0.0, my = 0.0;
  std::vector<double> x1(n), x2(n);
  for (std::size_t i = 0; i < n; ++i) {
    x1[i] = std::log(std::abs(ts[i]));
    x2[i] = std::abs(ts[i]);
    m1 += x1[i];
    m2 += x2[i];
    my += ls[i];
  }
  m1 /= static_cast<double>(n);
  m2 /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double s11 = 0.0, s12 = 0.0, s22 = 0.0, sy1 = 0.0, sy2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d1 = x1[i] - m1, d2 = x2[i] - m2, dy = ls[i] - my;
    s11 += d1 * d1;
    s12 += d1 * d2;
    s22 += d2 * d2;
    sy1 += d1 * dy;
    sy2 += d2 * dy;
  }
  double dd = s11 * s22 - s12 * s12;
  if (!(std::abs(dd) > 1e-12 * s11 * s22))
    return ls.back() / std::abs(ts.back());
  return (s11 * sy2 - s12 * sy1) / dd;
}

Vec2 centroid(const std::vector<Vec2>& pts) {
  Vec2 c;
  for (Vec2 p : pts) c = c + p;
  return (1.0 / static_cast<double>(pts.size())) * c;
}

// Best rational approximation p/q of w in [0, 1) with q <= q_max.
bool near_rational(double w, std::size_t q_max, std::size_t& q_out) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_q = 0;
  for (std::size_t q = 1; q <= q_max; ++q) {
    double p = std::round(w * static_cast<double>(q));
    double err = std::abs(w - p / static_cast<double>(q));
    if (err < best) {
      best = err;
      best_q = q;
    }
  }
  q_out = best_q;
  return best < 2e-3;
}

// Island chains revisit q separated blobs; tori fill connected arcs.  The
// mod-q strands of an island chain are tight clusters away from the main
// fixed point, while the strands of a torus have spreads comparable to
// their distance from it.
bool island_chain_like(const std::vector<Vec2>& pts, double rotation,
                       Vec2 fixed_point) {
  std::size_t q = 0;
  if (!near_rational(rotation / two_pi, 16, q) || q < 2) return false;
  if (pts.size() < 4 * q) return false;
  double r_min = std::numeric_limits<double>::infinity();
  double s_max = 0.0;
  std::vector<Vec2> centroids(q);
  for (std::size_t k = 0; k < q; ++k) {
    Vec2 c;
    std::size_t count = 0;
    for (std::size_t i = k; i < pts.size(); i += q) {
      c = c + pts[i];
      ++count;
    }
    c = (1.0 / static_cast<double>(count)) * c;
    double spread2 = 0.0;
    for (std::size_t i = k; i < pts.size(); i += q)
      spread2 += norm2(pts[i] - c);
    spread2 /= static_cast<double>(count);
    centroids[k] = c;
    r_min = std::min(r_min, dist(c, fixed_point));
    s_max = std::max(s_max, std::sqrt(spread2));
  }
  // Genuine islands are narrow compared with the gap to the neighboring
  // island; an orbit smeared along a near-rational invariant circle tiles
  // the circle with strands as wide as the gaps between them.
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t j = k + 1; j < q; ++j)
      gap = std::min(gap, dist(centroids[k], centroids[j]));
  return r_min > 1e-3 && s_max < 0.25 * gap;
}

struct WorkerOutput {
  OrbitRecord rec;
  bool rotation_converged = false;
};

WorkerOutput run_one(const Field& field, std::size_t index, Vec2 ic,
                     const SectionRequest& req) {
  WorkerOutput out;
  OrbitRecord& rec = out.rec;
  rec.ic_index = index;
  rec.ic = ic;

  const double span = req.backward ? -two_pi : two_pi;
  Vec2 r = ic;
  Vec2 w{1.0, 0.0};
  double t = req.t0, h = 0.0, sum_log = 0.0;
  std::vector<double> ts, ls;
  std::size_t target = req.n_sections;

  for (int round = 0; round < 2; ++round) {
    while (rec.points.size() < target) {
      double next_t =
          req.t0 + span * static_cast<double>(rec.points.size() + 1);
      Mat2 m;
      TrajectoryStatus st = advance_tangent(
          field, TangentMode::finite_difference, r, m, t, next_t, req.config,
          h);
      if (st != TrajectoryStatus::completed) {
        rec.status = st;
        break;
      }
      w = apply(m, w);
      double g = norm(w);
      if (!(g > 0.0) || !std::isfinite(g)) {
        rec.status = TrajectoryStatus::step_limit;
        break;
      }
      sum_log += std::log(g);
      w = (1.0 / g) * w;
      rec.points.push_back(r);
      ts.push_back(t - req.t0);
      ls.push_back(sum_log);
    }
    if (rec.status != TrajectoryStatus::completed) break;

    rec.lyapunov = fitted_growth_rate(ts, ls);
    out.rotation_converged = false;
    if (rec.points.size() >= 9) {
      try {
        RotationEstimate re = rotation_number(rec.points, centroid(rec.points));
        rec.rotation = re.value;
        rec.rotation_error = re.error;
        out.rotation_converged = re.error < req.thresholds.rotation_tail;
      } catch (const NonRotatingError&) {
        rec.rotation = 0.0;
        rec.rotation_error = std::numeric_limits<double>::infinity();
      }
    }

    if (!req.classify || round == 1) break;
    // Decide whether another round would help: extend once when the orbit is
    // neither clearly periodic, nor clearly chaotic, nor settled regular.
    double diam = 0.0;
    for (Vec2 p : rec.points) diam = std::max(diam, dist(p, rec.points[0]));
    bool periodic_like = diam < req.thresholds.periodic_diameter;
    bool chaotic_like = rec.lyapunov > req.thresholds.lyap_chaotic;
    bool regular_like =
        rec.lyapunov < req.thresholds.lyap_regular && out.rotation_converged;
    if (periodic_like || chaotic_like || regular_like) break;
    target *= 2;
    rec.retried = true;
  }
  return out;
}

}  // namespace

OrbitLabel classify_orbit(const OrbitRecord& rec, Vec2 fixed_point,
                          const ClassifyThresholds& th) {
  if (rec.status != TrajectoryStatus::completed) return OrbitLabel::aborted;
  if (rec.points.size() < 100) return OrbitLabel::unresolved;
  double diam = 0.0;
  for (Vec2 p : rec.points) diam = std::max(diam, dist(p, rec.points[0]));
  if (diam < th.periodic_diameter) return OrbitLabel::periodic;
  if (rec.lyapunov > th.lyap_chaotic) return OrbitLabel::chaotic;
  if (rec.lyapunov < th.lyap_regular && rec.rotation_error < th.rotation_tail)
    return island_chain_like(rec.points, rec.rotation, fixed_point)
               ? OrbitLabel::island_chain
               : OrbitLabel::regular;
  return OrbitLabel::unresolved;
}

SectionDataset run_sections(const Field& field, const SectionRequest& req) {
  SectionDataset ds;
  ds.n_sections = req.n_sections;
  std::size_t n = req.ics.size();
  std::vector<WorkerOutput> results(n);

  unsigned nthreads = resolve_threads(req.threads);
  if (n > 0 && nthreads > n) nthreads = static_cast<unsigned>(n);
  ds.threads_used = nthreads > 0 ? nthreads : 1;

  std::atomic<std::size_t> cursor{0};
  auto work = [&]() {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= n) return;
      try {
        results[i] = run_one(field, i, req.ics[i], req);
      } catch (...) {
        results[i].rec.ic_index = i;
        results[i].rec.ic = req.ics[i];
        results[i].rec.status = TrajectoryStatus::step_limit;
        results[i].rec.points.clear();
      }
    }
  };
  if (ds.threads_used <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(ds.threads_used);
    for (unsigned k = 0; k < ds.threads_used; ++k) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  // Reference fixed point for the island test: Newton from the guess when
  // one is provided, otherwise the centroid of all completed points.
  if (req.fixed_point_guess) {
    try {
      ds.fixed_point =
          find_section_fixed_point(field, *req.fixed_point_guess, req.config);
      ds.fixed_point_found = true;
    } catch (...) {
      ds.fixed_point_found = false;
    }
  }
  if (!ds.fixed_point_found) {
    Vec2 acc;
    std::size_t count = 0;
    for (const WorkerOutput& wo : results)
      for (Vec2 p : wo.rec.points) {
        acc = acc + p;
        ++count;
      }
    if (count > 0) ds.fixed_point = (1.0 / static_cast<double>(count)) * acc;
  }

  ds.orbits.reserve(n);
  for (WorkerOutput& wo : results) {
    if (req.classify)
      wo.rec.label = classify_orbit(wo.rec, ds.fixed_point, req.thresholds);
    ds.orbits.push_back(std::move(wo.rec));
  }
  return ds;
}

std::vector<Vec2> rect_grid(Vec2 lo, Vec2 hi, std::size_t nx, std::size_t ny) {
  if (nx == 0 || ny == 0)
    throw std::invalid_argument("rect_grid: empty grid");
  std::vector<Vec2> out;
  out.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    double fy = ny > 1 ? static_cast<double>(j) / static_cast<double>(ny - 1)
                       : 0.5;
    double y = lo.y + (hi.y - lo.y) * fy;
    for (std::size_t i = 0; i < nx; ++i) {
      double fx = nx > 1 ? static_cast<double>(i) / static_cast<double>(nx - 1)
                         : 0.5;
      out.push_back({lo.x + (hi.x - lo.x) * fx, y});
    }
  }
  return out;
}

std::vector<Vec2> radial_fan(Vec2 center, double r0, double r1,
                             std::size_t n_rays, std::size_t n_per_ray) {
  if (n_rays == 0 || n_per_ray == 0)
    throw std::invalid_argument("radial_fan: empty fan");
  std::vector<Vec2> out;
  out.reserve(n_rays * n_per_ray);
  for (std::size_t k = 0; k < n_rays; ++k) {
    double ang = two_pi * static_cast<double>(k) / static_cast<double>(n_rays);
    Vec2 dir{std::cos(ang), std::sin(ang)};
    for (std::size_t j = 0; j < n_per_ray; ++j) {
      double f = n_per_ray > 1
                     ? static_cast<double>(j) / static_cast<double>(n_per_ray - 1)
                     : 0.0;
      double r = r0 + (r1 - r0) * f;
      out.push_back(center + r * dir);
    }
  }
  return out;
}

std::vector<Vec2> exclude_near_ellipse(std::vector<Vec2> ics, VortexEllipse e,
                                       double min_dist) {
  std::vector<Vec2> kept;
  kept.reserve(ics.size());
  for (Vec2 p : ics) {
    double dmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 1024; ++k) {
      double s = two_pi * static_cast<double>(k) / 1024.0;
      Vec2 node{-e.a * std::cos(s), -e.b * std::sin(s)};
      dmin = std::min(dmin, dist(p, node));
    }
    if (dmin >= min_dist) kept.push_back(p);
  }
  return kept;
}

}  // namespace bohm
