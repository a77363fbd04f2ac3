#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "bohm/analysis.hpp"
#include "bohm/canonical.hpp"
#include "bohm/manifest.hpp"
#include "bohm/sections.hpp"
#include "bohm/svg.hpp"
#include "bohm/wavefield.hpp"

using namespace bohm;

TEST_CASE("label names cover the closed set") {
  CHECK(std::string(to_string(OrbitLabel::regular)) == "regular");
  CHECK(std::string(to_string(OrbitLabel::island_chain)) == "island-chain");
  CHECK(std::string(to_string(OrbitLabel::chaotic)) == "chaotic");
  CHECK(std::string(to_string(OrbitLabel::periodic)) == "periodic");
  CHECK(std::string(to_string(OrbitLabel::unresolved)) == "unresolved");
  CHECK(std::string(to_string(OrbitLabel::aborted)) == "aborted");
}

TEST_CASE("IC layout helpers") {
  std::vector<Vec2> g = rect_grid({-1.0, -2.0}, {1.0, 2.0}, 3, 5);
  CHECK(g.size() == 15);
  CHECK(dist(g.front(), {-1.0, -2.0}) == 0.0);
  CHECK(dist(g.back(), {1.0, 2.0}) == 0.0);
  std::vector<Vec2> single = rect_grid({-1.0, -1.0}, {1.0, 3.0}, 1, 1);
  REQUIRE(single.size() == 1);
  CHECK(dist(single[0], {0.0, 1.0}) < 1e-15);

  std::vector<Vec2> fan = radial_fan({0.5, 0.0}, 0.1, 0.4, 4, 3);
  CHECK(fan.size() == 12);
  for (const Vec2& p : fan) {
    double r = dist(p, {0.5, 0.0});
    CHECK(r > 0.1 - 1e-12);
    CHECK(r < 0.4 + 1e-12);
  }

  std::vector<Vec2> pts{{-0.4, 0.0}, {1.5, 1.5}, {0.0, 0.49}};
  std::vector<Vec2> kept =
      exclude_near_ellipse(pts, VortexEllipse{0.4, 0.48}, 0.05);
  REQUIRE(kept.size() == 1);
  CHECK(dist(kept[0], {1.5, 1.5}) == 0.0);
}

TEST_CASE("synthetic orbit classification") {
  ClassifyThresholds th;
  Vec2 fp{0.0, 0.0};

  OrbitRecord rec;
  rec.status = TrajectoryStatus::hit_singularity;
  CHECK(classify_orbit(rec, fp, th) == OrbitLabel::aborted);

  rec.status = TrajectoryStatus::completed;
  rec.points.assign(50, Vec2{1.0, 0.0});
  CHECK(classify_orbit(rec, fp, th) == OrbitLabel::unresolved);

  rec.points.assign(150, Vec2{1.0, 0.0});
  CHECK(classify_orbit(rec, fp, th) == OrbitLabel::periodic);

  // A spread-out orbit with large tangent growth is chaotic.
  rec.points.clear();
  for (int n = 0; n < 150; ++n)
    rec.points.push_back({std::cos(0.9 * n), std::sin(0.9 * n)});
  rec.lyapunov = 0.05;
  CHECK(classify_orbit(rec, fp, th) == OrbitLabel::chaotic);

  // Three tight strands visited in rotation: an island chain.
  rec.points.clear();
  for (int n = 0; n < 300; ++n) {
    double center = two_pi * (n % 3) / 3.0;
    rec.points.push_back({std::cos(center) + 5e-4 * std::cos(0.7 * n),
                          std::sin(center) + 5e-4 * std::sin(0.7 * n)});
  }
  rec.lyapunov = 1e-5;
  {
    RotationEstimate est = rotation_number(rec.points, fp);
    rec.rotation = est.value;
    rec.rotation_error = est.error;
  }
  CHECK(rec.rotation_error < th.rotation_tail);
  CHECK(classify_orbit(rec, fp, th) == OrbitLabel::island_chain);

  // An invariant circle whose rotation sits near a rational is still
  // regular: the mod-q strands smear into arcs.
  rec.points.clear();
  for (int n = 1; n <= 400; ++n)
    rec.points.push_back({std::cos(0.7 * n), std::sin(0.7 * n)});
  rec.lyapunov = 1e-5;
  {
    RotationEstimate est = rotation_number(rec.points, fp);
    rec.rotation = est.value;
    rec.rotation_error = est.error;
  }
  CHECK(classify_orbit(rec, fp, th) == OrbitLabel::regular);
}

TEST_CASE("integrable circle case: no chaotic labels, fixed point found") {
  CanonicalField field(coefficients_from_semi_axes(0.4, 0.4));
  double q = periodic_orbits(0.4).first.radius;
  SectionRequest req;
  req.ics = radial_fan({q, 0.0}, 0.06, 0.4, 4, 3);
  req.n_sections = 300;
  req.threads = 1;
  req.fixed_point_guess = Vec2{q - 0.03, 0.04};
  SectionDataset ds = run_sections(field, req);

  CHECK(ds.fixed_point_found);
  CHECK(dist(ds.fixed_point, {q, 0.0}) < 1e-8);
  REQUIRE(ds.orbits.size() == req.ics.size());
  for (const OrbitRecord& rec : ds.orbits) {
    CAPTURE(rec.ic_index);
    CAPTURE(to_string(rec.label));
    CHECK(rec.status == TrajectoryStatus::completed);
    CHECK(rec.label != OrbitLabel::chaotic);
    CHECK(rec.label != OrbitLabel::aborted);
    CHECK(rec.label != OrbitLabel::unresolved);
    CHECK(rec.lyapunov < 1e-3);
  }
}

TEST_CASE("an IC on the node aborts and is labeled as such") {
  CanonicalField field(coefficients_from_semi_axes(0.4, 0.4));
  SectionRequest req;
  req.ics = {{-0.4 + 1e-8, 0.0}, {1.0, 0.0}};
  req.n_sections = 120;
  req.threads = 1;
  SectionDataset ds = run_sections(field, req);
  REQUIRE(ds.orbits.size() == 2);
  CHECK(ds.orbits[0].label == OrbitLabel::aborted);
  CHECK(ds.orbits[0].status == TrajectoryStatus::hit_singularity);
  CHECK(ds.orbits[1].status == TrajectoryStatus::completed);
}

TEST_CASE("sections in the general frame map onto the reduced frame") {
  const GeneralCoefficients& g = presets().at("fig2-left");
  CanonicalTransform tr = canonicalize(g);
  REQUIRE(!tr.time_reversed);
  GeneralField fg(g);
  CanonicalField fk(tr.canonical);

  std::vector<Vec2> ics{{0.9, 0.2}, {-0.7, 0.5}, {0.3, -0.8}, {1.1, 0.1}};
  SectionRequest rg;
  rg.ics = ics;
  rg.n_sections = 150;
  rg.classify = false;
  rg.threads = 1;
  SectionDataset dg = run_sections(fg, rg);

  SectionRequest rk;
  for (const Vec2& ic : ics) {
    PlanarState c = to_canonical(tr, {ic.x, ic.y, 0.0});
    rk.ics.push_back({c.x, c.y});
  }
  rk.n_sections = 150;
  rk.classify = false;
  rk.threads = 1;
  rk.t0 = -tr.lambda;  // t = 0 in the original frame
  SectionDataset dk = run_sections(fk, rk);

  for (std::size_t i = 0; i < ics.size(); ++i) {
    REQUIRE(dg.orbits[i].status == TrajectoryStatus::completed);
    REQUIRE(dk.orbits[i].status == TrajectoryStatus::completed);
    REQUIRE(dg.orbits[i].points.size() == dk.orbits[i].points.size());
    for (std::size_t n = 0; n < dg.orbits[i].points.size(); ++n) {
      double tau = -tr.lambda + two_pi * static_cast<double>(n + 1);
      PlanarState back = from_canonical(
          tr, {dk.orbits[i].points[n].x, dk.orbits[i].points[n].y, tau});
      CHECK(std::abs(back.t - two_pi * static_cast<double>(n + 1)) < 1e-9);
      CHECK(dist({back.x, back.y}, dg.orbits[i].points[n]) < 1e-6);
    }
  }
}

TEST_CASE("a time-reversed set maps onto backward reduced sections") {
  CanonicalTransform base = canonicalize(presets().at("fig2-left"));
  const CanonicalCoefficients& k = base.canonical;
  GeneralCoefficients flipped(k.A, 0.0, k.B, 0.0, -k.C, 0.0, 1e-9);
  CanonicalTransform tr = canonicalize(flipped);
  REQUIRE(tr.time_reversed);

  GeneralField fg(flipped);
  CanonicalField fk(tr.canonical);
  std::vector<Vec2> ics{{0.9, 0.2}, {-0.6, 0.4}};

  SectionRequest rg;
  rg.ics = ics;
  rg.n_sections = 100;
  rg.classify = false;
  rg.threads = 1;
  SectionDataset dg = run_sections(fg, rg);

  SectionRequest rk;
  for (const Vec2& ic : ics) {
    PlanarState c = to_canonical(tr, {ic.x, ic.y, 0.0});
    rk.ics.push_back({c.x, c.y});
    // Forward time t maps to decreasing tau.
    CHECK(std::abs(c.t - tr.lambda) < 1e-12);
  }
  rk.n_sections = 100;
  rk.classify = false;
  rk.threads = 1;
  rk.t0 = tr.lambda;
  rk.backward = true;
  SectionDataset dk = run_sections(fk, rk);

  for (std::size_t i = 0; i < ics.size(); ++i) {
    REQUIRE(dg.orbits[i].status == TrajectoryStatus::completed);
    REQUIRE(dk.orbits[i].status == TrajectoryStatus::completed);
    for (std::size_t n = 0; n < dg.orbits[i].points.size(); ++n) {
      double tau = tr.lambda - two_pi * static_cast<double>(n + 1);
      PlanarState back = from_canonical(
          tr, {dk.orbits[i].points[n].x, dk.orbits[i].points[n].y, tau});
      CHECK(std::abs(back.t - two_pi * static_cast<double>(n + 1)) < 1e-9);
      CHECK(dist({back.x, back.y}, dg.orbits[i].points[n]) < 1e-6);
    }
  }
}

TEST_CASE("results are deterministic across thread counts") {
  CanonicalField field(coefficients_from_semi_axes(0.4, 0.44));
  SectionRequest req;
  req.ics = rect_grid({0.6, -0.2}, {1.0, 0.2}, 2, 2);
  req.n_sections = 50;
  req.classify = false;
  req.threads = 1;
  SectionDataset d1 = run_sections(field, req);
  req.threads = 3;
  SectionDataset d3 = run_sections(field, req);
  CHECK(d3.threads_used >= 1);
  REQUIRE(d1.orbits.size() == d3.orbits.size());
  for (std::size_t i = 0; i < d1.orbits.size(); ++i) {
    REQUIRE(d1.orbits[i].points.size() == d3.orbits[i].points.size());
    for (std::size_t n = 0; n < d1.orbits[i].points.size(); ++n) {
      CHECK(d1.orbits[i].points[n].x == d3.orbits[i].points[n].x);
      CHECK(d1.orbits[i].points[n].y == d3.orbits[i].points[n].y);
    }
  }
}

TEST_CASE("svg rendering is deterministic and rejects empty data") {
  CanonicalField field(coefficients_from_semi_axes(0.4, 0.4));
  SectionRequest req;
  req.ics = {{0.9, 0.0}, {1.1, 0.0}};
  req.n_sections = 110;
  req.threads = 1;
  SectionDataset ds = run_sections(field, req);
  SvgOptions opt;
  opt.ellipse = VortexEllipse{0.4, 0.4};
  std::string svg1 = render_svg_scatter(ds, opt);
  std::string svg2 = render_svg_scatter(ds, opt);
  CHECK(svg1 == svg2);
  CHECK(svg1.rfind("<svg", 0) == 0);
  CHECK(svg1.find("</svg>") != std::string::npos);
  CHECK(svg1.find("ellipse") != std::string::npos);

  SectionDataset empty;
  CHECK_THROWS_AS(render_svg_scatter(empty, opt), std::invalid_argument);
}

TEST_CASE("summary json carries the per-orbit fields") {
  CanonicalField field(coefficients_from_semi_axes(0.4, 0.4));
  SectionRequest req;
  req.ics = {{0.95, 0.1}};
  req.n_sections = 120;
  req.threads = 1;
  SectionDataset ds = run_sections(field, req);
  json j = sections_summary_json(ds);
  CHECK(j["n_sections"] == 120);
  REQUIRE(j["orbits"].size() == 1);
  CHECK(j["orbits"][0].contains("label"));
  CHECK(j["orbits"][0].contains("lyapunov"));
  CHECK(j["orbits"][0].contains("rotation"));
  CHECK(j["orbits"][0]["ic_index"] == 0);
}

TEST_CASE("manifest roundtrip preserves every field") {
  RunManifest m;
  m.version = "9.9.9";
  m.command = "section";
  m.args = {{"sections", 128}, {"out", "somewhere"}, {"tol", 1e-10}};
  m.timestamp = "2026-01-01T00:00:00Z";
  m.threads = 4;
  json j = to_json(m);
  RunManifest back = manifest_from_json(j);
  CHECK(back.version == m.version);
  CHECK(back.command == m.command);
  CHECK(back.timestamp == m.timestamp);
  CHECK(back.threads == m.threads);
  CHECK(back.args == m.args);
}

TEST_CASE("thread resolution: explicit, environment, fallback") {
  CHECK(resolve_threads(5) == 5);
  setenv("BOHM_VORTEX_THREADS", "3", 1);
  CHECK(resolve_threads(0) == 3);
  CHECK(resolve_threads(2) == 2);
  unsetenv("BOHM_VORTEX_THREADS");
  CHECK(resolve_threads(0) >= 1);
}
