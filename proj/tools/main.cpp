// bohmtraj: command-line surface of the Bohmian trajectory toolkit.
//
// Every run writes a manifest (<command>.manifest.json) next to its
// outputs; `bohmtraj --from-manifest FILE` replays the stored command with
// the stored parameters, timestamp, and version, reproducing every output
// byte for byte.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bohm/analysis.hpp"
#include "bohm/canonical.hpp"
#include "bohm/errors.hpp"
#include "bohm/integrator.hpp"
#include "bohm/manifest.hpp"
#include "bohm/sections.hpp"
#include "bohm/svg.hpp"
#include "bohm/types.hpp"
#include "bohm/verify.hpp"
#include "bohm/wavefield.hpp"

#ifndef BOHMTRAJ_VERSION
#define BOHMTRAJ_VERSION "0.1.0"
#endif

namespace fs = std::filesystem;
using bohm::json;

namespace {

std::string g15(double v) { return bohm::format_g15(v); }

// ---------------------------------------------------------------------------
// Field selection shared by most subcommands.

struct FieldOpts {
  std::string preset;
  std::vector<double> coeffs;     // A,D,B,E,C,F
  std::vector<double> canonical;  // A,B,C
  std::vector<double> semi_axes;  // a,b
  bool renormalize = false;
  double norm_tol = 1e-12;
};

void add_field_options(CLI::App* cmd, FieldOpts& o) {
  auto* p = cmd->add_option("--preset", o.preset,
                            "Named coefficient set (see `presets` below)");
  auto* c = cmd->add_option("--coeffs", o.coeffs,
                            "General coefficients A,D,B,E,C,F")
                ->delimiter(',')
                ->expected(6);
  auto* k = cmd->add_option("--canonical", o.canonical,
                            "Canonical coefficients A,B,C")
                ->delimiter(',')
                ->expected(3);
  auto* s = cmd->add_option("--semi-axes", o.semi_axes,
                            "Node-ellipse semi-axes a,b (canonical form)")
                ->delimiter(',')
                ->expected(2);
  p->excludes(c)->excludes(k)->excludes(s);
  c->excludes(k)->excludes(s);
  k->excludes(s);
  cmd->add_flag("--renormalize", o.renormalize,
                "Rescale --coeffs by their Euclidean norm first");
  cmd->add_option("--norm-tol", o.norm_tol,
                  "Normalization check tolerance (default 1e-12)");
}

// Store the field selection into the args object (fully resolved).
void field_to_args(const FieldOpts& o, json& args) {
  if (!o.preset.empty())
    args["preset"] = o.preset;
  else if (o.coeffs.size() == 6)
    args["coeffs"] = o.coeffs;
  else if (o.canonical.size() == 3)
    args["canonical"] = o.canonical;
  else if (o.semi_axes.size() == 2)
    args["semi_axes"] = o.semi_axes;
  if (o.renormalize) args["renormalize"] = true;
  args["norm_tol"] = o.norm_tol;
}

bohm::GeneralCoefficients coefficients_from_args(const json& args) {
  double tol = args.value("norm_tol", 1e-12);
  if (args.contains("preset")) {
    std::string name = args["preset"].get<std::string>();
    const auto& reg = bohm::presets();
    auto it = reg.find(name);
    if (it == reg.end()) {
      std::string names;
      for (const auto& [k, v] : reg) names += (names.empty() ? "" : ", ") + k;
      throw std::invalid_argument("unknown preset '" + name +
                                  "' (available: " + names + ")");
    }
    return it->second;
  }
  if (args.contains("coeffs")) {
    auto v = args["coeffs"].get<std::vector<double>>();
    if (args.value("renormalize", false))
      return bohm::renormalized(v[0], v[1], v[2], v[3], v[4], v[5]);
    return bohm::GeneralCoefficients(v[0], v[1], v[2], v[3], v[4], v[5], tol);
  }
  if (args.contains("canonical")) {
    auto v = args["canonical"].get<std::vector<double>>();
    return bohm::CanonicalCoefficients(v[0], v[1], v[2], tol).general(tol);
  }
  if (args.contains("semi_axes")) {
    auto v = args["semi_axes"].get<std::vector<double>>();
    return bohm::coefficients_from_semi_axes(v[0], v[1]).general();
  }
  throw std::invalid_argument(
      "no field given: use --preset, --coeffs, --canonical, or --semi-axes");
}

// Use the reduced field implementation when the coefficients are already in
// canonical form; fall back to the general field otherwise.
std::unique_ptr<bohm::Field> make_field(const bohm::GeneralCoefficients& gc) {
  if (gc.D == 0.0 && gc.E == 0.0 && gc.F == 0.0 && gc.A >= 0.0 &&
      gc.B > 0.0 && gc.C > 0.0)
    return std::make_unique<bohm::CanonicalField>(
        bohm::CanonicalCoefficients(gc.A, gc.B, gc.C, 1e-9));
  return std::make_unique<bohm::GeneralField>(gc);
}

// ---------------------------------------------------------------------------
// Output helpers.

fs::path out_dir(const bohm::RunManifest& m) {
  fs::path dir(m.args.value("out", std::string(".")));
  fs::create_directories(dir);
  return dir;
}

void write_report(const bohm::RunManifest& m, const json& report,
                  const std::string& stem) {
  fs::path dir = out_dir(m);
  bohm::write_text_file((dir / (stem + ".json")).string(),
                        report.dump(2) + "\n");
  bohm::save_manifest((dir / (stem + ".manifest.json")).string(), m);
}

bohm::IntegratorConfig config_from_args(const json& args) {
  bohm::IntegratorConfig cfg;
  double tol = args.value("tol", 1e-12);
  cfg.abs_tol = tol;
  cfg.rel_tol = tol;
  return cfg;
}

bohm::Vec2 ic_from_args(const json& args) {
  auto v = args.at("ic").get<std::vector<double>>();
  if (v.size() != 2)
    throw std::invalid_argument("--ic expects exactly two values x,y");
  return {v[0], v[1]};
}

// ---------------------------------------------------------------------------
// Subcommand handlers.  Each receives the complete manifest (fresh or
// replayed) and produces identical bytes either way.

int cmd_canonicalize(const bohm::RunManifest& m) {
  bohm::GeneralCoefficients gc = coefficients_from_args(m.args);
  bohm::CanonicalTransform tr = bohm::canonicalize(gc);
  bohm::VortexEllipse ell = bohm::semi_axes(tr.canonical);

  std::cout << "A = " << g15(tr.canonical.A) << "\n"
            << "B = " << g15(tr.canonical.B) << "\n"
            << "C = " << g15(tr.canonical.C) << "\n"
            << "mu = " << g15(tr.mu) << "\n"
            << "lambda = " << g15(tr.lambda) << "\n"
            << "time_reversed = " << (tr.time_reversed ? "true" : "false")
            << "\n";

  json j;
  j["manifest"] = bohm::to_json(m);
  j["input"] = {gc.A, gc.D, gc.B, gc.E, gc.C, gc.F};
  j["canonical"] = {tr.canonical.A, tr.canonical.B, tr.canonical.C};
  j["mu"] = tr.mu;
  j["lambda"] = tr.lambda;
  j["time_reversed"] = tr.time_reversed;
  j["magnitudes"] = {tr.mag_a, tr.mag_b, tr.mag_c};
  j["phases"] = {tr.phase_a, tr.phase_b, tr.phase_c};
  j["ellipse"] = {ell.a, ell.b};
  write_report(m, j, "canonicalize");
  return 0;
}

int cmd_vortex(const bohm::RunManifest& m) {
  bohm::GeneralCoefficients gc = coefficients_from_args(m.args);
  bohm::CanonicalTransform tr = bohm::canonicalize(gc);
  bohm::VortexEllipse ell = bohm::semi_axes(tr.canonical);
  double t0 = m.args.value("t0", 0.0);
  double t1 = m.args.value("t1", bohm::two_pi);
  int samples = m.args.value("samples", 256);
  if (samples < 2) throw std::invalid_argument("--samples must be at least 2");

  bohm::Trajectory locus;
  locus.status = bohm::TrajectoryStatus::completed;
  for (int k = 0; k < samples; ++k) {
    double t = t0 + (t1 - t0) * static_cast<double>(k) /
                        static_cast<double>(samples - 1);
    bohm::Vec2 z = bohm::vortex_position(gc, t);
    locus.samples.push_back({z.x, z.y, t});
  }

  std::cout << "ellipse semi-axis a = " << g15(ell.a) << "\n"
            << "ellipse semi-axis b = " << g15(ell.b) << "\n"
            << "rotation mu = " << g15(tr.mu) << "\n"
            << "time_reversed = " << (tr.time_reversed ? "true" : "false")
            << "\n";

  fs::path dir = out_dir(m);
  bohm::write_trajectory_csv((dir / "vortex.csv").string(), locus);
  json j;
  j["manifest"] = bohm::to_json(m);
  j["ellipse"] = {ell.a, ell.b};
  j["mu"] = tr.mu;
  j["time_reversed"] = tr.time_reversed;
  j["samples"] = samples;
  write_report(m, j, "vortex");
  return 0;
}

int cmd_integrate(const bohm::RunManifest& m) {
  bohm::GeneralCoefficients gc = coefficients_from_args(m.args);
  std::unique_ptr<bohm::Field> field = make_field(gc);
  bohm::Vec2 ic = ic_from_args(m.args);
  double t0 = m.args.value("t0", 0.0);
  double t1 = m.args.value("t1", 20.0 * bohm::pi);
  bohm::IntegratorConfig cfg = config_from_args(m.args);

  bohm::Trajectory tr = bohm::integrate(*field, ic, t0, t1, cfg);
  const bohm::PlanarState& last = tr.samples.back();

  std::cout << "status = " << (tr.status == bohm::TrajectoryStatus::completed
                                   ? "completed"
                               : tr.status ==
                                       bohm::TrajectoryStatus::hit_singularity
                                   ? "hit_singularity"
                                   : "step_limit")
            << "\n"
            << "steps = " << tr.steps << " (rejected " << tr.rejected << ")\n"
            << "final = (" << g15(last.x) << ", " << g15(last.y) << ") at t = "
            << g15(last.t) << "\n";

  fs::path dir = out_dir(m);
  bohm::write_trajectory_csv((dir / "integrate.csv").string(), tr);
  json j;
  j["manifest"] = bohm::to_json(m);
  j["status"] = tr.status == bohm::TrajectoryStatus::completed
                    ? "completed"
                    : tr.status == bohm::TrajectoryStatus::hit_singularity
                          ? "hit_singularity"
                          : "step_limit";
  j["steps"] = tr.steps;
  j["rejected"] = tr.rejected;
  j["n_samples"] = tr.samples.size();
  j["final"] = {last.t, last.x, last.y};
  write_report(m, j, "integrate");
  return 0;
}

int cmd_section(const bohm::RunManifest& m) {
  bohm::GeneralCoefficients gc = coefficients_from_args(m.args);
  std::unique_ptr<bohm::Field> field = make_field(gc);

  std::vector<bohm::Vec2> ics;
  if (m.args.contains("grid")) {
    auto v = m.args["grid"].get<std::vector<double>>();
    int nx = static_cast<int>(v[2]), ny = static_cast<int>(v[5]);
    if (nx < 1 || ny < 1)
      throw std::invalid_argument("--grid counts must be at least 1");
    ics = bohm::rect_grid({v[0], v[3]}, {v[1], v[4]},
                          static_cast<std::size_t>(nx),
                          static_cast<std::size_t>(ny));
  }
  if (m.args.contains("ics")) {
    auto flat = m.args["ics"].get<std::vector<double>>();
    for (std::size_t i = 0; i + 1 < flat.size(); i += 2)
      ics.push_back({flat[i], flat[i + 1]});
  }
  if (ics.empty())
    throw std::invalid_argument("no initial conditions: use --grid or --ic");

  bohm::SectionRequest req;
  req.ics = ics;
  req.n_sections = m.args.value("sections", 10000);
  req.t0 = m.args.value("t0", 0.0);
  req.backward = m.args.value("backward", false);
  req.classify = m.args.value("classify", true);
  req.threads = m.args.value("threads", 0u);
  req.config = config_from_args(m.args);

  bohm::SectionDataset ds = bohm::run_sections(*field, req);

  fs::path dir = out_dir(m);
  bohm::write_sections_csv((dir / "section.csv").string(), ds);

  bohm::SvgOptions svg;
  svg.title = "stroboscopic sections";
  bohm::CanonicalTransform tr = bohm::canonicalize(gc);
  bohm::VortexEllipse ell = bohm::semi_axes(tr.canonical);
  if (ell.a > 1e-12 && ell.b > 1e-12) {
    svg.ellipse = ell;
    svg.ellipse_rotation = tr.mu;
  }
  bohm::write_svg_scatter((dir / "section.svg").string(), ds, svg);

  json j;
  j["manifest"] = bohm::to_json(m);
  j["summary"] = bohm::sections_summary_json(ds);
  bohm::write_text_file((dir / "section.json").string(), j.dump(2) + "\n");
  bohm::save_manifest((dir / "section.manifest.json").string(), m);

  std::size_t counts[6] = {0, 0, 0, 0, 0, 0};
  for (const bohm::OrbitRecord& rec : ds.orbits)
    counts[static_cast<int>(rec.label)]++;
  std::cout << "orbits = " << ds.orbits.size()
            << ", sections = " << ds.n_sections
            << ", threads = " << ds.threads_used << "\n"
            << "labels: regular " << counts[0] << ", island-chain "
            << counts[1] << ", chaotic " << counts[2] << ", periodic "
            << counts[3] << ", unresolved " << counts[4] << ", aborted "
            << counts[5] << "\n";
  return 0;
}

int cmd_orbits(const bohm::RunManifest& m) {
  double a = m.args.at("a").get<double>();
  auto [ell, hyp] = bohm::periodic_orbits(a);
  bohm::IntegratorConfig cfg = config_from_args(m.args);

  bohm::Mat2 me = bohm::monodromy(ell, cfg);
  bohm::Mat2 mh = bohm::monodromy(hyp, cfg);
  auto [he1, he2] = bohm::eigenvalues(mh);
  auto dirs = bohm::hyperbolic_directions(a);

  std::cout << "elliptic radius = " << g15(ell.radius)
            << ", exponent nu = " << g15(ell.exponent) << "\n"
            << "hyperbolic radius = " << g15(hyp.radius)
            << ", exponent sigma = " << g15(hyp.exponent) << "\n"
            << "hyperbolic multipliers = " << g15(he1.re) << ", "
            << g15(he2.re) << "\n"
            << "elliptic monodromy trace = " << g15(bohm::trace(me))
            << " (2 cos 2 pi nu = "
            << g15(2.0 * std::cos(bohm::two_pi * ell.exponent)) << ")\n";

  json j;
  j["manifest"] = bohm::to_json(m);
  j["a"] = a;
  j["elliptic"] = {{"radius", ell.radius},
                   {"exponent", ell.exponent},
                   {"monodromy_trace", bohm::trace(me)},
                   {"monodromy_det", bohm::det(me)}};
  j["hyperbolic"] = {{"radius", hyp.radius},
                     {"exponent", hyp.exponent},
                     {"multiplier_large", he1.re},
                     {"multiplier_small", he2.re},
                     {"unstable_direction", {dirs.first.x, dirs.first.y}},
                     {"stable_direction", {dirs.second.x, dirs.second.y}}};
  write_report(m, j, "orbits");
  return 0;
}

int cmd_freq(const bohm::RunManifest& m) {
  double a = m.args.value("a", 0.4);
  double action = m.args.value("action", 1e-3);
  double B = m.args.value("B", std::sqrt(0.5));
  double C = m.args.value("C", std::sqrt(0.5));
  double alpha = m.args.value("alpha", 1.0);
  int quad_points = m.args.value("quad_points", 20001);

  double omega = bohm::autonomous_frequency(B, C, alpha);
  double hv = bohm::h_vortex(a, action);
  double dhv = bohm::dh_vortex(a, action);
  bohm::EllipticExpansion ex = bohm::elliptic_expansion(a, quad_points);
  double J = bohm::elliptic_J(a, action);
  double he = bohm::h_elliptic(a, J);

  std::cout << "driftless: omega(B=" << g15(B) << ", C=" << g15(C)
            << ", alpha=" << g15(alpha) << ") = " << g15(omega) << "\n"
            << "node expansion at I = " << g15(action) << ": h = " << g15(hv)
            << ", dh/dI = " << g15(dhv) << "\n"
            << "elliptic expansion at a = " << g15(a) << ": q = " << g15(ex.q)
            << ", Pi1 = " << g15(ex.pi1) << ", <a1> = " << g15(ex.avg_alpha1)
            << ", <a3/2> = " << g15(ex.avg_alpha32)
            << ", <a2> = " << g15(ex.avg_alpha2) << "\n"
            << "elliptic action J(I) = " << g15(J) << ", h = " << g15(he)
            << "\n";

  json j;
  j["manifest"] = bohm::to_json(m);
  j["driftless"] = {{"B", B}, {"C", C}, {"alpha", alpha}, {"omega", omega}};
  j["node"] = {{"a", a}, {"I", action}, {"h", hv}, {"dh_dI", dhv}};
  j["elliptic"] = {{"a", a},
                   {"q", ex.q},
                   {"pi1", ex.pi1},
                   {"avg_alpha1", ex.avg_alpha1},
                   {"avg_alpha32", ex.avg_alpha32},
                   {"avg_alpha2", ex.avg_alpha2},
                   {"pi2_reading_a", ex.pi2_reading_a},
                   {"pi2_reading_q", ex.pi2_reading_q},
                   {"J", J},
                   {"h", he}};
  write_report(m, j, "freq");
  return 0;
}

int cmd_lyapunov(const bohm::RunManifest& m) {
  bohm::GeneralCoefficients gc = coefficients_from_args(m.args);
  std::unique_ptr<bohm::Field> field = make_field(gc);
  bohm::Vec2 ic = ic_from_args(m.args);
  double T = m.args.value("time", 200.0 * bohm::pi);
  double renorm = m.args.value("renorm", bohm::two_pi);
  bohm::IntegratorConfig cfg = config_from_args(m.args);

  json j;
  j["manifest"] = bohm::to_json(m);
  j["T"] = T;
  try {
    double lam = bohm::lyapunov_exponent(
        *field, ic, T, renorm, bohm::TangentMode::finite_difference, cfg);
    std::cout << "lambda = " << g15(lam) << "\n";
    j["status"] = "completed";
    j["lambda"] = lam;
  } catch (const bohm::SingularityAbort&) {
    std::cout << "trajectory hit the node before t = " << g15(T) << "\n";
    j["status"] = "hit_singularity";
  } catch (const bohm::StepLimitExceeded&) {
    std::cout << "step budget exhausted before t = " << g15(T) << "\n";
    j["status"] = "step_limit";
  }
  write_report(m, j, "lyapunov");
  return 0;
}

int cmd_reversibility(const bohm::RunManifest& m) {
  bohm::GeneralCoefficients gc = coefficients_from_args(m.args);
  std::unique_ptr<bohm::Field> field = make_field(gc);
  bohm::Vec2 ic = ic_from_args(m.args);
  double T = m.args.value("time", 10.0 * bohm::pi);
  int samples = m.args.value("samples", 16);
  bohm::IntegratorConfig cfg = config_from_args(m.args);

  json j;
  j["manifest"] = bohm::to_json(m);
  j["T"] = T;
  try {
    double res = bohm::reversibility_residual(*field, ic, T,
                                              static_cast<std::size_t>(samples),
                                              cfg);
    std::cout << "residual = " << g15(res) << "\n";
    j["status"] = "completed";
    j["residual"] = res;
  } catch (const bohm::SingularityAbort&) {
    std::cout << "trajectory hit the node before t = " << g15(T) << "\n";
    j["status"] = "hit_singularity";
  } catch (const bohm::StepLimitExceeded&) {
    std::cout << "step budget exhausted before t = " << g15(T) << "\n";
    j["status"] = "step_limit";
  }
  write_report(m, j, "reversibility");
  return 0;
}

int cmd_roadmap(const bohm::RunManifest& m) {
  bohm::GeneralCoefficients gc = coefficients_from_args(m.args);
  bohm::CanonicalTransform tr = bohm::canonicalize(gc);
  const bohm::CanonicalCoefficients& cc = tr.canonical;
  bohm::VortexEllipse ell = bohm::semi_axes(cc);

  const double eps = 1e-9;
  std::string regime, sections_hint;
  bool integrable, hamiltonian;
  if (cc.A <= eps) {
    regime = "A = 0, B != 0, C != 0";
    integrable = true;
    hamiltonian = false;
    sections_hint = "nested ellipses around the origin";
  } else if (std::abs(cc.B - cc.C) <= eps) {
    regime = "A != 0, B = C";
    integrable = true;
    hamiltonian = true;
    sections_hint = "nested loops around one elliptic point (circle case)";
  } else {
    regime = "A != 0, B != C";
    integrable = false;
    hamiltonian = false;
    sections_hint = "mixed regular islands and chaotic orbits";
  }

  std::cout << "regime: " << regime << "\n"
            << "integrable: " << (integrable ? "yes" : "no") << "\n"
            << "hamiltonian: " << (hamiltonian ? "yes" : "no") << "\n"
            << "time_reversible: yes\n"
            << "sections: " << sections_hint << "\n"
            << "canonical = (" << g15(cc.A) << ", " << g15(cc.B) << ", "
            << g15(cc.C) << "), mu = " << g15(tr.mu)
            << ", lambda = " << g15(tr.lambda) << ", time_reversed = "
            << (tr.time_reversed ? "true" : "false") << "\n";

  json j;
  j["manifest"] = bohm::to_json(m);
  j["regime"] = regime;
  j["integrable"] = integrable;
  j["hamiltonian"] = hamiltonian;
  j["time_reversible"] = true;
  j["sections"] = sections_hint;
  j["canonical"] = {cc.A, cc.B, cc.C};
  j["mu"] = tr.mu;
  j["lambda"] = tr.lambda;
  j["time_reversed"] = tr.time_reversed;
  j["ellipse"] = {ell.a, ell.b};
  write_report(m, j, "roadmap");
  return 0;
}

int cmd_verify(const bohm::RunManifest& m) {
  bohm::VerifyOptions vo;
  vo.threads = m.args.value("threads", 0u);
  std::vector<bohm::CheckResult> results =
      bohm::run_verification(vo, &std::cout);

  json j = bohm::verification_report(results);
  j["manifest"] = bohm::to_json(m);
  write_report(m, j, "verify");

  std::size_t failed = 0;
  for (const bohm::CheckResult& r : results)
    if (!r.pass) ++failed;
  if (failed == 0) {
    std::cout << "verification PASSED (" << results.size() << " checks)\n";
    return 0;
  }
  std::cout << "verification FAILED (" << failed << " of " << results.size()
            << " checks)\n";
  return 2;
}

int dispatch(const bohm::RunManifest& m) {
  if (m.command == "canonicalize") return cmd_canonicalize(m);
  if (m.command == "vortex") return cmd_vortex(m);
  if (m.command == "integrate") return cmd_integrate(m);
  if (m.command == "section") return cmd_section(m);
  if (m.command == "orbits") return cmd_orbits(m);
  if (m.command == "freq") return cmd_freq(m);
  if (m.command == "lyapunov") return cmd_lyapunov(m);
  if (m.command == "reversibility") return cmd_reversibility(m);
  if (m.command == "roadmap") return cmd_roadmap(m);
  if (m.command == "verify") return cmd_verify(m);
  std::cerr << "error: unknown command '" << m.command << "'\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bohmian trajectories of a three-eigenstate oscillator superposition: "
      "canonical reduction, integration, stroboscopic sections, and a "
      "self-contained verification suite.",
      "bohmtraj"};
  app.footer(
      "Environment:\n  BOHM_VORTEX_THREADS  default worker count for section "
      "batches\n\nPresets: fig2-left, fig2-right, fig3-a, fig3-b, fig3-c, "
      "fig3-d");
  app.require_subcommand(0, 1);

  std::string from_manifest;
  app.add_option("--from-manifest", from_manifest,
                 "Replay a stored run; reproduces its outputs byte for byte");

  FieldOpts fo;
  std::string out = ".";
  double t0 = 0.0, t1 = 20.0 * bohm::pi;
  double tol = 1e-12;
  unsigned threads = 0;
  std::vector<double> ic_flat;
  std::vector<double> grid;
  int samples = 256;
  int sections = 10000;
  bool backward = false, no_classify = false;
  double a_radius = 0.4, action = 1e-3;
  double Bc = std::sqrt(0.5), Cc = std::sqrt(0.5), alpha = 1.0;
  int quad_points = 20001;
  double lyap_time = 200.0 * bohm::pi, renorm = bohm::two_pi;
  double rev_time = 10.0 * bohm::pi;
  int rev_samples = 16;

  auto add_common = [&](CLI::App* cmd, bool with_field) {
    if (with_field) add_field_options(cmd, fo);
    cmd->add_option("--out", out, "Output directory (default: .)");
  };

  CLI::App* c_canon =
      app.add_subcommand("canonicalize", "Reduce coefficients to canonical "
                                         "form (A, B, C) with (mu, lambda)");
  add_common(c_canon, true);

  CLI::App* c_vortex = app.add_subcommand(
      "vortex", "Report the node ellipse and sample its locus over time");
  add_common(c_vortex, true);
  c_vortex->add_option("--t0", t0, "Start time");
  c_vortex->add_option("--t1", t1, "End time");
  c_vortex->add_option("--samples", samples, "Number of locus samples");

  CLI::App* c_int = app.add_subcommand(
      "integrate", "Integrate one trajectory and write it as CSV");
  add_common(c_int, true);
  c_int->add_option("--ic", ic_flat, "Initial condition x,y")
      ->delimiter(',')
      ->expected(2)
      ->required();
  c_int->add_option("--t0", t0, "Start time");
  c_int->add_option("--t1", t1, "End time");
  c_int->add_option("--tol", tol, "Integrator tolerance (abs and rel)");

  CLI::App* c_sec = app.add_subcommand(
      "section", "Stroboscopic sections with per-orbit classification");
  add_common(c_sec, true);
  c_sec->add_option("--ic", ic_flat, "Initial condition x,y (repeatable)")
      ->delimiter(',');
  c_sec->add_option("--grid", grid, "IC grid x0,x1,nx,y0,y1,ny")
      ->delimiter(',')
      ->expected(6);
  c_sec->add_option("--sections", sections, "Sections per orbit");
  c_sec->add_option("--t0", t0, "Section phase (start time)");
  c_sec->add_flag("--backward", backward, "Iterate the inverse map");
  c_sec->add_flag("--no-classify", no_classify, "Skip orbit classification");
  c_sec->add_option("--tol", tol, "Integrator tolerance (abs and rel)");
  c_sec->add_option("--threads", threads, "Worker threads (0 = auto)");

  CLI::App* c_orb = app.add_subcommand(
      "orbits", "Periodic orbits of the reduced circle field: radii, "
                "exponents, multipliers");
  c_orb->add_option("--a", a_radius, "Circle radius")->required();
  c_orb->add_option("--tol", tol, "Integrator tolerance (abs and rel)");
  add_common(c_orb, false);

  CLI::App* c_freq = app.add_subcommand(
      "freq", "Frequency report: driftless law, node expansion, elliptic "
              "expansion");
  c_freq->add_option("--a", a_radius, "Circle radius");
  c_freq->add_option("--action", action, "Action level I for the expansions");
  c_freq->add_option("--B", Bc, "Driftless coefficient B");
  c_freq->add_option("--C", Cc, "Driftless coefficient C");
  c_freq->add_option("--alpha", alpha, "Driftless orbit radius");
  c_freq->add_option("--quad-points", quad_points, "Quadrature points");
  add_common(c_freq, false);

  CLI::App* c_lyap = app.add_subcommand(
      "lyapunov", "Tangent-space growth rate along one trajectory");
  add_common(c_lyap, true);
  c_lyap->add_option("--ic", ic_flat, "Initial condition x,y")
      ->delimiter(',')
      ->expected(2)
      ->required();
  c_lyap->add_option("--time", lyap_time, "Total time");
  c_lyap->add_option("--renorm", renorm, "Renormalization interval");
  c_lyap->add_option("--tol", tol, "Integrator tolerance (abs and rel)");

  CLI::App* c_rev = app.add_subcommand(
      "reversibility", "Reflection-symmetry residual along one trajectory");
  add_common(c_rev, true);
  c_rev->add_option("--ic", ic_flat, "Initial condition x,y")
      ->delimiter(',')
      ->expected(2)
      ->required();
  c_rev->add_option("--time", rev_time, "Total time");
  c_rev->add_option("--samples", rev_samples, "Comparison times");
  c_rev->add_option("--tol", tol, "Integrator tolerance (abs and rel)");

  CLI::App* c_road = app.add_subcommand(
      "roadmap", "Dynamical regime report for a coefficient set");
  add_common(c_road, true);

  CLI::App* c_ver = app.add_subcommand(
      "verify", "Run the full verification suite (exit 2 on failure)");
  c_ver->add_option("--threads", threads, "Worker threads (0 = auto)");
  add_common(c_ver, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!from_manifest.empty()) {
      if (app.get_subcommands().size() > 0) {
        std::cerr << "error: --from-manifest replaces the subcommand\n";
        return 1;
      }
      return dispatch(bohm::load_manifest(from_manifest));
    }

    bohm::RunManifest m;
    m.version = BOHMTRAJ_VERSION;
    m.timestamp = bohm::iso_utc_now();
    json& args = m.args;

    if (app.got_subcommand(c_canon)) {
      m.command = "canonicalize";
      field_to_args(fo, args);
    } else if (app.got_subcommand(c_vortex)) {
      m.command = "vortex";
      field_to_args(fo, args);
      args["t0"] = c_vortex->count("--t0") ? t0 : 0.0;
      args["t1"] = c_vortex->count("--t1") ? t1 : bohm::two_pi;
      args["samples"] = samples;
    } else if (app.got_subcommand(c_int)) {
      m.command = "integrate";
      field_to_args(fo, args);
      args["ic"] = ic_flat;
      args["t0"] = t0;
      args["t1"] = t1;
      args["tol"] = tol;
    } else if (app.got_subcommand(c_sec)) {
      m.command = "section";
      field_to_args(fo, args);
      if (!grid.empty()) args["grid"] = grid;
      if (!ic_flat.empty()) {
        if (ic_flat.size() % 2 != 0) {
          std::cerr << "error: --ic expects pairs x,y\n";
          return 1;
        }
        args["ics"] = ic_flat;
      }
      args["sections"] = sections;
      args["t0"] = t0;
      args["backward"] = backward;
      args["classify"] = !no_classify;
      args["tol"] = tol;
      args["threads"] = threads;
    } else if (app.got_subcommand(c_orb)) {
      m.command = "orbits";
      args["a"] = a_radius;
      args["tol"] = tol;
    } else if (app.got_subcommand(c_freq)) {
      m.command = "freq";
      args["a"] = a_radius;
      args["action"] = action;
      args["B"] = Bc;
      args["C"] = Cc;
      args["alpha"] = alpha;
      args["quad_points"] = quad_points;
    } else if (app.got_subcommand(c_lyap)) {
      m.command = "lyapunov";
      field_to_args(fo, args);
      args["ic"] = ic_flat;
      args["time"] = lyap_time;
      args["renorm"] = renorm;
      args["tol"] = tol;
    } else if (app.got_subcommand(c_rev)) {
      m.command = "reversibility";
      field_to_args(fo, args);
      args["ic"] = ic_flat;
      args["time"] = rev_time;
      args["samples"] = rev_samples;
      args["tol"] = tol;
    } else if (app.got_subcommand(c_road)) {
      m.command = "roadmap";
      field_to_args(fo, args);
    } else if (app.got_subcommand(c_ver)) {
      m.command = "verify";
      args["threads"] = threads;
    } else {
      std::cerr << "error: a subcommand is required (see --help)\n";
      return 1;
    }
    args["out"] = out;
    m.threads = args.value("threads", 0u);

    return dispatch(m);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
