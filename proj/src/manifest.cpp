#include "bohm/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bohm {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_g15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

json to_json(const RunManifest& m) {
  json j;
  j["tool"] = m.tool;
  j["version"] = m.version;
  j["command"] = m.command;
  j["args"] = m.args;
  j["timestamp"] = m.timestamp;
  j["threads"] = m.threads;
  return j;
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.tool = j.at("tool").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.command = j.at("command").get<std::string>();
  m.args = j.at("args");
  m.timestamp = j.at("timestamp").get<std::string>();
  m.threads = j.value("threads", 0u);
  return m;
}

void save_manifest(const std::string& path, const RunManifest& m) {
  write_text_file(path, to_json(m).dump(2) + "\n");
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_manifest: cannot open " + path);
  json j = json::parse(f);
  return manifest_from_json(j);
}

std::string iso_utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_text_file: cannot open " + path);
  f << content;
  if (!f) throw std::runtime_error("write_text_file: write failed " + path);
}

void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
  std::string out = "t,x,y\n";
  for (const PlanarState& s : tr.samples) {
    out += format_g17(s.t);
    out += ',';
    out += format_g17(s.x);
    out += ',';
    out += format_g17(s.y);
    out += '\n';
  }
  write_text_file(path, out);
}

void write_sections_csv(const std::string& path, const SectionDataset& ds) {
  std::string out = "ic_index,n,x,y\n";
  for (const OrbitRecord& rec : ds.orbits) {
    for (std::size_t n = 0; n < rec.points.size(); ++n) {
      out += std::to_string(rec.ic_index);
      out += ',';
      out += std::to_string(n + 1);
      out += ',';
      out += format_g17(rec.points[n].x);
      out += ',';
      out += format_g17(rec.points[n].y);
      out += '\n';
    }
  }
  write_text_file(path, out);
}

json sections_summary_json(const SectionDataset& ds) {
  json j;
  j["n_sections"] = ds.n_sections;
  j["fixed_point_found"] = ds.fixed_point_found;
  j["fixed_point"] = {format_g17(ds.fixed_point.x),
                      format_g17(ds.fixed_point.y)};
  json orbits = json::array();
  for (const OrbitRecord& rec : ds.orbits) {
    json o;
    o["ic_index"] = rec.ic_index;
    o["ic"] = {format_g17(rec.ic.x), format_g17(rec.ic.y)};
    o["label"] = to_string(rec.label);
    o["sections"] = rec.points.size();
    o["lyapunov"] = format_g17(rec.lyapunov);
    o["rotation"] = format_g17(rec.rotation);
    o["rotation_error"] = format_g17(rec.rotation_error);
    o["retried"] = rec.retried;
    orbits.push_back(o);
  }
  j["orbits"] = orbits;
  return j;
}

}  // namespace bohm
