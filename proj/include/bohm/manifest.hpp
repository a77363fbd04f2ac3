#pragma once

#include <string>

#include <json.hpp>

#include "bohm/integrator.hpp"
#include "bohm/sections.hpp"

namespace bohm {

using json = nlohmann::ordered_json;

// Record of one CLI run: everything needed to reproduce its outputs
// byte for byte (the timestamp is carried over on reproduction).
struct RunManifest {
  std::string tool = "bohmtraj";
  std::string version;
  std::string command;
  json args = json::object();
  std::string timestamp;  // ISO 8601 UTC
  unsigned threads = 0;
};

json to_json(const RunManifest& m);
RunManifest manifest_from_json(const json& j);

void save_manifest(const std::string& path, const RunManifest& m);
RunManifest load_manifest(const std::string& path);

std::string iso_utc_now();

// Data writers.  All floating point values are printed with %.17g so that
// a reproduced run is byte-identical.
void write_trajectory_csv(const std::string& path, const Trajectory& tr);
void write_sections_csv(const std::string& path, const SectionDataset& ds);
json sections_summary_json(const SectionDataset& ds);
void write_text_file(const std::string& path, const std::string& content);

std::string format_g17(double v);
std::string format_g15(double v);

}  // namespace bohm
