#pragma once

#include <optional>
#include <string>

#include "bohm/sections.hpp"
#include "bohm/wavefield.hpp"

namespace bohm {

struct SvgOptions {
  int width = 900;
  int height = 900;
  double point_radius = 1.2;
  std::string title;
  // Node-locus overlay: semi-axes and the rotation angle of the ellipse.
  std::optional<VortexEllipse> ellipse;
  double ellipse_rotation = 0.0;
};

// Deterministic scatter plot of a section dataset: equal-aspect axes, one
// fixed color per orbit label, optional node-ellipse overlay.  Throws
// std::invalid_argument when the dataset contains no points.
std::string render_svg_scatter(const SectionDataset& ds,
                               const SvgOptions& opt = {});

void write_svg_scatter(const std::string& path, const SectionDataset& ds,
                       const SvgOptions& opt = {});

}  // namespace bohm
