#include "bohm/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bohm {

namespace {

const char* label_color(OrbitLabel label) {
  switch (label) {
    case OrbitLabel::regular: return "#1f77b4";
    case OrbitLabel::island_chain: return "#2ca02c";
    case OrbitLabel::chaotic: return "#d62728";
    case OrbitLabel::periodic: return "#9467bd";
    case OrbitLabel::unresolved: return "#7f7f7f";
    case OrbitLabel::aborted: return "#8c564b";
  }
  return "#000000";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg_scatter(const SectionDataset& ds,
                               const SvgOptions& opt) {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool any = false;
  for (const OrbitRecord& rec : ds.orbits)
    for (Vec2 p : rec.points) {
      if (!any) {
        xmin = xmax = p.x;
        ymin = ymax = p.y;
        any = true;
      } else {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
      }
    }
  if (!any)
    throw std::invalid_argument("render_svg_scatter: dataset has no points");
  if (opt.ellipse) {
    double ext = std::max(opt.ellipse->a, opt.ellipse->b);
    xmin = std::min(xmin, -ext);
    xmax = std::max(xmax, ext);
    ymin = std::min(ymin, -ext);
    ymax = std::max(ymax, ext);
  }

  const double margin = 30.0;
  double spanx = std::max(xmax - xmin, 1e-9);
  double spany = std::max(ymax - ymin, 1e-9);
  double scale = std::min((opt.width - 2.0 * margin) / spanx,
                          (opt.height - 2.0 * margin) / spany);
  double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  auto sx = [&](double x) { return 0.5 * opt.width + (x - cx) * scale; };
  auto sy = [&](double y) { return 0.5 * opt.height - (y - cy) * scale; };

  std::string out;
  out.reserve(1 << 16);
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
  out += std::to_string(opt.width);
  out += "\" height=\"";
  out += std::to_string(opt.height);
  out += "\" viewBox=\"0 0 " + std::to_string(opt.width) + " " +
         std::to_string(opt.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  if (!opt.title.empty()) {
    out += "<text x=\"" + fmt(0.5 * opt.width) +
           "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">" +
           opt.title + "</text>\n";
  }
  if (opt.ellipse) {
    double deg = opt.ellipse_rotation * 180.0 / pi;
    out += "<ellipse cx=\"0\" cy=\"0\" rx=\"" + fmt(opt.ellipse->a * scale) +
           "\" ry=\"" + fmt(opt.ellipse->b * scale) +
           "\" fill=\"none\" stroke=\"#ff7f0e\" stroke-width=\"1.2\" "
           "stroke-dasharray=\"5 3\" transform=\"translate(" +
           fmt(sx(0.0)) + " " + fmt(sy(0.0)) + ") rotate(" + fmt(-deg) +
           ")\"/>\n";
  }
  for (const OrbitRecord& rec : ds.orbits) {
    if (rec.points.empty()) continue;
    out += "<g fill=\"";
    out += label_color(rec.label);
    out += "\" fill-opacity=\"0.75\">\n";
    for (Vec2 p : rec.points) {
      out += "<circle cx=\"" + fmt(sx(p.x)) + "\" cy=\"" + fmt(sy(p.y)) +
             "\" r=\"" + fmt(opt.point_radius) + "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

void write_svg_scatter(const std::string& path, const SectionDataset& ds,
                       const SvgOptions& opt) {
  std::string doc = render_svg_scatter(ds, opt);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_svg_scatter: cannot open " + path);
  f << doc;
}

}  // namespace bohm
