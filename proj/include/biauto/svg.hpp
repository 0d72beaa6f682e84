#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "biauto/error.hpp"
#include "biauto/group.hpp"
#include "biauto/paths.hpp"

namespace biauto {

struct PlotSpec {
  std::vector<std::string> labels;  // legend entries, one per word
  std::vector<std::string> colors{"#1f77b4", "#ff7f0e", "#d62728"};
  double cell = 40.0;
  double margin = 1.0;        // in cells, around the bounding box
  double jitter = 0.06;       // fraction of a cell per revisit of a lattice point
  std::string title;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string escape_xml(std::string const& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace detail

// Lattice drawing of the paths of 1 to 3 words in Z². Each revisit of a
// lattice point within one path is shifted diagonally by spec.jitter cells.
inline std::string plot_svg(PlotSpec const& spec, GroupBackend const& g, std::vector<Word> const& words) {
  if (g.kind() != GroupKind::free_abelian || g.rank() != 2) {
    throw ValidationError("plot: only rank-2 free abelian backends can be drawn");
  }
  if (words.empty() || words.size() > spec.colors.size()) {
    throw ValidationError("plot: expected between 1 and " + std::to_string(spec.colors.size()) + " words");
  }
  std::vector<std::vector<std::pair<double, double>>> paths;
  std::int64_t minx = 0, maxx = 0, miny = 0, maxy = 0;
  for (Word const& w : words) {
    std::map<std::pair<std::int64_t, std::int64_t>, int> visits;
    std::vector<std::pair<double, double>> pts;
    HatPath path = path_of(g, w);
    for (auto const& p : path.points()) {
      std::int64_t x = p[0], y = p[1];
      minx = std::min(minx, x), maxx = std::max(maxx, x);
      miny = std::min(miny, y), maxy = std::max(maxy, y);
      int r = visits[{x, y}]++;
      double off = spec.jitter * r;
      pts.emplace_back(static_cast<double>(x) + off, static_cast<double>(y) + off);
    }
    paths.push_back(std::move(pts));
  }
  double c = spec.cell;
  double width = (static_cast<double>(maxx - minx) + 2 * spec.margin) * c;
  double grid_height = (static_cast<double>(maxy - miny) + 2 * spec.margin) * c;
  double legend_height = (static_cast<double>(words.size()) + 0.5) * 18.0;
  double height = grid_height + legend_height;
  auto px = [&](double x) { return (x - static_cast<double>(minx) + spec.margin) * c; };
  auto py = [&](double y) { return (static_cast<double>(maxy) - y + spec.margin) * c; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(width) + "\" height=\"" +
         detail::fmt(height) + "\" viewBox=\"0 0 " + detail::fmt(width) + " " + detail::fmt(height) + "\">\n";
  if (!spec.title.empty()) out += "<title>" + detail::escape_xml(spec.title) + "</title>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + detail::fmt(width) + "\" height=\"" + detail::fmt(height) +
         "\" fill=\"white\"/>\n<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (std::int64_t x = minx; x <= maxx; ++x) {
    out += "<line x1=\"" + detail::fmt(px(static_cast<double>(x))) + "\" y1=\"" + detail::fmt(py(static_cast<double>(maxy))) +
           "\" x2=\"" + detail::fmt(px(static_cast<double>(x))) + "\" y2=\"" + detail::fmt(py(static_cast<double>(miny))) + "\"/>\n";
  }
  for (std::int64_t y = miny; y <= maxy; ++y) {
    out += "<line x1=\"" + detail::fmt(px(static_cast<double>(minx))) + "\" y1=\"" + detail::fmt(py(static_cast<double>(y))) +
           "\" x2=\"" + detail::fmt(px(static_cast<double>(maxx))) + "\" y2=\"" + detail::fmt(py(static_cast<double>(y))) + "\"/>\n";
  }
  out += "</g>\n<circle cx=\"" + detail::fmt(px(0)) + "\" cy=\"" + detail::fmt(py(0)) + "\" r=\"3\" fill=\"black\"/>\n";
  for (std::size_t i = 0; i < paths.size(); ++i) {
    auto const& pts = paths[i];
    std::string const& color = spec.colors[i];
    if (pts.size() == 1) {
      out += "<circle class=\"path\" cx=\"" + detail::fmt(px(pts[0].first)) + "\" cy=\"" + detail::fmt(py(pts[0].second)) +
             "\" r=\"5\" fill=\"" + color + "\"/>\n";
      continue;
    }
    out += "<polyline class=\"path\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2.5\" points=\"";
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j) out += " ";
      out += detail::fmt(px(pts[j].first)) + "," + detail::fmt(py(pts[j].second));
    }
    out += "\"/>\n";
  }
  out += "<g font-family=\"monospace\" font-size=\"13\">\n";
  for (std::size_t i = 0; i < words.size(); ++i) {
    double y = grid_height + 18.0 * (static_cast<double>(i) + 1);
    std::string label = i < spec.labels.size() ? spec.labels[i] : g.alphabet().format(words[i]);
    if (label.empty()) label = "(empty word)";
    out += "<rect x=\"10.00\" y=\"" + detail::fmt(y - 10) + "\" width=\"12.00\" height=\"12.00\" fill=\"" +
           spec.colors[i] + "\"/>\n";
    out += "<text x=\"28.00\" y=\"" + detail::fmt(y) + "\">" + detail::escape_xml(label) + "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace biauto
