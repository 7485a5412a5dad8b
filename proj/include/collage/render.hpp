#pragma once

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "collage/diagram.hpp"
#include "collage/sig.hpp"

// Deterministic renders of sliced diagrams: one row per layer, wires as
// vertical tracks, regions colored by 0-cell. Output is byte-for-byte stable
// for a given graph, diagram and format.

namespace collage {

struct RenderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

constexpr int kColW = 40;   // horizontal distance between wire tracks
constexpr int kRowH = 60;   // height of a layer row
constexpr int kBandH = 20;  // top/bottom boundary bands

// The first 0-cell region stays white; later ones cycle a light palette.
inline std::string region_color(const TwoGraph& g, const std::string& cell) {
  static const char* palette[] = {"#ffffff", "#dce9f9", "#f9e4dc",
                                  "#dcf9e0", "#f6f2d8", "#ecdcf9"};
  for (std::size_t k = 0; k < g.zero_cells.size(); ++k)
    if (g.zero_cells[k] == cell) return palette[k % 6];
  return "#eeeeee";
}

// 0-cells of the regions around a wire list: regions[0] is left of wire 0.
inline std::vector<std::string> regions_of(const TwoGraph& g, const std::string& start,
                                           const std::vector<std::string>& wires) {
  std::vector<std::string> out{start};
  std::string at = start;
  for (const auto& w : wires) {
    const OneGen* o = g.one_gen(w);
    if (!o) throw RenderError("unknown 1-generator " + w);
    at = o->tgt;
    out.push_back(at);
  }
  return out;
}

inline int wire_x(std::size_t j) { return kColW + static_cast<int>(j) * kColW; }

struct Layout {
  std::vector<std::vector<std::string>> boundaries;  // layers + 1 wire lists
  std::size_t max_wires = 0;
  int width = 0, height = 0;

  Layout(const TwoGraph& g, const SlicedDiagram& d) {
    assert_valid(g, d);
    boundaries.push_back(d.domain.wires);
    for (const auto& l : d.layers) boundaries.push_back(layer_output(g, l));
    for (const auto& b : boundaries) max_wires = std::max(max_wires, b.size());
    width = kColW * (static_cast<int>(max_wires) + 1);
    height = 2 * kBandH + kRowH * static_cast<int>(std::max<std::size_t>(1, d.layers.size()));
  }
};

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

// Emit the colored background bands of one horizontal strip.
inline void svg_regions(std::ostringstream& os, const TwoGraph& g, const std::string& start,
                        const std::vector<std::string>& wires, int y0, int h, int width) {
  std::vector<std::string> regs = regions_of(g, start, wires);
  for (std::size_t k = 0; k < regs.size(); ++k) {
    int x0 = k == 0 ? 0 : wire_x(k - 1);
    int x1 = k == wires.size() ? width : wire_x(k);
    os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << x1 - x0 << "\" height=\""
       << h << "\" fill=\"" << region_color(g, regs[k]) << "\" stroke=\"none\"/>\n";
  }
}

}  // namespace detail

inline std::string render_svg(const TwoGraph& g, const SlicedDiagram& d) {
  using namespace detail;
  Layout lay(g, d);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << lay.width << "\" height=\""
     << lay.height << "\" viewBox=\"0 0 " << lay.width << " " << lay.height << "\">\n";

  // Background regions: boundary bands plus one strip per layer row. Rows
  // show the input regions in the top half and the output regions below.
  svg_regions(os, g, d.domain.start, lay.boundaries.front(), 0, kBandH, lay.width);
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    int y0 = kBandH + static_cast<int>(i) * kRowH;
    svg_regions(os, g, d.domain.start, lay.boundaries[i], y0, kRowH / 2, lay.width);
    svg_regions(os, g, d.domain.start, lay.boundaries[i + 1], y0 + kRowH / 2, kRowH / 2,
                lay.width);
  }
  if (d.layers.empty())
    svg_regions(os, g, d.domain.start, lay.boundaries.front(), kBandH, kRowH, lay.width);
  svg_regions(os, g, d.domain.start, lay.boundaries.back(), lay.height - kBandH, kBandH,
              lay.width);

  // Wires. Boundary bands have straight stubs; rows route whiskers with a
  // diagonal jog when the generator changes the wire count.
  for (std::size_t j = 0; j < lay.boundaries.front().size(); ++j)
    os << "<line x1=\"" << wire_x(j) << "\" y1=\"0\" x2=\"" << wire_x(j) << "\" y2=\"" << kBandH
       << "\" stroke=\"black\"/>\n";
  for (std::size_t j = 0; j < lay.boundaries.back().size(); ++j)
    os << "<line x1=\"" << wire_x(j) << "\" y1=\"" << lay.height - kBandH << "\" x2=\""
       << wire_x(j) << "\" y2=\"" << lay.height << "\" stroke=\"black\"/>\n";
  if (d.layers.empty())
    for (std::size_t j = 0; j < lay.boundaries.front().size(); ++j)
      os << "<line x1=\"" << wire_x(j) << "\" y1=\"" << kBandH << "\" x2=\"" << wire_x(j)
         << "\" y2=\"" << kBandH + kRowH << "\" stroke=\"black\"/>\n";

  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    const Layer& l = d.layers[i];
    const TwoGen& t = require_gen(g, l.gen);
    int y0 = kBandH + static_cast<int>(i) * kRowH;
    int ymid = y0 + kRowH / 2;
    std::size_t nl = l.left.size();
    // Left whiskers keep their track; dom wires sink into the box; cod wires
    // rise out of it; right whiskers jog by the dom/cod width difference.
    for (std::size_t j = 0; j < nl; ++j)
      os << "<line x1=\"" << wire_x(j) << "\" y1=\"" << y0 << "\" x2=\"" << wire_x(j)
         << "\" y2=\"" << y0 + kRowH << "\" stroke=\"black\"/>\n";
    for (std::size_t j = 0; j < t.dom.size(); ++j)
      os << "<line x1=\"" << wire_x(nl + j) << "\" y1=\"" << y0 << "\" x2=\"" << wire_x(nl + j)
         << "\" y2=\"" << ymid - 10 << "\" stroke=\"black\"/>\n";
    for (std::size_t j = 0; j < t.cod.size(); ++j)
      os << "<line x1=\"" << wire_x(nl + j) << "\" y1=\"" << ymid + 10 << "\" x2=\""
         << wire_x(nl + j) << "\" y2=\"" << y0 + kRowH << "\" stroke=\"black\"/>\n";
    for (std::size_t j = 0; j < l.right.size(); ++j) {
      int xin = wire_x(nl + t.dom.size() + j);
      int xout = wire_x(nl + t.cod.size() + j);
      os << "<path d=\"M " << xin << " " << y0 << " L " << xin << " " << y0 + 15 << " L " << xout
         << " " << y0 + kRowH - 15 << " L " << xout << " " << y0 + kRowH
         << "\" fill=\"none\" stroke=\"black\"/>\n";
    }
    // The generator box spans its widest boundary, or a stub when both are
    // empty (e.g. a unit cell).
    std::size_t span = std::max<std::size_t>(std::max(t.dom.size(), t.cod.size()), 1);
    int bx0 = wire_x(nl) - 15;
    int bx1 = wire_x(nl + span - 1) + 15;
    os << "<rect x=\"" << bx0 << "\" y=\"" << ymid - 10 << "\" width=\"" << bx1 - bx0
       << "\" height=\"20\" fill=\"white\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (bx0 + bx1) / 2 << "\" y=\"" << ymid + 4
       << "\" text-anchor=\"middle\" font-size=\"10\" font-family=\"monospace\">"
       << xml_escape(l.gen) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// Structural render: one node per layer, ports for boundary wires; edge
// labels carry the 1-generator names.
inline std::string render_dot(const TwoGraph& g, const SlicedDiagram& d) {
  assert_valid(g, d);
  std::ostringstream os;
  os << "digraph diagram {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n";
  std::vector<std::string> producer;
  for (std::size_t j = 0; j < d.domain.wires.size(); ++j) {
    std::string n = "in" + std::to_string(j);
    os << "  " << n << " [shape=point, xlabel=\"" << d.domain.wires[j] << "\"];\n";
    producer.push_back(n);
  }
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    const Layer& l = d.layers[i];
    const TwoGen& t = require_gen(g, l.gen);
    std::string n = "g" + std::to_string(i);
    os << "  " << n << " [label=\"" << l.gen << "\"];\n";
    std::size_t nl = l.left.size();
    for (std::size_t j = 0; j < t.dom.size(); ++j)
      os << "  " << producer[nl + j] << " -> " << n << " [label=\"" << t.dom[j] << "\"];\n";
    std::vector<std::string> next(producer.begin(), producer.begin() + nl);
    for (std::size_t j = 0; j < t.cod.size(); ++j) next.push_back(n);
    next.insert(next.end(), producer.begin() + nl + t.dom.size(), producer.end());
    producer = std::move(next);
  }
  std::vector<std::string> cod =
      d.layers.empty() ? d.domain.wires : layer_output(g, d.layers.back());
  for (std::size_t j = 0; j < cod.size(); ++j) {
    std::string n = "out" + std::to_string(j);
    os << "  " << n << " [shape=point, xlabel=\"" << cod[j] << "\"];\n";
    os << "  " << producer[j] << " -> " << n << " [label=\"" << cod[j] << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string render_tikz(const TwoGraph& g, const SlicedDiagram& d) {
  using namespace detail;
  Layout lay(g, d);
  // TikZ y grows upward; emit everything in a y-flipped frame so the rows
  // read top to bottom like the SVG.
  auto pt = [&](int x, int y) {
    std::ostringstream c;
    c << "(" << x / 10.0 << "," << (lay.height - y) / 10.0 << ")";
    return c.str();
  };
  std::ostringstream os;
  os << "\\begin{tikzpicture}[x=2.5mm,y=2.5mm]\n";
  for (std::size_t k = 0; k < g.zero_cells.size(); ++k) {
    std::string hex = region_color(g, g.zero_cells[k]).substr(1);
    os << "\\definecolor{region" << k << "}{HTML}{";
    for (char c : hex) os << static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    os << "}\n";
  }
  auto fill_of = [&](const std::string& cell) {
    for (std::size_t k = 0; k < g.zero_cells.size(); ++k)
      if (g.zero_cells[k] == cell) return "region" + std::to_string(k);
    return std::string("white");
  };
  auto regions = [&](const std::string& start, const std::vector<std::string>& wires, int y0,
                     int h) {
    std::vector<std::string> regs = regions_of(g, start, wires);
    for (std::size_t k = 0; k < regs.size(); ++k) {
      int x0 = k == 0 ? 0 : wire_x(k - 1);
      int x1 = k == wires.size() ? lay.width : wire_x(k);
      os << "\\fill[" << fill_of(regs[k]) << "] " << pt(x0, y0) << " rectangle "
         << pt(x1, y0 + h) << ";\n";
    }
  };
  regions(d.domain.start, lay.boundaries.front(), 0, kBandH);
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    int y0 = kBandH + static_cast<int>(i) * kRowH;
    regions(d.domain.start, lay.boundaries[i], y0, kRowH / 2);
    regions(d.domain.start, lay.boundaries[i + 1], y0 + kRowH / 2, kRowH / 2);
  }
  if (d.layers.empty()) regions(d.domain.start, lay.boundaries.front(), kBandH, kRowH);
  regions(d.domain.start, lay.boundaries.back(), lay.height - kBandH, kBandH);

  auto wire = [&](int x1, int y1, int x2, int y2) {
    os << "\\draw " << pt(x1, y1) << " -- " << pt(x2, y2) << ";\n";
  };
  for (std::size_t j = 0; j < lay.boundaries.front().size(); ++j)
    wire(wire_x(j), 0, wire_x(j), kBandH);
  for (std::size_t j = 0; j < lay.boundaries.back().size(); ++j)
    wire(wire_x(j), lay.height - kBandH, wire_x(j), lay.height);
  if (d.layers.empty())
    for (std::size_t j = 0; j < lay.boundaries.front().size(); ++j)
      wire(wire_x(j), kBandH, wire_x(j), kBandH + kRowH);
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    const Layer& l = d.layers[i];
    const TwoGen& t = require_gen(g, l.gen);
    int y0 = kBandH + static_cast<int>(i) * kRowH;
    int ymid = y0 + kRowH / 2;
    std::size_t nl = l.left.size();
    for (std::size_t j = 0; j < nl; ++j) wire(wire_x(j), y0, wire_x(j), y0 + kRowH);
    for (std::size_t j = 0; j < t.dom.size(); ++j)
      wire(wire_x(nl + j), y0, wire_x(nl + j), ymid - 10);
    for (std::size_t j = 0; j < t.cod.size(); ++j)
      wire(wire_x(nl + j), ymid + 10, wire_x(nl + j), y0 + kRowH);
    for (std::size_t j = 0; j < l.right.size(); ++j) {
      int xin = wire_x(nl + t.dom.size() + j);
      int xout = wire_x(nl + t.cod.size() + j);
      os << "\\draw " << pt(xin, y0) << " -- " << pt(xin, y0 + 15) << " -- "
         << pt(xout, y0 + kRowH - 15) << " -- " << pt(xout, y0 + kRowH) << ";\n";
    }
    std::size_t span = std::max<std::size_t>(std::max(t.dom.size(), t.cod.size()), 1);
    int bx0 = wire_x(nl) - 15;
    int bx1 = wire_x(nl + span - 1) + 15;
    os << "\\filldraw[fill=white,draw=black] " << pt(bx0, ymid - 10) << " rectangle "
       << pt(bx1, ymid + 10) << ";\n";
    os << "\\node[font=\\ttfamily\\scriptsize] at " << pt((bx0 + bx1) / 2, ymid) << " {"
       << l.gen << "};\n";
  }
  os << "\\end{tikzpicture}\n";
  return os.str();
}

inline std::string render_diagram(const TwoGraph& g, const SlicedDiagram& d,
                                  const std::string& format) {
  if (format == "svg") return render_svg(g, d);
  if (format == "dot") return render_dot(g, d);
  if (format == "tikz") return render_tikz(g, d);
  throw RenderError("unknown render format '" + format + "'");
}

}  // namespace collage
