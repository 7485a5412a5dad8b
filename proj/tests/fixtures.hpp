#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "collage/diagram.hpp"
#include "collage/sig.hpp"

// Shared fixtures: the fixed test TwoGraph of the exhaustive interchange
// suite, and brute-force enumeration of small diagrams over it.

namespace fixtures {

// 2 zero-cells, 4 one-generators, 3 two-generators; h is degenerate 0-ary.
inline collage::TwoGraph test_two_graph() {
  collage::TwoGraph g;
  g.name = "testgraph";
  g.zero_cells = {"P", "Q"};
  g.one_generators = {{"a", "P", "P"}, {"w", "P", "P"}, {"b", "P", "Q"}, {"c", "Q", "Q"}};
  g.two_generators = {{"f", "P", {"a"}, "P", {"a"}},
                      {"g", "P", {"a", "a"}, "P", {"a"}},
                      {"h", "P", {}, "P", {}}};
  return g;
}

inline std::string zero_cell_at(const collage::TwoGraph& g, const collage::OneCellPath& p,
                                std::size_t pos) {
  std::string at = p.start;
  for (std::size_t i = 0; i < pos; ++i) at = g.one_gen(p.wires[i])->tgt;
  return at;
}

// All layers applicable to the given path.
inline std::vector<collage::Layer> applicable_layers(const collage::TwoGraph& g,
                                                     const collage::OneCellPath& p) {
  std::vector<collage::Layer> out;
  for (const auto& t : g.two_generators) {
    for (std::size_t o = 0; o + t.dom.size() <= p.wires.size(); ++o) {
      bool ok = true;
      for (std::size_t i = 0; i < t.dom.size(); ++i)
        if (p.wires[o + i] != t.dom[i]) ok = false;
      if (ok && t.dom.empty()) ok = zero_cell_at(g, p, o) == t.dom_start;
      if (!ok) continue;
      collage::Layer l;
      l.left.assign(p.wires.begin(), p.wires.begin() + o);
      l.gen = t.name;
      l.right.assign(p.wires.begin() + o + t.dom.size(), p.wires.end());
      out.push_back(std::move(l));
    }
  }
  return out;
}

// All composable paths with at most max_wires wires, from every zero-cell.
inline std::vector<collage::OneCellPath> all_paths(const collage::TwoGraph& g,
                                                   std::size_t max_wires) {
  std::vector<collage::OneCellPath> out;
  for (const auto& z : g.zero_cells) out.push_back({z, {}});
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_wires; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      std::string at = collage::path_end(g, out[i]);
      for (const auto& o : g.one_generators) {
        if (o.src != at) continue;
        collage::OneCellPath p = out[i];
        p.wires.push_back(o.name);
        out.push_back(std::move(p));
      }
    }
    begin = end;
  }
  return out;
}

// Every valid diagram with at most max_layers layers whose domain has at most
// max_wires wires.
inline std::vector<collage::SlicedDiagram> all_diagrams(const collage::TwoGraph& g,
                                                        std::size_t max_layers,
                                                        std::size_t max_wires) {
  std::vector<collage::SlicedDiagram> out;
  for (const auto& p : all_paths(g, max_wires)) {
    std::vector<collage::SlicedDiagram> frontier{collage::identity(p)};
    out.push_back(collage::identity(p));
    for (std::size_t n = 0; n < max_layers; ++n) {
      std::vector<collage::SlicedDiagram> next;
      for (const auto& d : frontier) {
        for (auto& l : applicable_layers(g, collage::codomain(g, d))) {
          collage::SlicedDiagram e = d;
          e.layers.push_back(std::move(l));
          next.push_back(e);
          out.push_back(std::move(e));
        }
      }
      frontier = std::move(next);
    }
  }
  return out;
}

inline std::string corpus_dir() {
  if (const char* env = std::getenv("COLLAGE_CORPUS_DIR")) return env;
  return "corpus";
}

}  // namespace fixtures
