#pragma once

#include <compare>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "collage/sig.hpp"

// 2-cells of the free 2-category on a TwoGraph in sliced form: one whiskered
// generator per layer. Exchange moves (adjacent transpositions on disjoint
// wire intervals) generate equality in the free case; normalize computes a
// canonical representative by greedy front selection.

namespace collage {

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OneCellPath {
  std::string start;
  std::vector<std::string> wires;

  friend bool operator==(const OneCellPath&, const OneCellPath&) = default;
  friend auto operator<=>(const OneCellPath&, const OneCellPath&) = default;
};

struct Layer {
  std::vector<std::string> left;
  std::string gen;
  std::vector<std::string> right;

  friend bool operator==(const Layer&, const Layer&) = default;
  friend auto operator<=>(const Layer&, const Layer&) = default;
};

struct SlicedDiagram {
  OneCellPath domain;
  std::vector<Layer> layers;

  friend bool operator==(const SlicedDiagram&, const SlicedDiagram&) = default;
  friend auto operator<=>(const SlicedDiagram&, const SlicedDiagram&) = default;
};

inline std::string path_end(const TwoGraph& g, const OneCellPath& p) {
  std::string at = p.start;
  for (const auto& w : p.wires) {
    const OneGen* o = g.one_gen(w);
    if (!o) throw DiagramError("unknown 1-generator " + w);
    if (o->src != at) throw DiagramError("wire " + w + " does not compose at " + at);
    at = o->tgt;
  }
  return at;
}

inline void assert_path(const TwoGraph& g, const OneCellPath& p) { (void)path_end(g, p); }

inline const TwoGen& require_gen(const TwoGraph& g, const std::string& name) {
  const TwoGen* t = g.two_gen(name);
  if (!t) throw DiagramError("unknown 2-generator " + name);
  return *t;
}

inline std::vector<std::string> layer_input(const TwoGraph& g, const Layer& l) {
  const TwoGen& t = require_gen(g, l.gen);
  std::vector<std::string> out = l.left;
  out.insert(out.end(), t.dom.begin(), t.dom.end());
  out.insert(out.end(), l.right.begin(), l.right.end());
  return out;
}

inline std::vector<std::string> layer_output(const TwoGraph& g, const Layer& l) {
  const TwoGen& t = require_gen(g, l.gen);
  std::vector<std::string> out = l.left;
  out.insert(out.end(), t.cod.begin(), t.cod.end());
  out.insert(out.end(), l.right.begin(), l.right.end());
  return out;
}

// Throws if the chain of layer boundaries is broken anywhere.
inline void assert_valid(const TwoGraph& g, const SlicedDiagram& d) {
  assert_path(g, d.domain);
  std::vector<std::string> at = d.domain.wires;
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    if (layer_input(g, d.layers[i]) != at)
      throw DiagramError("layer " + std::to_string(i) + " does not match the incoming path");
    at = layer_output(g, d.layers[i]);
  }
  // Re-walk as a path to make the whiskers composable too.
  OneCellPath p{d.domain.start, at};
  assert_path(g, p);
}

inline OneCellPath codomain(const TwoGraph& g, const SlicedDiagram& d) {
  if (d.layers.empty()) return d.domain;
  return OneCellPath{d.domain.start, layer_output(g, d.layers.back())};
}

inline SlicedDiagram identity(const OneCellPath& p) { return SlicedDiagram{p, {}}; }

inline SlicedDiagram compose_vertical(const TwoGraph& g, const SlicedDiagram& d1,
                                      const SlicedDiagram& d2) {
  if (codomain(g, d1) != d2.domain)
    throw DiagramError("vertical composition boundary mismatch");
  SlicedDiagram out{d1.domain, d1.layers};
  out.layers.insert(out.layers.end(), d2.layers.begin(), d2.layers.end());
  return out;
}

inline SlicedDiagram tensor_horizontal(const TwoGraph& g, const SlicedDiagram& d1,
                                       const SlicedDiagram& d2) {
  OneCellPath cod1 = codomain(g, d1);
  if (path_end(g, cod1) != d2.domain.start)
    throw DiagramError("horizontal composition zero-cell mismatch");
  SlicedDiagram out;
  out.domain.start = d1.domain.start;
  out.domain.wires = d1.domain.wires;
  out.domain.wires.insert(out.domain.wires.end(), d2.domain.wires.begin(), d2.domain.wires.end());
  for (Layer l : d1.layers) {
    l.right.insert(l.right.end(), d2.domain.wires.begin(), d2.domain.wires.end());
    out.layers.push_back(std::move(l));
  }
  for (Layer l : d2.layers) {
    std::vector<std::string> left = cod1.wires;
    left.insert(left.end(), l.left.begin(), l.left.end());
    l.left = std::move(left);
    out.layers.push_back(std::move(l));
  }
  return out;
}

namespace detail {

inline Layer relayer(const TwoGraph& g, const std::vector<std::string>& path, std::size_t offset,
                     const std::string& gen) {
  const TwoGen& t = require_gen(g, gen);
  Layer l;
  l.left.assign(path.begin(), path.begin() + offset);
  l.right.assign(path.begin() + offset + t.dom.size(), path.end());
  l.gen = gen;
  return l;
}

}  // namespace detail

// One exchange move: swap layers i and i+1 when they act on disjoint wire
// intervals of the intermediate path. Returns nothing when the move is
// blocked. Degenerate 0-ary generators occupy a zero-width interval at their
// offset and cannot exchange past anything at the same offset.
inline std::optional<SlicedDiagram> exchange_adjacent(const TwoGraph& g, const SlicedDiagram& d,
                                                      std::size_t i) {
  if (i + 1 >= d.layers.size()) return std::nullopt;
  const Layer& l1 = d.layers[i];
  const Layer& l2 = d.layers[i + 1];
  const TwoGen& g1 = require_gen(g, l1.gen);
  const TwoGen& g2 = require_gen(g, l2.gen);
  const std::size_t o1 = l1.left.size(), d1 = g1.dom.size(), c1 = g1.cod.size();
  const std::size_t o2 = l2.left.size(), d2 = g2.dom.size(), c2 = g2.cod.size();

  const bool zero1 = (d1 == 0 && c1 == 0);
  const bool zero2 = (d2 == 0 && c2 == 0);
  if (o1 == o2 && (zero1 || zero2)) return std::nullopt;

  const bool left_ok = o2 + d2 <= o1;   // l2 acts strictly left of l1's output
  const bool right_ok = o2 >= o1 + c1;  // l2 acts strictly right of it
  if (left_ok == right_ok) return std::nullopt;  // overlap, or ambiguous touch

  const std::vector<std::string> in = layer_input(g, l1);
  SlicedDiagram out = d;
  if (left_ok) {
    out.layers[i] = detail::relayer(g, in, o2, l2.gen);
    out.layers[i + 1] = detail::relayer(g, layer_output(g, out.layers[i]), o1 + c2 - d2, l1.gen);
  } else {
    out.layers[i] = detail::relayer(g, in, o2 - c1 + d1, l2.gen);
    out.layers[i + 1] = detail::relayer(g, layer_output(g, out.layers[i]), o1, l1.gen);
  }
  return out;
}

// All diagrams reachable from d by at most `depth` exchange moves.
inline std::set<SlicedDiagram> exchange_oracle(const TwoGraph& g, const SlicedDiagram& d,
                                               std::size_t depth) {
  std::set<SlicedDiagram> seen{d};
  std::deque<std::pair<SlicedDiagram, std::size_t>> queue{{d, 0}};
  while (!queue.empty()) {
    auto [cur, dist] = queue.front();
    queue.pop_front();
    if (dist == depth) continue;
    for (std::size_t i = 0; i + 1 < cur.layers.size(); ++i) {
      if (auto next = exchange_adjacent(g, cur, i)) {
        if (seen.insert(*next).second) queue.push_back({*next, dist + 1});
      }
    }
  }
  return seen;
}

// Canonical exchange normal form: repeatedly select, among the layers that can
// be bubbled to the front by exchange moves, the one with least (offset,
// generator name); emit it and recurse on the rest.
inline SlicedDiagram normalize(const TwoGraph& g, const SlicedDiagram& d) {
  SlicedDiagram rest = d;
  SlicedDiagram out{d.domain, {}};
  while (!rest.layers.empty()) {
    std::optional<std::pair<std::size_t, std::string>> best_key;
    SlicedDiagram best;
    for (std::size_t k = 0; k < rest.layers.size(); ++k) {
      // Bubble layer k to the front of a working copy, if possible.
      SlicedDiagram work = rest;
      bool ok = true;
      for (std::size_t pos = k; pos > 0; --pos) {
        auto next = exchange_adjacent(g, work, pos - 1);
        if (!next) {
          ok = false;
          break;
        }
        work = std::move(*next);
      }
      if (!ok) continue;
      std::pair<std::size_t, std::string> key{work.layers[0].left.size(), work.layers[0].gen};
      if (!best_key || key < *best_key) {
        best_key = key;
        best = std::move(work);
      }
    }
    // The in-place layer (k = 0) always bubbles trivially, so best_key is set.
    out.layers.push_back(best.layers.front());
    rest.domain.wires = layer_output(g, best.layers.front());
    rest.layers.assign(best.layers.begin() + 1, best.layers.end());
  }
  return out;
}

inline bool eq_free(const TwoGraph& g, const SlicedDiagram& d1, const SlicedDiagram& d2) {
  return normalize(g, d1) == normalize(g, d2);
}

inline nlohmann::json to_json(const SlicedDiagram& d) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : d.layers)
    layers.push_back({{"left", l.left}, {"gen", l.gen}, {"right", l.right}});
  return {{"start", d.domain.start}, {"domain", d.domain.wires}, {"layers", layers}};
}

inline SlicedDiagram diagram_from_json(const nlohmann::json& j) {
  SlicedDiagram d;
  d.domain.start = j.at("start").get<std::string>();
  d.domain.wires = j.at("domain").get<std::vector<std::string>>();
  for (const auto& l : j.at("layers")) {
    d.layers.push_back(Layer{l.at("left").get<std::vector<std::string>>(),
                             l.at("gen").get<std::string>(),
                             l.at("right").get<std::vector<std::string>>()});
  }
  return d;
}

}  // namespace collage
