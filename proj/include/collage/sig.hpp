#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

// Signature types: polygraphs, 2-graphs, bimodular graphs and functor box
// signatures, together with structural validation.

namespace collage {

// A generating edge between two lists of objects.
struct Edge {
  std::string name;
  std::vector<std::string> dom;
  std::vector<std::string> cod;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Signature for the string diagrams of a monoidal category.
struct Polygraph {
  std::string name;
  std::vector<std::string> objects;
  std::vector<Edge> edges;

  friend bool operator==(const Polygraph&, const Polygraph&) = default;
};

struct OneGen {
  std::string name;
  std::string src;  // zero-cell
  std::string tgt;  // zero-cell

  friend bool operator==(const OneGen&, const OneGen&) = default;
};

// A 2-generator between two composable 1-generator paths. The anchor
// zero-cells make the empty path unambiguous.
struct TwoGen {
  std::string name;
  std::string dom_start;
  std::vector<std::string> dom;
  std::string cod_start;
  std::vector<std::string> cod;

  friend bool operator==(const TwoGen&, const TwoGen&) = default;
};

struct TwoGraph {
  std::string name;
  std::vector<std::string> zero_cells;
  std::vector<OneGen> one_generators;
  std::vector<TwoGen> two_generators;

  const OneGen* one_gen(std::string_view n) const {
    for (const auto& g : one_generators)
      if (g.name == n) return &g;
    return nullptr;
  }
  const TwoGen* two_gen(std::string_view n) const {
    for (const auto& g : two_generators)
      if (g.name == n) return &g;
    return nullptr;
  }
  bool has_zero_cell(std::string_view n) const {
    return std::find(zero_cells.begin(), zero_cells.end(), n) != zero_cells.end();
  }

  friend bool operator==(const TwoGraph&, const TwoGraph&) = default;
};

// Bimodular graph: left edges live in the left-acting region, right edges in
// the right-acting one, and central edges carry exactly one central wire on
// each side.
struct BimodularGraph {
  std::string name;
  std::vector<std::string> left_objects;
  std::vector<std::string> right_objects;
  std::vector<std::string> center_objects;
  std::vector<Edge> left_edges;
  std::vector<Edge> right_edges;
  std::vector<Edge> central_edges;

  bool is_left(std::string_view n) const {
    return std::find(left_objects.begin(), left_objects.end(), n) != left_objects.end();
  }
  bool is_right(std::string_view n) const {
    return std::find(right_objects.begin(), right_objects.end(), n) != right_objects.end();
  }
  bool is_center(std::string_view n) const {
    return std::find(center_objects.begin(), center_objects.end(), n) != center_objects.end();
  }

  friend bool operator==(const BimodularGraph&, const BimodularGraph&) = default;
};

// Functor box signature: plain, box, in-box and out-box edge families.
struct FunctorBoxSignature {
  std::string name;
  std::vector<std::string> plain_objects;
  std::vector<std::string> box_objects;
  std::vector<Edge> plain_edges;
  std::vector<Edge> box_edges;
  std::vector<Edge> in_box_edges;
  std::vector<Edge> out_box_edges;

  bool is_plain(std::string_view n) const {
    return std::find(plain_objects.begin(), plain_objects.end(), n) != plain_objects.end();
  }
  bool is_box(std::string_view n) const {
    return std::find(box_objects.begin(), box_objects.end(), n) != box_objects.end();
  }

  friend bool operator==(const FunctorBoxSignature&, const FunctorBoxSignature&) = default;
};

// A validation finding: which invariant was violated, on which item.
struct Diagnostic {
  std::string invariant;
  std::string item;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
  friend auto operator<=>(const Diagnostic&, const Diagnostic&) = default;
};

namespace detail {

inline void check_unique(std::vector<std::string> names, const std::string& what,
                         std::vector<Diagnostic>& out) {
  std::sort(names.begin(), names.end());
  for (std::size_t i = 1; i < names.size(); ++i)
    if (names[i] == names[i - 1])
      out.push_back({"unique names", names[i], what + " name declared twice: " + names[i]});
}

inline void check_declared(const std::vector<std::string>& boundary,
                           const std::set<std::string>& declared, const std::string& item,
                           std::vector<Diagnostic>& out) {
  for (const auto& o : boundary)
    if (!declared.count(o))
      out.push_back({"declared objects", item, "edge " + item + " references undeclared object " + o});
}

inline void finish(std::vector<Diagnostic>& out) { std::sort(out.begin(), out.end()); }

}  // namespace detail

inline std::vector<Diagnostic> validate(const Polygraph& p) {
  std::vector<Diagnostic> out;
  std::set<std::string> objs(p.objects.begin(), p.objects.end());
  std::vector<std::string> names;
  for (const auto& e : p.edges) {
    names.push_back(e.name);
    detail::check_declared(e.dom, objs, e.name, out);
    detail::check_declared(e.cod, objs, e.name, out);
  }
  detail::check_unique(std::move(names), "edge", out);
  detail::check_unique(p.objects, "object", out);
  detail::finish(out);
  return out;
}

inline std::vector<Diagnostic> validate(const TwoGraph& g) {
  std::vector<Diagnostic> out;
  std::set<std::string> cells(g.zero_cells.begin(), g.zero_cells.end());
  detail::check_unique(g.zero_cells, "zero-cell", out);
  std::vector<std::string> onames;
  for (const auto& o : g.one_generators) {
    onames.push_back(o.name);
    if (!cells.count(o.src))
      out.push_back({"declared objects", o.name, "unknown source zero-cell " + o.src});
    if (!cells.count(o.tgt))
      out.push_back({"declared objects", o.name, "unknown target zero-cell " + o.tgt});
  }
  detail::check_unique(std::move(onames), "1-generator", out);

  // A path is composable iff each wire starts where the previous one ended.
  auto path_end = [&](const std::string& start, const std::vector<std::string>& wires,
                      const std::string& item) -> std::optional<std::string> {
    std::string at = start;
    for (const auto& w : wires) {
      const OneGen* o = g.one_gen(w);
      if (!o) {
        out.push_back({"declared objects", item, "unknown 1-generator " + w});
        return std::nullopt;
      }
      if (o->src != at) {
        out.push_back({"composable path", item, "wire " + w + " does not compose at " + at});
        return std::nullopt;
      }
      at = o->tgt;
    }
    return at;
  };

  std::vector<std::string> tnames;
  for (const auto& t : g.two_generators) {
    tnames.push_back(t.name);
    if (t.dom_start != t.cod_start)
      out.push_back({"shared endpoints", t.name, "domain and codomain start at different zero-cells"});
    auto de = path_end(t.dom_start, t.dom, t.name);
    auto ce = path_end(t.cod_start, t.cod, t.name);
    if (de && ce && *de != *ce)
      out.push_back({"shared endpoints", t.name, "domain ends at " + *de + ", codomain at " + *ce});
  }
  detail::check_unique(std::move(tnames), "2-generator", out);
  detail::finish(out);
  return out;
}

inline std::vector<Diagnostic> validate(const BimodularGraph& g) {
  std::vector<Diagnostic> out;
  std::set<std::string> left(g.left_objects.begin(), g.left_objects.end());
  std::set<std::string> right(g.right_objects.begin(), g.right_objects.end());
  std::set<std::string> center(g.center_objects.begin(), g.center_objects.end());

  // Object names double as 1-generators of the collage, so they must be
  // globally unique across the three families.
  std::vector<std::string> all_objs = g.left_objects;
  all_objs.insert(all_objs.end(), g.right_objects.begin(), g.right_objects.end());
  all_objs.insert(all_objs.end(), g.center_objects.begin(), g.center_objects.end());
  detail::check_unique(std::move(all_objs), "object", out);

  std::vector<std::string> enames;
  for (const auto& e : g.left_edges) {
    enames.push_back(e.name);
    detail::check_declared(e.dom, left, e.name, out);
    detail::check_declared(e.cod, left, e.name, out);
  }
  for (const auto& e : g.right_edges) {
    enames.push_back(e.name);
    detail::check_declared(e.dom, right, e.name, out);
    detail::check_declared(e.cod, right, e.name, out);
  }

  auto check_central_boundary = [&](const Edge& e, const std::vector<std::string>& b,
                                    const char* side) {
    int centers = 0;
    bool seen_center = false;
    bool shape_ok = true;
    for (const auto& o : b) {
      if (center.count(o)) {
        ++centers;
        seen_center = true;
      } else if (left.count(o)) {
        if (seen_center) shape_ok = false;  // left object right of the central wire
      } else if (right.count(o)) {
        if (!seen_center) shape_ok = false;
      } else {
        out.push_back({"declared objects", e.name,
                       std::string("edge ") + e.name + " references undeclared object " + o});
      }
    }
    if (centers != 1)
      out.push_back({"central wire multiplicity", e.name,
                     std::string("central edge ") + e.name + " has " + std::to_string(centers) +
                         " central objects in its " + side});
    else if (!shape_ok)
      out.push_back({"central wire shape", e.name,
                     std::string("central edge ") + e.name + " mixes left and right objects across the central wire in its " + side});
  };
  for (const auto& e : g.central_edges) {
    enames.push_back(e.name);
    check_central_boundary(e, e.dom, "domain");
    check_central_boundary(e, e.cod, "codomain");
  }
  detail::check_unique(std::move(enames), "edge", out);
  detail::finish(out);
  return out;
}

inline std::vector<Diagnostic> validate(const FunctorBoxSignature& s) {
  std::vector<Diagnostic> out;
  std::set<std::string> plain(s.plain_objects.begin(), s.plain_objects.end());
  std::set<std::string> box(s.box_objects.begin(), s.box_objects.end());

  std::vector<std::string> all_objs = s.plain_objects;
  all_objs.insert(all_objs.end(), s.box_objects.begin(), s.box_objects.end());
  detail::check_unique(std::move(all_objs), "object", out);

  auto family = [&](const std::vector<Edge>& edges, const std::set<std::string>& dom_in,
                    const char* dom_kind, const std::set<std::string>& cod_in,
                    const char* cod_kind) {
    std::vector<std::string> names;
    for (const auto& e : edges) {
      names.push_back(e.name);
      for (const auto& o : e.dom)
        if (!dom_in.count(o))
          out.push_back({"edge family boundary", e.name,
                         "edge " + e.name + " expects " + dom_kind + " objects in its domain, found " + o});
      for (const auto& o : e.cod)
        if (!cod_in.count(o))
          out.push_back({"edge family boundary", e.name,
                         "edge " + e.name + " expects " + cod_kind + " objects in its codomain, found " + o});
    }
    detail::check_unique(std::move(names), "edge", out);
  };
  family(s.plain_edges, plain, "plain", plain, "plain");
  family(s.box_edges, box, "box", box, "box");
  family(s.in_box_edges, plain, "plain", box, "box");
  family(s.out_box_edges, box, "box", plain, "plain");
  detail::finish(out);
  return out;
}

}  // namespace collage
