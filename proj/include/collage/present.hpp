#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "collage/diagram.hpp"
#include "collage/rewrite.hpp"
#include "collage/sig.hpp"

// The three syntactic presentations: the collage of a bimodular graph, the
// functor-box 2-category, and the internal-diagram presentation, plus the
// central typing discipline and bounded hom-enumeration.

namespace collage {

struct BipointedTwoGraph {
  TwoGraph graph;
  std::string pointM;
  std::string pointN;
};

// The collage has two 0-cells M and N; objects become 1-generators (center
// objects crossing from M to N) and edges become 2-generators. There is no
// 1-generator from N to M.
inline BipointedTwoGraph collage_of(const BimodularGraph& g) {
  BipointedTwoGraph out;
  out.pointM = "M";
  out.pointN = "N";
  out.graph.name = g.name.empty() ? "collage" : "collage(" + g.name + ")";
  out.graph.zero_cells = {"M", "N"};
  for (const auto& o : g.left_objects) out.graph.one_generators.push_back({o, "M", "M"});
  for (const auto& o : g.center_objects) out.graph.one_generators.push_back({o, "M", "N"});
  for (const auto& o : g.right_objects) out.graph.one_generators.push_back({o, "N", "N"});
  for (const auto& e : g.left_edges)
    out.graph.two_generators.push_back({e.name, "M", e.dom, "M", e.cod});
  for (const auto& e : g.right_edges)
    out.graph.two_generators.push_back({e.name, "N", e.dom, "N", e.cod});
  for (const auto& e : g.central_edges)
    out.graph.two_generators.push_back({e.name, "M", e.dom, "M", e.cod});
  return out;
}

struct CentralFactor {
  std::vector<std::string> left;  // M-wires
  std::string central;
  std::vector<std::string> right;  // N-wires

  friend bool operator==(const CentralFactor&, const CentralFactor&) = default;
};

struct CentralTyping {
  CentralFactor domain;
  CentralFactor codomain;
};

struct CentralTypingError : DiagramError {
  using DiagramError::DiagramError;
};

inline CentralFactor factor_central(const std::vector<std::string>& wires,
                                    const BimodularGraph& g) {
  CentralFactor f;
  bool seen = false;
  for (const auto& w : wires) {
    if (g.is_center(w)) {
      if (seen) throw CentralTypingError("more than one central wire: " + f.central + ", " + w);
      f.central = w;
      seen = true;
    } else if (g.is_left(w)) {
      if (seen) throw CentralTypingError("ill-typed: M-wire " + w + " right of the central wire");
      f.left.push_back(w);
    } else if (g.is_right(w)) {
      if (!seen) throw CentralTypingError("ill-typed: N-wire " + w + " left of the central wire");
      f.right.push_back(w);
    } else {
      throw CentralTypingError("unknown object " + w);
    }
  }
  if (!seen) throw CentralTypingError("no central wire");
  return f;
}

// Central typing of a diagram over collage_of(g): every intermediate path
// must factor as (M-wires, one central wire, N-wires).
inline CentralTyping typecheck_central(const TwoGraph& coll, const SlicedDiagram& d,
                                       const BimodularGraph& g) {
  assert_valid(coll, d);
  CentralTyping t;
  t.domain = factor_central(d.domain.wires, g);
  std::vector<std::string> path = d.domain.wires;
  for (const auto& l : d.layers) {
    path = layer_output(coll, l);
    t.codomain = factor_central(path, g);
  }
  if (d.layers.empty()) t.codomain = t.domain;
  return t;
}

struct FunctorBoxPresentation {
  TwoGraph graph;  // 0-cells A (plain region) and X (box region)
  AdjointPair pair;
  EquationSet equations;  // the two snake equations
};

inline FunctorBoxPresentation syn_functor_box(const FunctorBoxSignature& s) {
  for (const auto* n : {"F_up", "F_dn"})
    if (s.is_plain(n) || s.is_box(n))
      throw DiagramError(std::string("object name clashes with structural 1-cell ") + n);
  FunctorBoxPresentation out;
  out.graph.name = "syn_functor_box(" + s.name + ")";
  out.graph.zero_cells = {"A", "X"};
  for (const auto& o : s.plain_objects) out.graph.one_generators.push_back({o, "A", "A"});
  for (const auto& o : s.box_objects) out.graph.one_generators.push_back({o, "X", "X"});
  out.graph.one_generators.push_back({"F_up", "A", "X"});
  out.graph.one_generators.push_back({"F_dn", "X", "A"});
  out.graph.two_generators.push_back({"n", "A", {}, "A", {"F_up", "F_dn"}});
  out.graph.two_generators.push_back({"e", "X", {"F_dn", "F_up"}, "X", {}});
  for (const auto& e : s.plain_edges)
    out.graph.two_generators.push_back({e.name, "A", e.dom, "A", e.cod});
  for (const auto& e : s.box_edges)
    out.graph.two_generators.push_back({e.name, "X", e.dom, "X", e.cod});
  for (const auto& e : s.in_box_edges) {
    std::vector<std::string> cod{"F_up"};
    cod.insert(cod.end(), e.cod.begin(), e.cod.end());
    cod.push_back("F_dn");
    out.graph.two_generators.push_back({e.name, "A", e.dom, "A", std::move(cod)});
  }
  for (const auto& e : s.out_box_edges) {
    std::vector<std::string> dom{"F_up"};
    dom.insert(dom.end(), e.dom.begin(), e.dom.end());
    dom.push_back("F_dn");
    out.graph.two_generators.push_back({e.name, "A", std::move(dom), "A", e.cod});
  }
  out.pair = {"F_up", "F_dn", "n", "e"};
  out.equations = kit_adjunction(out.graph, out.pair);
  return out;
}

// Rules normalizing box structure toward fewer box segments: an empty box
// created by n and merged away by e is the identity (both sides), and the
// order of merging three adjacent boxes is immaterial. Rules for boxes with
// non-empty content are not generated: matching keeps whisker contexts
// constant across a window, so content-general merges are left to bounded_eq
// through interchange.
inline EquationSet kit_lax_merge(const FunctorBoxSignature& s) {
  TwoGraph g = syn_functor_box(s).graph;
  OneCellPath box{"A", {"F_up", "F_dn"}};
  SlicedDiagram unit_l{box, {Layer{{}, "n", {"F_up", "F_dn"}}, Layer{{"F_up"}, "e", {"F_dn"}}}};
  SlicedDiagram unit_r{box, {Layer{{"F_up", "F_dn"}, "n", {}}, Layer{{"F_up"}, "e", {"F_dn"}}}};
  OneCellPath three{"A", {"F_up", "F_dn", "F_up", "F_dn", "F_up", "F_dn"}};
  SlicedDiagram assoc_l{three, {Layer{{"F_up"}, "e", {"F_dn", "F_up", "F_dn"}},
                                Layer{{"F_up"}, "e", {"F_dn"}}}};
  SlicedDiagram assoc_r{three, {Layer{{"F_up", "F_dn", "F_up"}, "e", {"F_dn"}},
                                Layer{{"F_up"}, "e", {"F_dn"}}}};
  for (const auto* d : {&unit_l, &unit_r, &assoc_l, &assoc_r}) assert_valid(g, *d);
  return {RewriteRule{"merge_unit_l", unit_l, identity(box), false,
                      "left unitality of the laxator"},
          RewriteRule{"merge_unit_r", unit_r, identity(box), false,
                      "right unitality of the laxator"},
          RewriteRule{"merge_assoc", assoc_l, assoc_r, true,
                      "associativity of the laxator"}};
}

struct InternalPresentation {
  TwoGraph graph;  // 0-cells I (outside) and G (inside the tube)
  AdjointPair pair1;  // L -| R with n1, e1
  AdjointPair pair2;  // R -| L with n2, e2
  EquationSet rules;  // alpha/beta (invertible), c/i and u/v (one-way)
};

// Internal-diagram presentation of a polygraph: tube walls L, R, the two
// 2-adjunctions, and cup/cap tube cells per object.
inline InternalPresentation syn_internal(const Polygraph& p) {
  for (const auto& o : p.objects)
    if (o == "L" || o == "R")
      throw DiagramError("object name clashes with structural 1-cell " + o);
  InternalPresentation out;
  out.graph.name = "syn_internal(" + p.name + ")";
  out.graph.zero_cells = {"I", "G"};
  out.graph.one_generators.push_back({"L", "I", "G"});
  out.graph.one_generators.push_back({"R", "G", "I"});
  for (const auto& o : p.objects) out.graph.one_generators.push_back({o, "G", "G"});
  out.graph.two_generators.push_back({"n1", "I", {}, "I", {"L", "R"}});
  out.graph.two_generators.push_back({"e1", "G", {"R", "L"}, "G", {}});
  out.graph.two_generators.push_back({"n2", "G", {}, "G", {"R", "L"}});
  out.graph.two_generators.push_back({"e2", "I", {"L", "R"}, "I", {}});
  for (const auto& o : p.objects) {
    out.graph.two_generators.push_back({"cup_" + o, "I", {}, "I", {"L", o, "R"}});
    out.graph.two_generators.push_back({"cap_" + o, "I", {"L", o, "R"}, "I", {}});
  }
  for (const auto& e : p.edges)
    out.graph.two_generators.push_back({e.name, "G", e.dom, "G", e.cod});

  out.pair1 = {"L", "R", "n1", "e1"};
  out.pair2 = {"R", "L", "n2", "e2"};
  for (auto& r : kit_2adjunction(out.graph, out.pair1, "alpha1", "beta1"))
    out.rules.push_back(std::move(r));
  for (auto& r : kit_2adjunction(out.graph, out.pair2, "alpha2", "beta2"))
    out.rules.push_back(std::move(r));

  // Tube adjunction cap -| cup per object: one-way snake 3-cells c, i.
  for (const auto& o : p.objects) {
    OneCellPath tube{"I", {"L", o, "R"}};
    SlicedDiagram capcup{tube, {Layer{{}, "cap_" + o, {}}, Layer{{}, "cup_" + o, {}}}};
    SlicedDiagram cupcap{OneCellPath{"I", {}},
                         {Layer{{}, "cup_" + o, {}}, Layer{{}, "cap_" + o, {}}}};
    assert_valid(out.graph, capcup);
    assert_valid(out.graph, cupcap);
    out.rules.push_back({"c_" + o, capcup, identity(tube), false,
                         "counit of the tube adjunction cap_" + o + " -| cup_" + o});
    out.rules.push_back({"i_" + o, identity(OneCellPath{"I", {}}), cupcap, false,
                         "unit of the tube adjunction cap_" + o + " -| cup_" + o});
  }

  // Adjunctions e2 -| n1 and n2 -| e1 between the wall cells, as one-way
  // 3-cells u_i, v_i, u_j, v_j.
  SlicedDiagram n1e2{OneCellPath{"I", {}}, {Layer{{}, "n1", {}}, Layer{{}, "e2", {}}}};
  SlicedDiagram e2n1{OneCellPath{"I", {"L", "R"}}, {Layer{{}, "e2", {}}, Layer{{}, "n1", {}}}};
  SlicedDiagram n2e1{OneCellPath{"G", {}}, {Layer{{}, "n2", {}}, Layer{{}, "e1", {}}}};
  SlicedDiagram e1n2{OneCellPath{"G", {"R", "L"}}, {Layer{{}, "e1", {}}, Layer{{}, "n2", {}}}};
  for (const auto* d : {&n1e2, &e2n1, &n2e1, &e1n2}) assert_valid(out.graph, *d);
  out.rules.push_back({"u_i", n1e2, identity(OneCellPath{"I", {}}), false,
                       "counit of the adjunction e2 -| n1"});
  out.rules.push_back({"v_i", identity(OneCellPath{"I", {"L", "R"}}), e2n1, false,
                       "unit of the adjunction e2 -| n1"});
  out.rules.push_back({"u_j", identity(OneCellPath{"G", {}}), n2e1, false,
                       "unit of the adjunction n2 -| e1"});
  out.rules.push_back({"v_j", e1n2, identity(OneCellPath{"G", {"R", "L"}}), false,
                       "counit of the adjunction n2 -| e1"});
  return out;
}

struct HomEnumeration {
  std::vector<SlicedDiagram> forms;  // sorted normal forms
  bool bounded = false;  // deduplicated only up to bounded search (equations present)
};

struct ResourceLimit : DiagramError {
  using DiagramError::DiagramError;
};

namespace detail {

inline std::vector<Layer> applicable_layers(const TwoGraph& g, const OneCellPath& p) {
  std::vector<Layer> out;
  for (const auto& t : g.two_generators) {
    for (std::size_t o = 0; o + t.dom.size() <= p.wires.size(); ++o) {
      bool ok = std::equal(t.dom.begin(), t.dom.end(), p.wires.begin() + o);
      if (ok && t.dom.empty()) {
        std::string at = p.start;
        for (std::size_t k = 0; k < o; ++k) at = g.one_gen(p.wires[k])->tgt;
        ok = at == t.dom_start;
      }
      if (!ok) continue;
      Layer l;
      l.left.assign(p.wires.begin(), p.wires.begin() + o);
      l.gen = t.name;
      l.right.assign(p.wires.begin() + o + t.dom.size(), p.wires.end());
      out.push_back(std::move(l));
    }
  }
  return out;
}

}  // namespace detail

// All normal forms of 2-cells dom -> cod with at most max_layers layers.
// Under equations the list is further deduplicated by bounded_eq, which is
// only a bounded search; `bounded` is set in that case.
inline HomEnumeration hom_enumerate(const TwoGraph& g, const EquationSet& equations,
                                    const OneCellPath& dom, const OneCellPath& cod,
                                    std::size_t max_layers = 6,
                                    std::size_t candidate_cap = 200000) {
  assert_path(g, dom);
  assert_path(g, cod);
  std::set<SlicedDiagram> hits;
  std::set<SlicedDiagram> seen;
  std::deque<std::pair<SlicedDiagram, std::size_t>> queue;
  SlicedDiagram id = identity(dom);
  seen.insert(id);
  queue.push_back({id, 0});
  while (!queue.empty()) {
    auto [cur, n] = queue.front();
    queue.pop_front();
    if (codomain(g, cur) == cod) hits.insert(normalize(g, cur));
    if (n == max_layers) continue;
    for (auto& l : detail::applicable_layers(g, codomain(g, cur))) {
      SlicedDiagram next = cur;
      next.layers.push_back(std::move(l));
      SlicedDiagram nf = normalize(g, next);
      if (seen.insert(nf).second) {
        if (seen.size() > candidate_cap)
          throw ResourceLimit("hom_enumerate: candidate limit exceeded");
        queue.push_back({std::move(nf), n + 1});
      }
    }
  }
  HomEnumeration out;
  out.forms.assign(hits.begin(), hits.end());
  if (!equations.empty() && out.forms.size() > 1) {
    out.bounded = true;
    // Keep the least representative of each bounded_eq class.
    std::vector<SlicedDiagram> reps;
    for (const auto& d : out.forms) {
      bool merged = false;
      for (const auto& r : reps) {
        if (bounded_eq(g, r, d, equations).kind == Verdict::Equal) {
          merged = true;
          break;
        }
      }
      if (!merged) reps.push_back(d);
    }
    out.forms = std::move(reps);
  }
  return out;
}

struct UnitIsoReport {
  bool ok = true;
  std::size_t left_count = 0, central_count = 0, right_count = 0;
  std::vector<std::string> mismatches;
};

// Thm-2.12-style check: the edges of g biject with the 2-generators of its
// collage, family by family, with boundaries translating back exactly.
inline UnitIsoReport unit_iso_check(const BimodularGraph& g) {
  UnitIsoReport report;
  BipointedTwoGraph coll = collage_of(g);
  std::map<std::string, const TwoGen*> by_name;
  for (const auto& t : coll.graph.two_generators) by_name[t.name] = &t;

  std::size_t left = 0, central = 0, right = 0;
  for (const auto& t : coll.graph.two_generators) {
    std::string src = t.dom_start;
    std::string tgt = path_end(coll.graph, OneCellPath{t.dom_start, t.dom});
    if (src == "M" && tgt == "M")
      ++left;
    else if (src == "M" && tgt == "N")
      ++central;
    else if (src == "N" && tgt == "N")
      ++right;
    else {
      report.ok = false;
      report.mismatches.push_back("2-generator " + t.name + " has boundary " + src + "->" + tgt);
    }
  }
  report.left_count = left;
  report.central_count = central;
  report.right_count = right;

  auto check_family = [&](const std::vector<Edge>& edges, const char* family) {
    for (const auto& e : edges) {
      auto it = by_name.find(e.name);
      if (it == by_name.end()) {
        report.ok = false;
        report.mismatches.push_back(std::string(family) + " edge " + e.name + " missing in collage");
        continue;
      }
      if (it->second->dom != e.dom || it->second->cod != e.cod) {
        report.ok = false;
        report.mismatches.push_back(std::string(family) + " edge " + e.name +
                                    " has a different boundary in the collage");
      }
    }
  };
  check_family(g.left_edges, "left");
  check_family(g.central_edges, "central");
  check_family(g.right_edges, "right");
  if (g.left_edges.size() != left || g.central_edges.size() != central ||
      g.right_edges.size() != right) {
    report.ok = false;
    report.mismatches.push_back("family counts differ between graph and collage");
  }
  // No 1-generator runs from N to M, by construction; assert anyway.
  for (const auto& o : coll.graph.one_generators)
    if (o.src == "N" && o.tgt == "M") {
      report.ok = false;
      report.mismatches.push_back("1-generator " + o.name + " runs from N to M");
    }
  return report;
}

}  // namespace collage
