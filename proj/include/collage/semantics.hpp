#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "collage/diagram.hpp"
#include "collage/fincat.hpp"
#include "collage/models.hpp"
#include "collage/parse.hpp"
#include "collage/present.hpp"
#include "collage/rewrite.hpp"

// Evaluation of syntactic diagrams in the finite backend: monoidal diagrams
// into monoidal categories, collage diagrams into bimodular categories,
// functor-box diagrams via laxators, and internal diagrams by chasing the
// composite point (tracked as strands of the target category).

namespace collage {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Interpretations.

struct MonoidalInterpretation {
  FinMonoidalCategory model;
  std::map<std::string, std::string> objects;  // 1-generator -> model object
  std::map<std::string, std::string> edges;    // 2-generator -> model morphism

  const std::string& object_at(const std::string& w) const {
    auto it = objects.find(w);
    if (it == objects.end()) throw EvalError("missing interpretation entry for object " + w);
    return it->second;
  }
  const std::string& edge_at(const std::string& e) const {
    auto it = edges.find(e);
    if (it == edges.end()) throw EvalError("missing interpretation entry for edge " + e);
    return it->second;
  }
  std::string obj_of(const std::vector<std::string>& wires) const {
    std::string acc = model.unit;
    for (const auto& w : wires) acc = model.tensor_obj(acc, object_at(w));
    return acc;
  }
};

struct CollageInterpretation {
  FinBimodularCategory model;
  std::map<std::string, std::string> objects;  // left/center/right object -> model object
  std::map<std::string, std::string> edges;

  const std::string& object_at(const std::string& w) const {
    auto it = objects.find(w);
    if (it == objects.end()) throw EvalError("missing interpretation entry for object " + w);
    return it->second;
  }
  const std::string& edge_at(const std::string& e) const {
    auto it = edges.find(e);
    if (it == edges.end()) throw EvalError("missing interpretation entry for edge " + e);
    return it->second;
  }
};

struct FunctorBoxInterpretation {
  FinLaxMonoidalFunctor F;  // from the box category X to the plain category A
  std::map<std::string, std::string> objects;  // plain -> A-objects, box -> X-objects
  std::map<std::string, std::string> edges;

  const std::string& object_at(const std::string& w) const {
    auto it = objects.find(w);
    if (it == objects.end()) throw EvalError("missing interpretation entry for object " + w);
    return it->second;
  }
  const std::string& edge_at(const std::string& e) const {
    auto it = edges.find(e);
    if (it == edges.end()) throw EvalError("missing interpretation entry for edge " + e);
    return it->second;
  }
};

// ---------------------------------------------------------------------------
// Monoidal evaluation: fold layers as (id tensor i(gen) tensor id).

inline std::string eval_monoidal(const TwoGraph& g, const SlicedDiagram& d,
                                 const MonoidalInterpretation& i) {
  assert_valid(g, d);
  const FinMonoidalCategory& V = i.model;
  std::string cur = V.cat.id(i.obj_of(d.domain.wires));
  for (const auto& l : d.layers) {
    const TwoGen* t = g.two_gen(l.gen);
    const std::string& m = i.edge_at(l.gen);
    if (V.cat.src(m) != i.obj_of(t->dom) || V.cat.tgt(m) != i.obj_of(t->cod))
      throw EvalError("interpretation of " + l.gen + " does not match its boundary");
    std::string layer = V.tensor_mor(V.tensor_mor(V.cat.id(i.obj_of(l.left)), m),
                                     V.cat.id(i.obj_of(l.right)));
    cur = V.cat.compose(cur, layer);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Collage evaluation: M-region layers act on the left, N-region layers on
// the right, central layers run in the carrier.

namespace detail {

// Object of the carrier interpreting a factored path.
inline std::string collage_obj(const CentralFactor& f, const CollageInterpretation& i) {
  std::string acc = i.object_at(f.central);
  // Right action first then left, or the other way: compatible by Def. 2.1.
  for (auto it = f.right.rbegin(); it != f.right.rend(); ++it)
    acc = i.model.ract_obj(acc, i.object_at(*it));
  for (auto it = f.left.rbegin(); it != f.left.rend(); ++it)
    acc = i.model.lact_obj(i.object_at(*it), acc);
  return acc;
}

inline std::string tensor_path(const FinMonoidalCategory& m, const CollageInterpretation& i,
                               const std::vector<std::string>& wires) {
  std::string acc = m.unit;
  for (const auto& w : wires) acc = m.tensor_obj(acc, i.object_at(w));
  return acc;
}

}  // namespace detail

inline std::string eval_collage(const SlicedDiagram& d, const BimodularGraph& g,
                                const CollageInterpretation& i) {
  TwoGraph coll = collage_of(g).graph;
  typecheck_central(coll, d, g);  // throws CentralTypingError when ill-typed
  const FinBimodularCategory& B = i.model;
  CentralFactor at = factor_central(d.domain.wires, g);
  std::string cur = B.carrier.id(detail::collage_obj(at, i));
  for (const auto& l : d.layers) {
    CentralFactor in = factor_central(layer_input(coll, l), g);
    const std::string& m = i.edge_at(l.gen);
    bool is_left_edge = false, is_right_edge = false;
    for (const auto& e : g.left_edges) is_left_edge = is_left_edge || e.name == l.gen;
    for (const auto& e : g.right_edges) is_right_edge = is_right_edge || e.name == l.gen;
    if (is_left_edge) {
      // The generator sits inside the M-region of the factored path.
      const Edge* e = nullptr;
      for (const auto& le : g.left_edges)
        if (le.name == l.gen) e = &le;
      std::size_t lprefix = l.left.size();
      std::string mid_src = detail::tensor_path(B.left, i, e->dom);
      std::string mid_tgt = detail::tensor_path(B.left, i, e->cod);
      if (B.left.cat.src(m) != mid_src || B.left.cat.tgt(m) != mid_tgt)
        throw EvalError("interpretation of " + l.gen + " does not match its boundary");
      // Whisker inside M, then act on the rest of the path.
      std::vector<std::string> after(in.left.begin() + lprefix + e->dom.size(), in.left.end());
      std::string mmor = B.left.tensor_mor(m, B.left.cat.id(detail::tensor_path(B.left, i, after)));
      CentralFactor rest{{}, in.central, in.right};
      std::string inner = B.lact_mor(mmor, B.carrier.id(detail::collage_obj(rest, i)));
      std::vector<std::string> prefix(in.left.begin(), in.left.begin() + lprefix);
      cur = B.carrier.compose(
          cur, B.lact_mor(B.left.cat.id(detail::tensor_path(B.left, i, prefix)), inner));
      continue;
    }
    if (is_right_edge) {
      const Edge* e = nullptr;
      for (const auto& re : g.right_edges)
        if (re.name == l.gen) e = &re;
      std::size_t off = l.left.size() - (in.left.size() + 1);  // offset inside the N-region
      std::string mid_src = detail::tensor_path(B.right, i, e->dom);
      std::string mid_tgt = detail::tensor_path(B.right, i, e->cod);
      if (B.right.cat.src(m) != mid_src || B.right.cat.tgt(m) != mid_tgt)
        throw EvalError("interpretation of " + l.gen + " does not match its boundary");
      std::vector<std::string> before(in.right.begin(), in.right.begin() + off);
      std::vector<std::string> after(in.right.begin() + off + e->dom.size(), in.right.end());
      std::string nmor = B.right.tensor_mor(
          B.right.cat.id(detail::tensor_path(B.right, i, before)), m);
      CentralFactor head{in.left, in.central, {}};
      std::string inner = B.ract_mor(B.carrier.id(detail::collage_obj(head, i)), nmor);
      cur = B.carrier.compose(
          cur, B.ract_mor(inner, B.right.cat.id(detail::tensor_path(B.right, i, after))));
      continue;
    }
    // Central edge: its domain is (M-wires, central, N-wires); extra whiskers
    // on both sides act around the carrier morphism.
    const Edge* e = nullptr;
    for (const auto& ce : g.central_edges)
      if (ce.name == l.gen) e = &ce;
    if (!e) throw EvalError("unknown edge " + l.gen);
    CentralFactor edom = factor_central(e->dom, g);
    CentralFactor ecod = factor_central(e->cod, g);
    if (B.carrier.src(m) != detail::collage_obj(edom, i) ||
        B.carrier.tgt(m) != detail::collage_obj(ecod, i))
      throw EvalError("interpretation of " + l.gen + " does not match its boundary");
    // The left whisker is all M-wires, the right whisker all N-wires.
    std::string stepped = B.ract_mor(m, B.right.cat.id(detail::tensor_path(B.right, i, l.right)));
    stepped = B.lact_mor(B.left.cat.id(detail::tensor_path(B.left, i, l.left)), stepped);
    cur = B.carrier.compose(cur, stepped);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Functor-box evaluation by structural recursion on matched box segments.

namespace detail {

// Object in the plain category of a fully balanced wire list: plain wires
// interpret directly, maximal F_up ... F_dn segments through F.
inline std::string box_obj(const std::vector<std::string>& wires,
                           const FunctorBoxInterpretation& i) {
  const FinMonoidalCategory& A = i.F.cod;
  const FinMonoidalCategory& X = i.F.dom;
  std::string acc = A.unit;
  std::size_t k = 0;
  while (k < wires.size()) {
    if (wires[k] == "F_dn")
      throw EvalError("unmatched F_dn in an intermediate path");
    if (wires[k] == "F_up") {
      std::string inner = X.unit;
      ++k;
      while (k < wires.size() && wires[k] != "F_dn") {
        if (wires[k] == "F_up") throw EvalError("nested F_up in an intermediate path");
        inner = X.tensor_obj(inner, i.object_at(wires[k]));
        ++k;
      }
      if (k == wires.size()) throw EvalError("unmatched F_up in an intermediate path");
      ++k;  // consume F_dn
      acc = A.tensor_obj(acc, i.F.obj_at(inner));
    } else {
      acc = A.tensor_obj(acc, i.object_at(wires[k]));
      ++k;
    }
  }
  return acc;
}

// Split a left whisker into (balanced prefix, contents of the open box).
inline std::pair<std::vector<std::string>, std::vector<std::string>> split_open_left(
    const std::vector<std::string>& wires) {
  for (std::size_t k = wires.size(); k-- > 0;) {
    if (wires[k] == "F_dn") break;  // the last box is closed: nothing open
    if (wires[k] == "F_up")
      return {{wires.begin(), wires.begin() + k},
              {wires.begin() + k + 1, wires.end()}};
  }
  throw EvalError("unmatched F_dn in an intermediate path (expected an open box on the left)");
}

// Split a right whisker into (contents up to the closing F_dn, balanced rest).
inline std::pair<std::vector<std::string>, std::vector<std::string>> split_open_right(
    const std::vector<std::string>& wires) {
  for (std::size_t k = 0; k < wires.size(); ++k) {
    if (wires[k] == "F_up") break;
    if (wires[k] == "F_dn")
      return {{wires.begin(), wires.begin() + k},
              {wires.begin() + k + 1, wires.end()}};
  }
  throw EvalError("unmatched F_up in an intermediate path (expected a closing wall on the right)");
}

}  // namespace detail

inline std::string eval_functor_box(const SlicedDiagram& d, const FunctorBoxSignature& s,
                                    const FunctorBoxInterpretation& i) {
  const FinMonoidalCategory& A = i.F.cod;
  const FinMonoidalCategory& X = i.F.dom;
  auto edge_kind = [&](const std::string& n) -> int {
    for (const auto& e : s.plain_edges)
      if (e.name == n) return 0;
    for (const auto& e : s.box_edges)
      if (e.name == n) return 1;
    for (const auto& e : s.in_box_edges)
      if (e.name == n) return 2;
    for (const auto& e : s.out_box_edges)
      if (e.name == n) return 3;
    if (n == "n") return 4;
    if (n == "e") return 5;
    throw EvalError("unknown generator " + n);
  };
  auto find_edge = [&](const std::string& n) -> const Edge* {
    for (const auto* list : {&s.plain_edges, &s.box_edges, &s.in_box_edges, &s.out_box_edges})
      for (const auto& e : *list)
        if (e.name == n) return &e;
    return nullptr;
  };
  auto xobj = [&](const std::vector<std::string>& wires) {
    std::string acc = X.unit;
    for (const auto& w : wires) acc = X.tensor_obj(acc, i.object_at(w));
    return acc;
  };
  std::string cur = A.cat.id(detail::box_obj(d.domain.wires, i));
  for (const auto& l : d.layers) {
    std::string mid;      // the A-morphism of the layer's core
    std::string lob, rob;  // objects of the whiskers
    switch (edge_kind(l.gen)) {
      case 0: {  // plain edge
        const Edge* e = find_edge(l.gen);
        const std::string& m = i.edge_at(l.gen);
        std::string src = A.unit, tgt = A.unit;
        for (const auto& w : e->dom) src = A.tensor_obj(src, i.object_at(w));
        for (const auto& w : e->cod) tgt = A.tensor_obj(tgt, i.object_at(w));
        if (A.cat.src(m) != src || A.cat.tgt(m) != tgt)
          throw EvalError("interpretation of " + l.gen + " does not match its boundary");
        mid = m;
        lob = detail::box_obj(l.left, i);
        rob = detail::box_obj(l.right, i);
        break;
      }
      case 1: {  // box edge: evaluate inside X, transport by F
        const Edge* e = find_edge(l.gen);
        const std::string& m = i.edge_at(l.gen);
        if (X.cat.src(m) != xobj(e->dom) || X.cat.tgt(m) != xobj(e->cod))
          throw EvalError("interpretation of " + l.gen + " does not match its boundary");
        auto [lbal, lopen] = detail::split_open_left(l.left);
        auto [ropen, rbal] = detail::split_open_right(l.right);
        std::string interior =
            X.tensor_mor(X.tensor_mor(X.cat.id(xobj(lopen)), m), X.cat.id(xobj(ropen)));
        mid = i.F.mor_at(interior);
        lob = detail::box_obj(lbal, i);
        rob = detail::box_obj(rbal, i);
        break;
      }
      case 2:    // in-box edge u : plain -> F(box contents)
      case 3: {  // out-box edge v : F(box contents) -> plain
        const Edge* e = find_edge(l.gen);
        const std::string& m = i.edge_at(l.gen);
        bool inbox = edge_kind(l.gen) == 2;
        // The signature stores the boxed side without its walls.
        const auto& contents = inbox ? e->cod : e->dom;
        const auto& plain = inbox ? e->dom : e->cod;
        std::string boxed_obj = i.F.obj_at(xobj(contents));
        std::string plain_obj = A.unit;
        for (const auto& w : plain) plain_obj = A.tensor_obj(plain_obj, i.object_at(w));
        std::string src = inbox ? plain_obj : boxed_obj;
        std::string tgt = inbox ? boxed_obj : plain_obj;
        if (A.cat.src(m) != src || A.cat.tgt(m) != tgt)
          throw EvalError("interpretation of " + l.gen + " does not match its boundary");
        mid = m;
        lob = detail::box_obj(l.left, i);
        rob = detail::box_obj(l.right, i);
        break;
      }
      case 4: {  // n : creates an empty box; semantically epsilon
        mid = i.F.epsilon;
        lob = detail::box_obj(l.left, i);
        rob = detail::box_obj(l.right, i);
        break;
      }
      case 5: {  // e : merges two adjacent boxes; semantically mu
        auto [lbal, lopen] = detail::split_open_left(l.left);
        auto [ropen, rbal] = detail::split_open_right(l.right);
        mid = i.F.mu_at(xobj(lopen), xobj(ropen));
        lob = detail::box_obj(lbal, i);
        rob = detail::box_obj(rbal, i);
        break;
      }
    }
    std::string layer = A.tensor_mor(A.tensor_mor(A.cat.id(lob), mid), A.cat.id(rob));
    cur = A.cat.compose(cur, layer);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Internal-diagram evaluation: the composite point, tracked as strands.
//
// Tube cells open, split, merge and close tube segments; each segment
// belongs to a strand carrying a morphism of the target category. The
// interpretation of the tube generators is fixed: cup_A opens a strand at
// id_A, n1 opens an empty strand at id_I, n2 splits a segment in place, e1
// merges adjacent segments (tensoring distinct strands end-to-start), e2
// and cap_A close segments, emitting the strand's morphism once it has no
// segments left. Interleaved strands cannot be merged: that is a
// composition mismatch.

struct InternalPoint {
  std::vector<std::string> closed;  // morphisms of closed components, in closing order
};

inline InternalPoint eval_internal(const InternalPresentation& ip, const Polygraph& p,
                                   const SlicedDiagram& d, const MonoidalInterpretation& i) {
  assert_valid(ip.graph, d);
  const FinMonoidalCategory& V = i.model;
  struct Strand {
    std::string value;
    std::vector<std::size_t> segments;  // segment ids, in path order
  };
  struct Segment {
    std::size_t strand;
    std::vector<std::string> contents;  // polygraph objects inside the tube
  };
  std::vector<Strand> strands;
  std::vector<std::size_t> order;  // segment ids in path order
  std::map<std::size_t, Segment> segs;
  std::size_t next_seg = 0;
  InternalPoint out;

  // Decompose the domain: only closed diagrams from @I start cleanly, but a
  // domain with open tubes is allowed; each becomes a fresh identity strand.
  {
    const auto& ws = d.domain.wires;
    std::size_t k = 0;
    while (k < ws.size()) {
      if (ws[k] != "L") throw EvalError("composition mismatch: domain does not start a tube");
      std::vector<std::string> contents;
      ++k;
      while (k < ws.size() && ws[k] != "R") contents.push_back(ws[k++]);
      if (k == ws.size()) throw EvalError("composition mismatch: unclosed tube in the domain");
      ++k;
      Strand s;
      s.value = V.cat.id(i.obj_of(contents));
      s.segments = {next_seg};
      segs[next_seg] = {strands.size(), contents};
      order.push_back(next_seg);
      ++next_seg;
      strands.push_back(std::move(s));
    }
  }

  // Map a wire offset in the current path to (segment position, offset
  // inside that segment's contents). Wires: per segment, "L", contents, "R".
  auto locate = [&](std::size_t offset) -> std::pair<std::size_t, std::size_t> {
    std::size_t at = 0;
    for (std::size_t si = 0; si < order.size(); ++si) {
      std::size_t width = segs.at(order[si]).contents.size() + 2;
      if (offset < at + width) return {si, offset - at};
      at += width;
    }
    return {order.size(), 0};
  };

  for (const auto& l : d.layers) {
    std::size_t offset = l.left.size();
    const std::string& gen = l.gen;
    if (gen.rfind("cup_", 0) == 0) {
      std::string obj = gen.substr(4);
      auto [si, inner] = locate(offset);
      if (inner != 0 && !(si == order.size()))
        throw EvalError("composition mismatch: cup inside a tube");
      Strand s;
      s.value = V.cat.id(i.object_at(obj));
      s.segments = {next_seg};
      segs[next_seg] = {strands.size(), {obj}};
      order.insert(order.begin() + static_cast<std::ptrdiff_t>(si), next_seg);
      ++next_seg;
      strands.push_back(std::move(s));
      continue;
    }
    if (gen == "n1") {
      auto [si, inner] = locate(offset);
      if (inner != 0 && si != order.size())
        throw EvalError("composition mismatch: n1 inside a tube");
      Strand s;
      s.value = V.cat.id(V.unit);
      s.segments = {next_seg};
      segs[next_seg] = {strands.size(), {}};
      order.insert(order.begin() + static_cast<std::ptrdiff_t>(si), next_seg);
      ++next_seg;
      strands.push_back(std::move(s));
      continue;
    }
    if (gen.rfind("cap_", 0) == 0 || gen == "e2") {
      // Close the segment starting at this offset.
      auto [si, inner] = locate(offset);
      if (si == order.size() || inner != 0)
        throw EvalError("composition mismatch: closing cell not at a tube boundary");
      std::size_t seg_id = order[si];
      Segment seg = segs.at(seg_id);
      Strand& s = strands[seg.strand];
      if (gen == "e2") {
        // Removing an empty segment never changes the strand's value.
        if (!seg.contents.empty())
          throw EvalError("composition mismatch: e2 on a non-empty tube");
        s.segments.erase(std::find(s.segments.begin(), s.segments.end(), seg_id));
        if (s.segments.empty()) out.closed.push_back(s.value);
      } else {
        if (seg.contents != std::vector<std::string>{gen.substr(4)})
          throw EvalError("composition mismatch: cap does not match the tube contents");
        if (s.segments.size() != 1)
          throw EvalError("composition mismatch: closing one segment of a split strand");
        out.closed.push_back(s.value);
        s.segments.clear();
      }
      segs.erase(seg_id);
      order.erase(order.begin() + static_cast<std::ptrdiff_t>(si));
      continue;
    }
    if (gen == "n2") {
      // Split the surrounding segment at this offset into two, same strand.
      auto [si, inner] = locate(offset);
      if (si == order.size() || inner == 0)
        throw EvalError("composition mismatch: n2 outside a tube");
      std::size_t seg_id = order[si];
      Segment& seg = segs.at(seg_id);
      std::size_t cut = inner - 1;  // offset 0 is the opening L wall
      std::vector<std::string> tail(seg.contents.begin() + static_cast<std::ptrdiff_t>(cut),
                                    seg.contents.end());
      seg.contents.resize(cut);
      Segment fresh{seg.strand, tail};
      segs[next_seg] = fresh;
      order.insert(order.begin() + static_cast<std::ptrdiff_t>(si + 1), next_seg);
      Strand& s = strands[seg.strand];
      auto pos = std::find(s.segments.begin(), s.segments.end(), seg_id);
      s.segments.insert(pos + 1, next_seg);
      ++next_seg;
      continue;
    }
    if (gen == "e1") {
      // Merge the tube ending here with the tube starting here: the offset
      // points at the closing wall of the left segment.
      auto [si, inner] = locate(offset);
      if (si + 1 >= order.size() || inner != segs.at(order[si]).contents.size() + 1)
        throw EvalError("composition mismatch: e1 not between two tubes");
      std::size_t left_id = order[si], right_id = order[si + 1];
      Segment left = segs.at(left_id);
      Segment right = segs.at(right_id);
      if (left.strand == right.strand) {
        Strand& s = strands[left.strand];
        auto lp = std::find(s.segments.begin(), s.segments.end(), left_id);
        if (lp + 1 == s.segments.end() || *(lp + 1) != right_id)
          throw EvalError("composition mismatch: merging non-adjacent segments of one strand");
        s.segments.erase(lp + 1);
      } else {
        Strand& sl = strands[left.strand];
        Strand& sr = strands[right.strand];
        if (sl.segments.back() != left_id || sr.segments.front() != right_id)
          throw EvalError("composition mismatch: merging interleaved strands");
        sl.value = V.tensor_mor(sl.value, sr.value);
        for (std::size_t sid : sr.segments) {
          if (sid != right_id) sl.segments.push_back(sid);
          segs.at(sid).strand = left.strand;
        }
        sr.segments.clear();
        sr.value.clear();
        segs.at(right_id).strand = left.strand;
      }
      Segment& keep = segs.at(left_id);
      keep.contents.insert(keep.contents.end(), right.contents.begin(), right.contents.end());
      segs.erase(right_id);
      order.erase(order.begin() + static_cast<std::ptrdiff_t>(si + 1));
      continue;
    }
    // A polygraph generator applied inside one tube segment.
    const TwoGen* t = ip.graph.two_gen(gen);
    if (!t) throw EvalError("unknown generator " + gen);
    auto [si, inner] = locate(offset);
    if (si == order.size() || inner == 0)
      throw EvalError("composition mismatch: generator outside a tube");
    std::size_t seg_id = order[si];
    Segment& seg = segs.at(seg_id);
    std::size_t cut = inner - 1;
    if (cut + t->dom.size() > seg.contents.size())
      throw EvalError("composition mismatch: generator crosses a tube wall");
    const std::string& m = i.edge_at(gen);
    if (V.cat.src(m) != i.obj_of(t->dom) || V.cat.tgt(m) != i.obj_of(t->cod))
      throw EvalError("interpretation of " + gen + " does not match its boundary");
    Strand& s = strands[seg.strand];
    // Whisker within the whole strand: identity on every wire of the
    // strand's segments before the application point.
    std::string before = V.unit, after = V.unit;
    bool seen = false;
    for (std::size_t sid : s.segments) {
      const Segment& other = segs.at(sid);
      if (sid == seg_id) {
        for (std::size_t k = 0; k < other.contents.size(); ++k) {
          std::string o = i.object_at(other.contents[k]);
          if (k < cut)
            before = V.tensor_obj(before, o);
          else if (k >= cut + t->dom.size())
            after = V.tensor_obj(after, o);
        }
        seen = true;
        continue;
      }
      std::string o = i.obj_of(other.contents);
      if (!seen)
        before = V.tensor_obj(before, o);
      else
        after = V.tensor_obj(after, o);
    }
    std::string step = V.tensor_mor(V.tensor_mor(V.cat.id(before), m), V.cat.id(after));
    s.value = V.cat.compose(s.value, step);
    seg.contents.erase(seg.contents.begin() + static_cast<std::ptrdiff_t>(cut),
                       seg.contents.begin() + static_cast<std::ptrdiff_t>(cut + t->dom.size()));
    seg.contents.insert(seg.contents.begin() + static_cast<std::ptrdiff_t>(cut),
                        t->cod.begin(), t->cod.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comb evaluation, two ways.

struct CombResult {
  std::string direct;    // f ; (id_M tensor g) ; h
  std::string internal;  // through the internal-diagram presentation
};

// f : A -> M tensor B, g : B -> C, h : M tensor C -> D in the model V; the
// objects are passed explicitly since V's tensor is not injective.
inline CombResult comb_eval(const FinMonoidalCategory& V, const std::string& A,
                            const std::string& M, const std::string& B, const std::string& C,
                            const std::string& D, const std::string& f, const std::string& g,
                            const std::string& h) {
  if (V.cat.src(f) != A || V.cat.tgt(f) != V.tensor_obj(M, B))
    throw EvalError("comb: f has the wrong boundary");
  if (V.cat.src(g) != B || V.cat.tgt(g) != C) throw EvalError("comb: g has the wrong boundary");
  if (V.cat.src(h) != V.tensor_obj(M, C) || V.cat.tgt(h) != D)
    throw EvalError("comb: h has the wrong boundary");
  CombResult out;
  out.direct = V.cat.compose(V.cat.compose(f, V.tensor_mor(V.cat.id(M), g)), h);

  Polygraph p;
  p.name = "comb";
  p.objects = {"A", "M", "B", "C", "D"};
  p.edges = {{"f", {"A"}, {"M", "B"}}, {"g", {"B"}, {"C"}}, {"h", {"M", "C"}, {"D"}}};
  InternalPresentation ip = syn_internal(p);
  MonoidalInterpretation mi;
  mi.model = V;
  mi.objects = {{"A", A}, {"M", M}, {"B", B}, {"C", C}, {"D", D}};
  mi.edges = {{"f", f}, {"g", g}, {"h", h}};
  SlicedDiagram d{OneCellPath{"I", {}},
                  {{{}, "cup_A", {}},
                   {{"L"}, "f", {"R"}},
                   {{"L", "M"}, "n2", {"B", "R"}},
                   {{"L", "M", "R", "L"}, "g", {"R"}},
                   {{"L", "M"}, "e1", {"C", "R"}},
                   {{"L"}, "h", {"R"}},
                   {{}, "cap_D", {}}}};
  assert_valid(ip.graph, d);
  InternalPoint pt = eval_internal(ip, p, d, mi);
  if (pt.closed.size() != 1) throw EvalError("comb: expected exactly one closed component");
  out.internal = pt.closed[0];
  return out;
}

// ---------------------------------------------------------------------------
// Soundness: endpoints of a validated trace must evaluate equal in every
// applicable model.

struct SoundnessReport {
  struct Entry {
    std::string model;
    bool equal = false;
    std::string lhs, rhs;
  };
  std::vector<Entry> entries;
  bool ok = true;
};

inline SoundnessReport soundness_check(
    const TwoGraph& g, const EquationSet& equations, const RewriteTrace& trace,
    const SlicedDiagram& d1, const SlicedDiagram& d2,
    const std::vector<std::pair<std::string, std::function<std::string(const SlicedDiagram&)>>>&
        evaluators) {
  if (normalize(g, trace.start) != normalize(g, d1))
    throw EvalError("soundness_check: trace does not start at the first diagram");
  TraceReport rep = validate_trace(g, trace, equations);
  if (!rep.ok)
    throw EvalError("soundness_check: trace fails at step " + std::to_string(rep.failed_step));
  if (rep.intermediates.back() != normalize(g, d2))
    throw EvalError("soundness_check: trace does not end at the second diagram");
  SoundnessReport out;
  for (const auto& [name, eval] : evaluators) {
    SoundnessReport::Entry e;
    e.model = name;
    e.lhs = eval(d1);
    e.rhs = eval(d2);
    e.equal = e.lhs == e.rhs;
    out.ok = out.ok && e.equal;
    out.entries.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Resolution of interpretation blocks against a theory and a model.

inline MonoidalInterpretation resolve_monoidal_interpretation(const CollageFile& file,
                                                              const InterpretationDecl& decl) {
  MonoidalInterpretation out;
  out.model = resolve_model(file, decl.model);
  out.objects = decl.objects;
  out.edges = decl.edges;
  return out;
}

inline CollageInterpretation resolve_collage_interpretation(const CollageFile& file,
                                                            const InterpretationDecl& decl) {
  CollageInterpretation out;
  out.model = self_bimodular(resolve_model(file, decl.model));
  out.objects = decl.objects;
  out.edges = decl.edges;
  return out;
}

inline FinLaxMonoidalFunctor resolve_lax_functor(const std::string& name) {
  if (name == "z2_id") return identity_lax(z2_model());
  if (name == "chain3_id") return identity_lax(chain3_model());
  if (name == "chain5_half") return chain5_half_lax();
  throw FinCatError("unknown lax functor '" + name + "'");
}

inline FunctorBoxInterpretation resolve_functorbox_interpretation(const InterpretationDecl& decl) {
  FunctorBoxInterpretation out;
  out.F = resolve_lax_functor(decl.model);
  out.objects = decl.objects;
  out.edges = decl.edges;
  return out;
}

}  // namespace collage
