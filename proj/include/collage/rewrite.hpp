#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "collage/diagram.hpp"

// Equational rewriting on sliced diagrams: rule kits for adjunctions and
// laxator merging, matching modulo a bounded exchange neighborhood, bounded
// equality search and trace validation.

namespace collage {

struct RewriteRule {
  std::string name;
  SlicedDiagram lhs;
  SlicedDiagram rhs;
  bool invertible = true;
  std::string note;  // side conditions etc., informational only

  friend bool operator==(const RewriteRule&, const RewriteRule&) = default;
};

using EquationSet = std::vector<RewriteRule>;

// An adjoint pair of 1-cells with unit/counit 2-cells.
struct AdjointPair {
  std::string up;      // left adjoint 1-generator
  std::string down;    // right adjoint 1-generator
  std::string unit;    // n : id -> up ; down
  std::string counit;  // e : down ; up -> id

  friend bool operator==(const AdjointPair&, const AdjointPair&) = default;
};

struct Occurrence {
  std::vector<std::size_t> premoves;  // exchange moves leading to the representative
  std::size_t layer = 0;
  std::size_t offset = 0;
  bool forward = true;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct TraceStep {
  std::string rule;
  std::size_t layer = 0;
  std::size_t offset = 0;
  bool forward = true;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct RewriteTrace {
  SlicedDiagram start;
  std::vector<TraceStep> steps;
};

// Snake rules of an adjunction, both invertible:
//   <prefix>_<down> : (1 ⊗ n);(e ⊗ 1) -> id(down)
//   <prefix>_<up>   : (n ⊗ 1);(1 ⊗ e) -> id(up)
inline std::vector<RewriteRule> kit_adjunction(const TwoGraph& g, const AdjointPair& pair,
                                               const std::string& prefix = "snake",
                                               const std::string& note = "") {
  SlicedDiagram down_zig{OneCellPath{g.one_gen(pair.down)->src, {pair.down}},
                         {Layer{{pair.down}, pair.unit, {}}, Layer{{}, pair.counit, {pair.down}}}};
  SlicedDiagram up_zig{OneCellPath{g.one_gen(pair.up)->src, {pair.up}},
                       {Layer{{}, pair.unit, {pair.up}}, Layer{{pair.up}, pair.counit, {}}}};
  assert_valid(g, down_zig);
  assert_valid(g, up_zig);
  return {RewriteRule{prefix + "_" + pair.down, down_zig, identity(down_zig.domain), true, note},
          RewriteRule{prefix + "_" + pair.up, up_zig, identity(up_zig.domain), true, note}};
}

// Triangle rules of a 2-adjunction. The swallowtail side conditions (in the
// standard cusp form: the two composite traces built from alpha and beta
// whiskered by the adjoints agree) are recorded as metadata; trace-vs-trace
// equality is out of scope.
inline std::vector<RewriteRule> kit_2adjunction(const TwoGraph& g, const AdjointPair& pair,
                                                const std::string& alpha_name,
                                                const std::string& beta_name) {
  std::string note = "invertible triangle 3-cells " + alpha_name + "/" + beta_name +
                     "; subject to the swallowtail side conditions (whiskered " + alpha_name +
                     " against whiskered " + beta_name + " compose to the identity trace)";
  auto rules = kit_adjunction(g, pair, "tri", note);
  rules[0].name = alpha_name;  // (1 ⊗ n);(e ⊗ 1) -> 1
  rules[1].name = beta_name;   // (n ⊗ 1);(1 ⊗ e) -> 1
  return rules;
}

namespace detail {

// Match `pat` as a layer window of `d` starting at layer i under constant
// whisker context; returns the left-context width (the occurrence offset).
inline std::optional<std::size_t> match_window(const TwoGraph& g, const SlicedDiagram& d,
                                               std::size_t i, const SlicedDiagram& pat) {
  if (pat.layers.empty() || i + pat.layers.size() > d.layers.size()) return std::nullopt;
  if (d.layers[i].left.size() < pat.layers[0].left.size()) return std::nullopt;
  const std::size_t lw = d.layers[i].left.size() - pat.layers[0].left.size();
  if (d.layers[i].right.size() < pat.layers[0].right.size()) return std::nullopt;
  const std::size_t rw = d.layers[i].right.size() - pat.layers[0].right.size();
  std::vector<std::string> lctx(d.layers[i].left.begin(), d.layers[i].left.begin() + lw);
  std::vector<std::string> rctx(d.layers[i].right.end() - rw, d.layers[i].right.end());
  for (std::size_t j = 0; j < pat.layers.size(); ++j) {
    const Layer& dl = d.layers[i + j];
    const Layer& pl = pat.layers[j];
    if (dl.gen != pl.gen) return std::nullopt;
    if (dl.left.size() != lw + pl.left.size() || dl.right.size() != pl.right.size() + rw)
      return std::nullopt;
    if (!std::equal(lctx.begin(), lctx.end(), dl.left.begin())) return std::nullopt;
    if (!std::equal(pl.left.begin(), pl.left.end(), dl.left.begin() + lw)) return std::nullopt;
    if (!std::equal(pl.right.begin(), pl.right.end(), dl.right.begin())) return std::nullopt;
    if (!std::equal(rctx.begin(), rctx.end(), dl.right.end() - rw)) return std::nullopt;
  }
  // Anchor the zero-cell for patterns whose whole input path is empty.
  if (lw == 0 && layer_input(g, pat.layers[0]).empty() &&
      d.domain.start != pat.domain.start)
    return std::nullopt;
  return lw;
}

// Identity patterns match as insertion points: before layer i, at every
// offset where the pattern's boundary path occurs in the intermediate path.
inline std::vector<std::pair<std::size_t, std::size_t>> identity_matches(
    const TwoGraph& g, const SlicedDiagram& d, const SlicedDiagram& pat) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::vector<std::string> path = d.domain.wires;
  for (std::size_t i = 0; i <= d.layers.size(); ++i) {
    for (std::size_t o = 0; o + pat.domain.wires.size() <= path.size(); ++o) {
      bool ok = std::equal(pat.domain.wires.begin(), pat.domain.wires.end(), path.begin() + o);
      if (ok && pat.domain.wires.empty()) {
        std::string at = d.domain.start;
        for (std::size_t k = 0; k < o; ++k) at = g.one_gen(path[k])->tgt;
        ok = at == pat.domain.start;
      }
      if (ok) out.push_back({i, o});
    }
    if (i < d.layers.size()) path = layer_output(g, d.layers[i]);
  }
  return out;
}

struct Rep {
  SlicedDiagram diagram;
  std::vector<std::size_t> moves;
};

// Exchange representatives of d within `bound` moves, in deterministic BFS
// discovery order.
inline std::vector<Rep> exchange_reps(const TwoGraph& g, const SlicedDiagram& d,
                                      std::size_t bound) {
  std::vector<Rep> out{{d, {}}};
  std::set<SlicedDiagram> seen{d};
  std::deque<std::pair<std::size_t, std::size_t>> queue{{0, 0}};  // (index, distance)
  while (!queue.empty()) {
    auto [idx, dist] = queue.front();
    queue.pop_front();
    if (dist == bound) continue;
    SlicedDiagram cur = out[idx].diagram;
    for (std::size_t i = 0; i + 1 < cur.layers.size(); ++i) {
      if (auto next = exchange_adjacent(g, cur, i)) {
        if (seen.insert(*next).second) {
          std::vector<std::size_t> moves = out[idx].moves;
          moves.push_back(i);
          out.push_back({std::move(*next), std::move(moves)});
          queue.push_back({out.size() - 1, dist + 1});
        }
      }
    }
  }
  return out;
}

}  // namespace detail

// All occurrences of the rule's source pattern (lhs when forward, rhs when
// reversed) in exchange representatives of d within search_bound moves.
inline std::vector<Occurrence> find_matches(const TwoGraph& g, const SlicedDiagram& d,
                                            const RewriteRule& rule, std::size_t search_bound,
                                            bool forward = true) {
  const SlicedDiagram& pat = forward ? rule.lhs : rule.rhs;
  std::vector<Occurrence> out;
  for (const auto& rep : detail::exchange_reps(g, d, search_bound)) {
    if (pat.layers.empty()) {
      for (auto [i, o] : detail::identity_matches(g, rep.diagram, pat))
        out.push_back({rep.moves, i, o, forward});
    } else {
      for (std::size_t i = 0; i + pat.layers.size() <= rep.diagram.layers.size(); ++i)
        if (auto lw = detail::match_window(g, rep.diagram, i, pat))
          out.push_back({rep.moves, i, *lw, forward});
    }
  }
  return out;
}

// Replace the matched pattern by the rule's other side; the result is
// normalized. Throws DiagramError on a stale occurrence.
inline SlicedDiagram apply_rule(const TwoGraph& g, const SlicedDiagram& d, const RewriteRule& rule,
                                const Occurrence& occ) {
  SlicedDiagram rep = d;
  for (std::size_t mv : occ.premoves) {
    auto next = exchange_adjacent(g, rep, mv);
    if (!next) throw DiagramError("stale occurrence: exchange prefix no longer applies");
    rep = std::move(*next);
  }
  const SlicedDiagram& pat = occ.forward ? rule.lhs : rule.rhs;
  const SlicedDiagram& sub = occ.forward ? rule.rhs : rule.lhs;

  std::vector<std::string> in_path;  // input path of the window
  if (pat.layers.empty()) {
    if (occ.layer > rep.layers.size()) throw DiagramError("stale occurrence: layer out of range");
    in_path = occ.layer == 0 ? rep.domain.wires : layer_output(g, rep.layers[occ.layer - 1]);
    if (occ.offset + pat.domain.wires.size() > in_path.size() ||
        !std::equal(pat.domain.wires.begin(), pat.domain.wires.end(),
                    in_path.begin() + occ.offset))
      throw DiagramError("stale occurrence: boundary path mismatch");
  } else {
    auto lw = detail::match_window(g, rep, occ.layer, pat);
    if (!lw || *lw != occ.offset) throw DiagramError("stale occurrence: pattern mismatch");
    in_path = layer_input(g, rep.layers[occ.layer]);
  }
  std::vector<std::string> lctx(in_path.begin(), in_path.begin() + occ.offset);
  std::vector<std::string> rctx(in_path.begin() + occ.offset + pat.domain.wires.size(),
                                in_path.end());

  SlicedDiagram out{rep.domain, {}};
  out.layers.assign(rep.layers.begin(), rep.layers.begin() + occ.layer);
  for (const Layer& l : sub.layers) {
    Layer nl;
    nl.left = lctx;
    nl.left.insert(nl.left.end(), l.left.begin(), l.left.end());
    nl.gen = l.gen;
    nl.right = l.right;
    nl.right.insert(nl.right.end(), rctx.begin(), rctx.end());
    out.layers.push_back(std::move(nl));
  }
  out.layers.insert(out.layers.end(), rep.layers.begin() + occ.layer + pat.layers.size(),
                    rep.layers.end());
  assert_valid(g, out);
  if (codomain(g, out) != codomain(g, rep)) throw DiagramError("rule application broke the boundary");
  return normalize(g, out);
}

struct Verdict {
  enum Kind { Equal, Distinct, Unknown } kind = Unknown;
  RewriteTrace trace;    // for Equal
  std::string witness;   // for Distinct
};

// Hook deciding semantic distinctness; returns a witness description when the
// diagrams provably differ (e.g. different evaluations in a shipped model).
using DistinctHook =
    std::function<std::optional<std::string>(const SlicedDiagram&, const SlicedDiagram&)>;

inline constexpr std::size_t kDefaultDepth = 32;
inline constexpr std::size_t kDefaultSearchBound = 8;
inline constexpr std::size_t kDefaultNodeCap = 20000;

// Three-valued bounded equality: BFS over normalized diagrams under the rules
// (both orientations for invertible ones), up to `depth` applications.
inline Verdict bounded_eq(const TwoGraph& g, const SlicedDiagram& d1, const SlicedDiagram& d2,
                          const EquationSet& rules, std::size_t depth = kDefaultDepth,
                          std::size_t search_bound = kDefaultSearchBound,
                          const DistinctHook& hook = {}, std::size_t node_cap = kDefaultNodeCap) {
  if (d1.domain != d2.domain) throw DiagramError("bounded_eq: domain mismatch");
  if (codomain(g, d1) != codomain(g, d2)) throw DiagramError("bounded_eq: codomain mismatch");
  SlicedDiagram start = normalize(g, d1);
  SlicedDiagram goal = normalize(g, d2);

  std::map<SlicedDiagram, std::pair<SlicedDiagram, TraceStep>> parent;
  auto trace_to = [&](SlicedDiagram at) {
    std::vector<TraceStep> steps;
    while (at != start) {
      auto& [prev, step] = parent.at(at);
      steps.push_back(step);
      at = prev;
    }
    std::reverse(steps.begin(), steps.end());
    return RewriteTrace{start, std::move(steps)};
  };

  if (start == goal) return {Verdict::Equal, RewriteTrace{start, {}}, ""};
  std::set<SlicedDiagram> seen{start};
  std::deque<std::pair<SlicedDiagram, std::size_t>> queue{{start, 0}};
  bool truncated = false;
  while (!queue.empty()) {
    auto [cur, dist] = queue.front();
    queue.pop_front();
    if (dist == depth) {
      truncated = true;
      continue;
    }
    for (const auto& rule : rules) {
      for (bool fwd : rule.invertible ? std::vector<bool>{true, false} : std::vector<bool>{true}) {
        for (const auto& occ : find_matches(g, cur, rule, search_bound, fwd)) {
          SlicedDiagram next = apply_rule(g, cur, rule, occ);
          if (!seen.insert(next).second) continue;
          if (seen.size() > node_cap) return {Verdict::Unknown, {}, ""};
          parent.emplace(next, std::make_pair(cur, TraceStep{rule.name, occ.layer, occ.offset, fwd}));
          if (next == goal) return {Verdict::Equal, trace_to(next), ""};
          queue.push_back({std::move(next), dist + 1});
        }
      }
    }
  }
  (void)truncated;
  if (hook) {
    if (auto w = hook(d1, d2)) return {Verdict::Distinct, {}, *w};
  }
  return {Verdict::Unknown, {}, ""};
}

struct TraceReport {
  bool ok = false;
  std::size_t failed_step = 0;                // valid when !ok
  std::vector<SlicedDiagram> intermediates;   // normalized, including endpoints
};

// Replays a trace step by step; each step must match at its recorded
// (layer, offset) in some exchange representative within search_bound.
inline TraceReport validate_trace(const TwoGraph& g, const RewriteTrace& trace,
                                  const EquationSet& rules,
                                  std::size_t search_bound = kDefaultSearchBound) {
  TraceReport report;
  SlicedDiagram cur = normalize(g, trace.start);
  report.intermediates.push_back(cur);
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const TraceStep& s = trace.steps[k];
    const RewriteRule* rule = nullptr;
    for (const auto& r : rules)
      if (r.name == s.rule) rule = &r;
    if (!rule || (!s.forward && !rule->invertible)) {
      report.failed_step = k;
      return report;
    }
    bool applied = false;
    for (const auto& occ : find_matches(g, cur, *rule, search_bound, s.forward)) {
      if (occ.layer == s.layer && occ.offset == s.offset) {
        cur = apply_rule(g, cur, *rule, occ);
        report.intermediates.push_back(cur);
        applied = true;
        break;
      }
    }
    if (!applied) {
      report.failed_step = k;
      return report;
    }
  }
  report.ok = true;
  return report;
}

inline nlohmann::json trace_steps_to_json(const RewriteTrace& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : t.steps)
    out.push_back({{"rule", s.rule},
                   {"layer", s.layer},
                   {"offset", s.offset},
                   {"orientation", s.forward ? "forward" : "reverse"}});
  return out;
}

inline std::vector<TraceStep> trace_steps_from_json(const nlohmann::json& j) {
  std::vector<TraceStep> steps;
  for (const auto& s : j)
    steps.push_back({s.at("rule").get<std::string>(), s.at("layer").get<std::size_t>(),
                     s.at("offset").get<std::size_t>(),
                     s.at("orientation").get<std::string>() == "forward"});
  return steps;
}

}  // namespace collage
