#pragma once

#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "collage/diagram.hpp"
#include "collage/fincat.hpp"
#include "collage/models.hpp"
#include "collage/present.hpp"

// Brute-force oracles and seeded random instance generators. Each oracle
// recomputes a result by a method independent of the fast path (BFS closure
// instead of union-find, raw enumeration instead of normal-form search).

namespace collage::oracle {

struct Report {
  bool ok = true;
  std::string summary;
};

// ---------------------------------------------------------------------------
// The fixed exchange test graph and small-diagram enumeration.

// 2 zero-cells, 4 one-generators, 3 two-generators; h is degenerate 0-ary.
inline TwoGraph test_graph() {
  TwoGraph g;
  g.name = "testgraph";
  g.zero_cells = {"P", "Q"};
  g.one_generators = {{"a", "P", "P"}, {"w", "P", "P"}, {"b", "P", "Q"}, {"c", "Q", "Q"}};
  g.two_generators = {{"f", "P", {"a"}, "P", {"a"}},
                      {"g", "P", {"a", "a"}, "P", {"a"}},
                      {"h", "P", {}, "P", {}}};
  return g;
}

inline std::vector<OneCellPath> all_paths(const TwoGraph& g, std::size_t max_wires) {
  std::vector<OneCellPath> out;
  for (const auto& z : g.zero_cells) out.push_back({z, {}});
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_wires; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      std::string at = path_end(g, out[i]);
      for (const auto& o : g.one_generators) {
        if (o.src != at) continue;
        OneCellPath p = out[i];
        p.wires.push_back(o.name);
        out.push_back(std::move(p));
      }
    }
    begin = end;
  }
  return out;
}

inline std::vector<SlicedDiagram> all_diagrams(const TwoGraph& g, std::size_t max_layers,
                                               std::size_t max_wires) {
  std::vector<SlicedDiagram> out;
  for (const auto& p : all_paths(g, max_wires)) {
    std::vector<SlicedDiagram> frontier{identity(p)};
    out.push_back(identity(p));
    for (std::size_t n = 0; n < max_layers; ++n) {
      std::vector<SlicedDiagram> next;
      for (const auto& d : frontier) {
        for (auto& l : detail::applicable_layers(g, codomain(g, d))) {
          SlicedDiagram e = d;
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

// ---------------------------------------------------------------------------
// Generic brute-force closure: connected components by BFS over the
// symmetric closure of the generating relation.

template <class Elem>
std::map<Elem, std::size_t> bfs_classes(const std::vector<Elem>& elems,
                                        const std::vector<std::pair<Elem, Elem>>& relation) {
  std::map<Elem, std::vector<const Elem*>> adj;
  for (const auto& e : elems) adj[e];
  for (const auto& [a, b] : relation) {
    adj[a].push_back(&adj.find(b)->first);
    adj[b].push_back(&adj.find(a)->first);
  }
  std::map<Elem, std::size_t> cls;
  std::size_t next = 0;
  for (const auto& [e, nbrs] : adj) {
    if (cls.count(e)) continue;
    std::size_t k = next++;
    std::deque<const Elem*> queue{&e};
    cls[e] = k;
    while (!queue.empty()) {
      const Elem* cur = queue.front();
      queue.pop_front();
      for (const Elem* n : adj.at(*cur))
        if (cls.emplace(*n, k).second) queue.push_back(n);
    }
  }
  return cls;
}

// True iff two labelings of the same elements induce the same partition.
template <class Elem>
bool same_partition(const std::map<Elem, std::size_t>& a, const std::map<Elem, std::size_t>& b) {
  if (a.size() != b.size()) return false;
  std::map<std::size_t, std::size_t> fwd, bwd;
  for (const auto& [e, ka] : a) {
    auto it = b.find(e);
    if (it == b.end()) return false;
    auto [f, fresh1] = fwd.emplace(ka, it->second);
    if (f->second != it->second) return false;
    auto [g, fresh2] = bwd.emplace(it->second, ka);
    if (g->second != ka) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Random finite categories: concrete categories of functions between small
// finite sets, closed under composition.

namespace detail {

struct Fun {
  std::string src, tgt;
  std::vector<int> map;  // function on {0..size(src)-1}
  friend auto operator<=>(const Fun&, const Fun&) = default;
};

inline std::string fun_name(const Fun& f) {
  std::string out = "f_" + f.src + "_" + f.tgt + "_";
  for (int v : f.map) out += std::to_string(v);
  return out;
}

}  // namespace detail

// A random category with <= 3 objects and <= max_morphisms morphisms;
// retries with fresh draws until the compositional closure fits.
inline FinCategory random_category(std::mt19937& rng, std::size_t max_morphisms = 20) {
  for (int attempt = 0;; ++attempt) {
    std::size_t nobj = 1 + rng() % 3;
    std::vector<std::size_t> sizes;
    std::vector<std::string> objects;
    for (std::size_t i = 0; i < nobj; ++i) {
      sizes.push_back(1 + rng() % 3);
      objects.push_back("o" + std::to_string(i));
    }
    std::set<detail::Fun> funs;
    for (std::size_t i = 0; i < nobj; ++i) {
      detail::Fun id{objects[i], objects[i], {}};
      for (std::size_t v = 0; v < sizes[i]; ++v) id.map.push_back(static_cast<int>(v));
      funs.insert(id);
    }
    std::size_t ngen = 1 + rng() % 3;
    for (std::size_t k = 0; k < ngen; ++k) {
      std::size_t si = rng() % nobj, ti = rng() % nobj;
      detail::Fun f{objects[si], objects[ti], {}};
      for (std::size_t v = 0; v < sizes[si]; ++v)
        f.map.push_back(static_cast<int>(rng() % sizes[ti]));
      funs.insert(f);
    }
    // Close under composition.
    bool grew = true;
    bool too_big = false;
    while (grew && !too_big) {
      grew = false;
      std::vector<detail::Fun> snapshot(funs.begin(), funs.end());
      for (const auto& f : snapshot)
        for (const auto& g : snapshot) {
          if (f.tgt != g.src) continue;
          detail::Fun h{f.src, g.tgt, {}};
          for (int v : f.map) h.map.push_back(g.map[static_cast<std::size_t>(v)]);
          if (funs.insert(h).second) grew = true;
          if (funs.size() > max_morphisms) {
            too_big = true;
            break;
          }
        }
    }
    if (too_big) continue;
    FinCategory c;
    c.name = "random" + std::to_string(attempt);
    c.objects = objects;
    for (const auto& f : funs) c.morphisms[detail::fun_name(f)] = {f.src, f.tgt};
    for (std::size_t i = 0; i < nobj; ++i) {
      detail::Fun id{objects[i], objects[i], {}};
      for (std::size_t v = 0; v < sizes[i]; ++v) id.map.push_back(static_cast<int>(v));
      c.identities[objects[i]] = detail::fun_name(id);
    }
    for (const auto& f : funs)
      for (const auto& g : funs) {
        if (f.tgt != g.src) continue;
        detail::Fun h{f.src, g.tgt, {}};
        for (int v : f.map) h.map.push_back(g.map[static_cast<std::size_t>(v)]);
        c.composition[{detail::fun_name(f), detail::fun_name(g)}] = detail::fun_name(h);
      }
    return c;
  }
}

// A random endo-profunctor on X: a sum of representables
// Hom(-, U_k) x Hom(V_k, =), acting by composition on both sides.
inline FinProfunctor random_profunctor(std::mt19937& rng, const FinCategory& X) {
  std::size_t K = 1 + rng() % 2;
  std::vector<std::pair<std::string, std::string>> summands;
  for (std::size_t k = 0; k < K; ++k)
    summands.push_back({X.objects[rng() % X.objects.size()],
                        X.objects[rng() % X.objects.size()]});
  auto name = [](std::size_t k, const std::string& f, const std::string& g) {
    return "r" + std::to_string(k) + ":" + f + ":" + g;
  };
  FinProfunctor P;
  for (const auto& x : X.objects)
    for (const auto& y : X.objects) {
      std::vector<std::string>& vs = P.sets[{x, y}];
      for (std::size_t k = 0; k < K; ++k)
        for (const auto& f : X.hom(x, summands[k].first))
          for (const auto& g : X.hom(summands[k].second, y)) vs.push_back(name(k, f, g));
      std::sort(vs.begin(), vs.end());
    }
  for (const auto& x : X.objects)
    for (const auto& y : X.objects)
      for (std::size_t k = 0; k < K; ++k)
        for (const auto& f : X.hom(x, summands[k].first))
          for (const auto& g : X.hom(summands[k].second, y)) {
            std::string v = name(k, f, g);
            for (const auto& [m, me] : X.morphisms)
              if (me.second == x) P.lact[{m, y, v}] = name(k, X.compose(m, f), g);
            for (const auto& [n, ne] : X.morphisms)
              if (ne.first == y) P.ract[{n, x, v}] = name(k, f, X.compose(g, n));
          }
  return P;
}

// Brute-force coend: the same zig-zag relation as coend(), closed by BFS.
inline std::map<CoendElement, std::size_t> brute_coend(const FinCategory& X,
                                                       const FinProfunctor& P) {
  std::vector<CoendElement> elems;
  for (const auto& M : X.objects)
    for (const auto& v : P.at(M, M)) elems.push_back({M, v});
  std::vector<std::pair<CoendElement, CoendElement>> rel;
  for (const auto& [m, me] : X.morphisms)
    for (const auto& x : P.at(me.second, me.first))
      rel.push_back({{me.first, P.lact_at(m, me.first, x)},
                     {me.second, P.ract_at(m, me.second, x)}});
  return bfs_classes(elems, rel);
}

// ---------------------------------------------------------------------------
// Random instances for the tensor-quotient check: T a (trivial, Z/n)- and
// R a (Z/n, trivial)-bimodular hom-profunctor, the shared Z/n acting on
// deloopings of Z/m through a random monoid homomorphism.

namespace detail {

inline std::size_t gcd_sz(std::size_t a, std::size_t b) { return b == 0 ? a : gcd_sz(b, a % b); }

// A homomorphism Z/n -> Z/m is x -> k*x with k a multiple of m / gcd(n, m).
inline std::size_t random_hom_multiplier(std::mt19937& rng, std::size_t n, std::size_t m) {
  std::size_t step = m / gcd_sz(n, m);
  std::vector<std::size_t> ks;
  for (std::size_t k = 0; k < m; k += step) ks.push_back(k);
  return ks[rng() % ks.size()];
}

}  // namespace detail

// Delooping of Z/m as a bimodular category: one side trivial, the other a
// Z/n translation action through x -> k*x.
inline FinBimodularCategory zn_module(std::size_t n, std::size_t m, std::size_t k,
                                      bool action_on_right) {
  FinMonoidalCategory N = zn_model(n);
  FinMonoidalCategory C = zn_model(m);
  FinBimodularCategory b;
  b.name = "Z" + std::to_string(m) + " as Z" + std::to_string(n) +
           (action_on_right ? "-right" : "-left") + "-module (k=" + std::to_string(k) + ")";
  b.carrier = C.cat;
  b.left = action_on_right ? trivial_monoidal() : N;
  b.right = action_on_right ? N : trivial_monoidal();
  auto phi = [&](const std::string& x) {
    return std::to_string((std::stoul(x) * k) % m);
  };
  auto add = [&](const std::string& x, const std::string& y) {
    return std::to_string((std::stoul(x) + std::stoul(y)) % m);
  };
  for (const auto& mo : b.left.cat.objects) b.lact_objects[{mo, "*"}] = "*";
  for (const auto& no : b.right.cat.objects) b.ract_objects[{"*", no}] = "*";
  for (const auto& [f, fe] : C.cat.morphisms) {
    for (const auto& [g, ge] : b.left.cat.morphisms)
      b.lact_morphisms[{g, f}] = action_on_right ? f : add(phi(g), f);
    for (const auto& [g, ge] : b.right.cat.morphisms)
      b.ract_morphisms[{f, g}] = action_on_right ? add(f, phi(g)) : f;
  }
  return b;
}

struct TensorInstance {
  FinBimodularProfunctor T, R;
};

inline TensorInstance random_tensor_instance(std::mt19937& rng) {
  std::size_t n = 2 + rng() % 3;
  std::size_t m1 = 2 + rng() % 3;
  std::size_t m2 = 2 + rng() % 3;
  std::size_t k1 = detail::random_hom_multiplier(rng, n, m1);
  std::size_t k2 = detail::random_hom_multiplier(rng, n, m2);
  TensorInstance out;
  out.T = hom_profunctor(zn_module(n, m1, k1, true));
  out.R = hom_profunctor(zn_module(n, m2, k2, false));
  out.T.point = PElem{"*", "*", "0"};
  out.R.point = PElem{"*", "*", "0"};
  return out;
}

// Brute-force closure of the tensor relation (t^N(t), r) ~ (t, t_N(r)),
// over the disjoint union of all index blocks.
inline std::map<std::pair<TensorBimodularResult::Index, std::pair<std::string, std::string>>,
                std::size_t>
brute_tensor_classes(const FinBimodularProfunctor& T, const FinBimodularProfunctor& R) {
  using Key = std::pair<TensorBimodularResult::Index, std::pair<std::string, std::string>>;
  std::vector<Key> elems;
  for (const auto& x : T.C.carrier.objects)
    for (const auto& y : R.C.carrier.objects)
      for (const auto& xp : T.D.carrier.objects)
        for (const auto& yp : R.D.carrier.objects)
          for (const auto& t : T.T.at(x, xp))
            for (const auto& r : R.T.at(y, yp))
              elems.push_back({{x, y, xp, yp}, {t, r}});
  std::vector<std::pair<Key, Key>> rel;
  for (const auto& n : T.N.cat.objects)
    for (const auto& e : elems) {
      const auto& [ix, pr] = e;
      const auto& [x, y, xp, yp] = ix;
      PElem tn = T.t_right(n, PElem{x, xp, pr.first});
      PElem rn = R.t_left(n, PElem{y, yp, pr.second});
      rel.push_back({{{tn.x, y, tn.y, yp}, {tn.v, pr.second}},
                     {{x, rn.x, xp, rn.y}, {pr.first, rn.v}}});
    }
  return bfs_classes(elems, rel);
}

// ---------------------------------------------------------------------------
// Top-level oracle runs (shared by the CLI `oracle` subcommand and tests).

// eq_free must agree with exchange-move BFS reachability: every diagram's
// BFS class carries a single normal form, and contains it.
inline Report exchange_bfs(std::size_t max_layers = 3, std::size_t max_wires = 3) {
  TwoGraph g = test_graph();
  std::size_t checked = 0;
  for (const auto& d : all_diagrams(g, max_layers, max_wires)) {
    SlicedDiagram nf = normalize(g, d);
    std::size_t pairs = d.layers.size() < 2 ? 0 : d.layers.size() * (d.layers.size() - 1) / 2;
    std::set<SlicedDiagram> reach = exchange_oracle(g, d, pairs * pairs);
    bool found = reach.count(nf) == 1;
    for (const auto& e : reach)
      if (normalize(g, e) != nf)
        return {false, "normal form differs inside one exchange class (diagram " +
                           to_json(d).dump() + ")"};
    if (!found)
      return {false, "normal form not BFS-reachable from " + to_json(d).dump()};
    ++checked;
  }
  return {true, "exchange-bfs: " + std::to_string(checked) + " diagrams, all classes agree"};
}

inline Report coend_closure(unsigned seed, std::size_t instances = 100) {
  std::mt19937 rng(seed);
  for (std::size_t i = 0; i < instances; ++i) {
    FinCategory X = random_category(rng);
    FinProfunctor P = random_profunctor(rng, X);
    CoendResult fast = coend(X, P);
    std::map<CoendElement, std::size_t> fast_map;
    for (std::size_t e = 0; e < fast.elements.size(); ++e)
      fast_map[fast.elements[e]] = fast.cls[e];
    auto slow = brute_coend(X, P);
    if (!same_partition(fast_map, slow))
      return {false, "coend-closure: disagreement at instance " + std::to_string(i) +
                         " (seed " + std::to_string(seed) + ")"};
  }
  return {true, "coend-closure: " + std::to_string(instances) + " seeded instances agree"};
}

inline Report hom_count(std::size_t max_layers = 3, std::size_t max_wires = 3) {
  TwoGraph g = test_graph();
  // Brute force: enumerate every diagram, group by boundary, count normal
  // forms; compare against hom_enumerate per boundary.
  std::map<std::pair<OneCellPath, OneCellPath>, std::set<SlicedDiagram>> brute;
  for (const auto& d : all_diagrams(g, max_layers, max_wires))
    brute[{d.domain, codomain(g, d)}].insert(normalize(g, d));
  std::size_t pairs = 0;
  for (const auto& [bnd, forms] : brute) {
    HomEnumeration he = hom_enumerate(g, {}, bnd.first, bnd.second, max_layers);
    if (he.forms.size() != forms.size())
      return {false, "hom-count: mismatch at a boundary (" + std::to_string(he.forms.size()) +
                         " vs " + std::to_string(forms.size()) + ")"};
    ++pairs;
  }
  return {true, "hom-count: " + std::to_string(pairs) + " boundaries agree"};
}

}  // namespace collage::oracle
