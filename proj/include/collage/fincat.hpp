#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "collage/sig.hpp"

// Finite semantic backend: categories, monoidal categories, bimodular
// categories, lax monoidal functors and bimodular profunctors as closed
// tables, with exhaustive law checkers, coends by union-find, and the two
// Kleisli promonads of a lax monoidal functor.

namespace collage {

struct FinCatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxObjects = 64;
inline constexpr std::size_t kMaxMorphisms = 4096;

// A category given by tables. Morphism names are globally unique, so a name
// determines its endpoints.
struct FinCategory {
  std::string name;
  std::vector<std::string> objects;
  std::map<std::string, std::pair<std::string, std::string>> morphisms;  // name -> (src, tgt)
  std::map<std::string, std::string> identities;                         // object -> morphism
  std::map<std::pair<std::string, std::string>, std::string> composition;  // (f, g) -> f;g

  friend bool operator==(const FinCategory&, const FinCategory&) = default;

  bool has_object(const std::string& o) const {
    return std::find(objects.begin(), objects.end(), o) != objects.end();
  }
  const std::string& src(const std::string& f) const { return endpoints(f).first; }
  const std::string& tgt(const std::string& f) const { return endpoints(f).second; }
  const std::pair<std::string, std::string>& endpoints(const std::string& f) const {
    auto it = morphisms.find(f);
    if (it == morphisms.end()) throw FinCatError(name + ": unknown morphism '" + f + "'");
    return it->second;
  }
  const std::string& id(const std::string& o) const {
    auto it = identities.find(o);
    if (it == identities.end()) throw FinCatError(name + ": no identity at '" + o + "'");
    return it->second;
  }
  // f;g in diagrammatic order.
  const std::string& compose(const std::string& f, const std::string& g) const {
    auto it = composition.find({f, g});
    if (it == composition.end())
      throw FinCatError(name + ": no composite for '" + f + "' ; '" + g + "'");
    return it->second;
  }
  std::vector<std::string> hom(const std::string& a, const std::string& b) const {
    std::vector<std::string> out;
    for (const auto& [n, st] : morphisms)
      if (st.first == a && st.second == b) out.push_back(n);
    return out;
  }

  void guard_size() const {
    if (objects.size() > kMaxObjects || morphisms.size() > kMaxMorphisms)
      throw FinCatError(name + ": size guard exceeded (" + std::to_string(objects.size()) +
                        " objects, " + std::to_string(morphisms.size()) +
                        " morphisms; limits are " + std::to_string(kMaxObjects) + "/" +
                        std::to_string(kMaxMorphisms) + ")");
  }
};

namespace detail {

inline std::string tuple_msg(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

}  // namespace detail

inline std::vector<Diagnostic> check_category(const FinCategory& c) {
  std::vector<Diagnostic> out;
  c.guard_size();
  for (const auto& [f, st] : c.morphisms) {
    if (!c.has_object(st.first) || !c.has_object(st.second))
      out.push_back({"declared objects", f, "endpoint of '" + f + "' is not a declared object"});
  }
  for (const auto& o : c.objects) {
    auto it = c.identities.find(o);
    if (it == c.identities.end()) {
      out.push_back({"totality", o, "missing identity at '" + o + "'"});
      continue;
    }
    const auto& e = c.morphisms.at(it->second);
    if (e.first != o || e.second != o)
      out.push_back({"unit", o, "identity of '" + o + "' is not an endomorphism of it"});
  }
  // Totality and endpoint discipline of composition.
  for (const auto& [f, fe] : c.morphisms)
    for (const auto& [g, ge] : c.morphisms) {
      auto it = c.composition.find({f, g});
      if (fe.second != ge.first) {
        if (it != c.composition.end())
          out.push_back({"totality", f, "composite defined for non-composable pair (" + f + ", " +
                                            g + ")"});
        continue;
      }
      if (it == c.composition.end()) {
        out.push_back({"totality", f, "missing composite (" + f + " ; " + g + ")"});
        continue;
      }
      const auto& he = c.morphisms.at(it->second);
      if (he.first != fe.first || he.second != ge.second)
        out.push_back({"totality", it->second,
                       "composite (" + f + " ; " + g + ") has wrong endpoints"});
    }
  if (!out.empty()) {  // law checks need total tables
    std::sort(out.begin(), out.end());
    return out;
  }
  for (const auto& [f, fe] : c.morphisms) {
    if (c.compose(c.id(fe.first), f) != f || c.compose(f, c.id(fe.second)) != f)
      out.push_back({"unit", f, "identity law fails at " + f});
    for (const auto& [g, ge] : c.morphisms) {
      if (fe.second != ge.first) continue;
      for (const auto& [h, he] : c.morphisms) {
        if (ge.second != he.first) continue;
        if (c.compose(c.compose(f, g), h) != c.compose(f, c.compose(g, h)))
          out.push_back({"associativity", f,
                         "(f;g);h != f;(g;h) at " + detail::tuple_msg({f, g, h})});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Strict monoidal category: tensor tables on objects and morphisms.
struct FinMonoidalCategory {
  FinCategory cat;
  std::string unit;
  std::map<std::pair<std::string, std::string>, std::string> tensor_objects;
  std::map<std::pair<std::string, std::string>, std::string> tensor_morphisms;

  friend bool operator==(const FinMonoidalCategory&, const FinMonoidalCategory&) = default;

  const std::string& tensor_obj(const std::string& a, const std::string& b) const {
    auto it = tensor_objects.find({a, b});
    if (it == tensor_objects.end())
      throw FinCatError(cat.name + ": no tensor of objects '" + a + "', '" + b + "'");
    return it->second;
  }
  const std::string& tensor_mor(const std::string& f, const std::string& g) const {
    auto it = tensor_morphisms.find({f, g});
    if (it == tensor_morphisms.end())
      throw FinCatError(cat.name + ": no tensor of morphisms '" + f + "', '" + g + "'");
    return it->second;
  }
  std::string tensor_obj_path(const std::vector<std::string>& os) const {
    std::string acc = unit;
    for (const auto& o : os) acc = tensor_obj(acc, o);
    return acc;
  }
};

inline std::vector<Diagnostic> check_monoidal(const FinMonoidalCategory& m) {
  std::vector<Diagnostic> out = check_category(m.cat);
  const FinCategory& c = m.cat;
  if (!c.has_object(m.unit)) out.push_back({"declared objects", m.unit, "unit object undeclared"});
  for (const auto& a : c.objects)
    for (const auto& b : c.objects)
      if (!m.tensor_objects.count({a, b}))
        out.push_back({"totality", a, "missing object tensor (" + a + ", " + b + ")"});
  for (const auto& [f, fe] : c.morphisms)
    for (const auto& [g, ge] : c.morphisms)
      if (!m.tensor_morphisms.count({f, g}))
        out.push_back({"totality", f, "missing morphism tensor (" + f + ", " + g + ")"});
  if (!out.empty()) {
    std::sort(out.begin(), out.end());
    return out;
  }
  for (const auto& a : c.objects) {
    if (m.tensor_obj(m.unit, a) != a || m.tensor_obj(a, m.unit) != a)
      out.push_back({"unit", a, "object unit law fails at " + a});
    for (const auto& b : c.objects)
      for (const auto& d : c.objects)
        if (m.tensor_obj(m.tensor_obj(a, b), d) != m.tensor_obj(a, m.tensor_obj(b, d)))
          out.push_back({"associativity", a,
                         "object tensor associativity fails at " + detail::tuple_msg({a, b, d})});
  }
  for (const auto& [f, fe] : c.morphisms) {
    if (m.tensor_mor(c.id(m.unit), f) != f || m.tensor_mor(f, c.id(m.unit)) != f)
      out.push_back({"unit", f, "morphism unit law fails at " + f});
    for (const auto& [g, ge] : c.morphisms) {
      const std::string& t = m.tensor_mor(f, g);
      if (c.src(t) != m.tensor_obj(fe.first, ge.first) ||
          c.tgt(t) != m.tensor_obj(fe.second, ge.second))
        out.push_back({"functoriality", f, "tensor (" + f + ", " + g + ") has wrong endpoints"});
      for (const auto& [h, he] : c.morphisms)
        if (m.tensor_mor(m.tensor_mor(f, g), h) != m.tensor_mor(f, m.tensor_mor(g, h)))
          out.push_back({"associativity", f,
                         "morphism tensor associativity fails at " +
                             detail::tuple_msg({f, g, h})});
    }
  }
  for (const auto& a : c.objects)
    for (const auto& b : c.objects)
      if (m.tensor_mor(c.id(a), c.id(b)) != c.id(m.tensor_obj(a, b)))
        out.push_back({"functoriality", a, "tensor of identities fails at (" + a + ", " + b + ")"});
  // Interchange: (f tensor g);(f' tensor g') = (f;f') tensor (g;g').
  for (const auto& [f, fe] : c.morphisms)
    for (const auto& [f2, f2e] : c.morphisms) {
      if (fe.second != f2e.first) continue;
      for (const auto& [g, ge] : c.morphisms)
        for (const auto& [g2, g2e] : c.morphisms) {
          if (ge.second != g2e.first) continue;
          if (c.compose(m.tensor_mor(f, g), m.tensor_mor(f2, g2)) !=
              m.tensor_mor(c.compose(f, f2), c.compose(g, g2)))
            out.push_back({"interchange", f,
                           "interchange fails at " + detail::tuple_msg({f, g, f2, g2})});
        }
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Bimodular category: carrier with a left M-action and a right N-action.
struct FinBimodularCategory {
  std::string name;
  FinMonoidalCategory left, right;
  FinCategory carrier;
  std::map<std::pair<std::string, std::string>, std::string> lact_objects;    // (M-obj, obj)
  std::map<std::pair<std::string, std::string>, std::string> lact_morphisms;  // (M-mor, mor)
  std::map<std::pair<std::string, std::string>, std::string> ract_objects;    // (obj, N-obj)
  std::map<std::pair<std::string, std::string>, std::string> ract_morphisms;

  friend bool operator==(const FinBimodularCategory&, const FinBimodularCategory&) = default;

  const std::string& lact_obj(const std::string& m, const std::string& x) const {
    auto it = lact_objects.find({m, x});
    if (it == lact_objects.end())
      throw FinCatError(name + ": no left action (" + m + " |> " + x + ")");
    return it->second;
  }
  const std::string& lact_mor(const std::string& m, const std::string& f) const {
    auto it = lact_morphisms.find({m, f});
    if (it == lact_morphisms.end())
      throw FinCatError(name + ": no left action (" + m + " |> " + f + ")");
    return it->second;
  }
  const std::string& ract_obj(const std::string& x, const std::string& n) const {
    auto it = ract_objects.find({x, n});
    if (it == ract_objects.end())
      throw FinCatError(name + ": no right action (" + x + " <| " + n + ")");
    return it->second;
  }
  const std::string& ract_mor(const std::string& f, const std::string& n) const {
    auto it = ract_morphisms.find({f, n});
    if (it == ract_morphisms.end())
      throw FinCatError(name + ": no right action (" + f + " <| " + n + ")");
    return it->second;
  }
};

inline std::vector<Diagnostic> check_bimodular(const FinBimodularCategory& b) {
  std::vector<Diagnostic> out;
  for (auto* part : {&b.left, &b.right})
    for (auto& d : check_monoidal(*part)) out.push_back(d);
  for (auto& d : check_category(b.carrier)) out.push_back(d);
  if (!out.empty()) return out;
  const FinCategory& c = b.carrier;
  auto check_action = [&](const FinMonoidalCategory& m, bool is_left) {
    std::string tag = is_left ? "left action" : "right action";
    auto aobj = [&](const std::string& mo, const std::string& x) {
      return is_left ? b.lact_obj(mo, x) : b.ract_obj(x, mo);
    };
    auto amor = [&](const std::string& mf, const std::string& f) {
      return is_left ? b.lact_mor(mf, f) : b.ract_mor(f, mf);
    };
    for (const auto& x : c.objects) {
      if (aobj(m.unit, x) != x)
        out.push_back({tag, x, "unit action is not the identity at " + x});
      for (const auto& mo : m.cat.objects)
        for (const auto& mo2 : m.cat.objects) {
          std::string two = is_left ? aobj(mo, aobj(mo2, x)) : aobj(mo2, aobj(mo, x));
          std::string one = is_left ? aobj(m.tensor_obj(mo, mo2), x)
                                    : aobj(m.tensor_obj(mo, mo2), x);
          if (two != one)
            out.push_back({tag, x,
                           "action associativity fails at " + detail::tuple_msg({mo, mo2, x})});
        }
    }
    for (const auto& [f, fe] : c.morphisms) {
      if (amor(m.cat.id(m.unit), f) != f)
        out.push_back({tag, f, "unit action is not the identity at " + f});
      for (const auto& [mf, mfe] : m.cat.morphisms) {
        const std::string& r = amor(mf, f);
        std::string want_src = is_left ? b.lact_obj(mfe.first, fe.first)
                                       : b.ract_obj(fe.first, mfe.first);
        std::string want_tgt = is_left ? b.lact_obj(mfe.second, fe.second)
                                       : b.ract_obj(fe.second, mfe.second);
        if (c.src(r) != want_src || c.tgt(r) != want_tgt)
          out.push_back({tag, f, "action of (" + mf + ") on (" + f + ") has wrong endpoints"});
        // Functoriality on composites.
        for (const auto& [mf2, mf2e] : m.cat.morphisms) {
          if (mfe.second != mf2e.first) continue;
          for (const auto& [f2, f2e] : c.morphisms) {
            if (fe.second != f2e.first) continue;
            if (amor(m.cat.compose(mf, mf2), c.compose(f, f2)) != c.compose(amor(mf, f), amor(mf2, f2)))
              out.push_back({tag, f,
                             "action functoriality fails at " +
                                 detail::tuple_msg({mf, mf2, f, f2})});
          }
        }
      }
    }
  };
  check_action(b.left, true);
  check_action(b.right, false);
  // Compatibility: M |> (X <| N) = (M |> X) <| N, on objects and morphisms.
  for (const auto& mo : b.left.cat.objects)
    for (const auto& no : b.right.cat.objects) {
      for (const auto& x : c.objects)
        if (b.lact_obj(mo, b.ract_obj(x, no)) != b.ract_obj(b.lact_obj(mo, x), no))
          out.push_back({"compatibility", x,
                         "object compatibility fails at " + detail::tuple_msg({mo, x, no})});
      for (const auto& [mf, mfe] : b.left.cat.morphisms)
        for (const auto& [nf, nfe] : b.right.cat.morphisms)
          for (const auto& [f, fe] : c.morphisms)
            if (b.lact_mor(mf, b.ract_mor(f, nf)) != b.ract_mor(b.lact_mor(mf, f), nf))
              out.push_back({"compatibility", f,
                             "morphism compatibility fails at " +
                                 detail::tuple_msg({mf, f, nf})});
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// A monoidal category acting on itself by tensor on both sides.
inline FinBimodularCategory self_bimodular(const FinMonoidalCategory& m) {
  FinBimodularCategory b;
  b.name = m.cat.name + " (self-bimodular)";
  b.left = b.right = m;
  b.carrier = m.cat;
  for (const auto& a : m.cat.objects)
    for (const auto& x : m.cat.objects) {
      b.lact_objects[{a, x}] = m.tensor_obj(a, x);
      b.ract_objects[{x, a}] = m.tensor_obj(x, a);
    }
  for (const auto& [f, fe] : m.cat.morphisms)
    for (const auto& [g, ge] : m.cat.morphisms) {
      b.lact_morphisms[{f, g}] = m.tensor_mor(f, g);
      b.ract_morphisms[{g, f}] = m.tensor_mor(g, f);
    }
  return b;
}

// Lax monoidal functor with laxators epsilon : I -> F(I) and
// mu_{X,Y} : F(X) tensor F(Y) -> F(X tensor Y).
struct FinLaxMonoidalFunctor {
  std::string name;
  FinMonoidalCategory dom, cod;
  std::map<std::string, std::string> obj;  // object map
  std::map<std::string, std::string> mor;  // morphism map
  std::string epsilon;
  std::map<std::pair<std::string, std::string>, std::string> mu;

  const std::string& obj_at(const std::string& x) const {
    auto it = obj.find(x);
    if (it == obj.end()) throw FinCatError(name + ": no object image for '" + x + "'");
    return it->second;
  }
  const std::string& mor_at(const std::string& f) const {
    auto it = mor.find(f);
    if (it == mor.end()) throw FinCatError(name + ": no morphism image for '" + f + "'");
    return it->second;
  }
  const std::string& mu_at(const std::string& x, const std::string& y) const {
    auto it = mu.find({x, y});
    if (it == mu.end()) throw FinCatError(name + ": no laxator mu(" + x + ", " + y + ")");
    return it->second;
  }
};

inline std::vector<Diagnostic> check_lax(const FinLaxMonoidalFunctor& F) {
  std::vector<Diagnostic> out;
  const FinCategory& d = F.dom.cat;
  const FinCategory& c = F.cod.cat;
  for (const auto& x : d.objects)
    if (!F.obj.count(x)) out.push_back({"totality", x, "missing object image for " + x});
  for (const auto& [f, fe] : d.morphisms)
    if (!F.mor.count(f)) out.push_back({"totality", f, "missing morphism image for " + f});
  for (const auto& x : d.objects)
    for (const auto& y : d.objects)
      if (!F.mu.count({x, y}))
        out.push_back({"totality", x, "missing laxator mu(" + x + ", " + y + ")"});
  if (!F.epsilon.empty() && c.morphisms.count(F.epsilon) == 0)
    out.push_back({"totality", F.epsilon, "unknown epsilon morphism"});
  if (F.epsilon.empty()) out.push_back({"totality", "epsilon", "missing epsilon"});
  if (!out.empty()) {
    std::sort(out.begin(), out.end());
    return out;
  }
  if (c.src(F.epsilon) != F.cod.unit || c.tgt(F.epsilon) != F.obj_at(F.dom.unit))
    out.push_back({"unitality", F.epsilon, "epsilon is not I -> F(I)"});
  for (const auto& [f, fe] : d.morphisms) {
    const std::string& Ff = F.mor_at(f);
    if (c.src(Ff) != F.obj_at(fe.first) || c.tgt(Ff) != F.obj_at(fe.second))
      out.push_back({"functoriality", f, "image of " + f + " has wrong endpoints"});
  }
  for (const auto& x : d.objects)
    for (const auto& y : d.objects) {
      const std::string& m = F.mu_at(x, y);
      if (c.src(m) != F.cod.tensor_obj(F.obj_at(x), F.obj_at(y)) ||
          c.tgt(m) != F.obj_at(F.dom.tensor_obj(x, y)))
        out.push_back({"naturality", x, "mu(" + x + ", " + y + ") has wrong endpoints"});
    }
  // Composing ill-typed images would throw; report endpoint mismatches first.
  if (!out.empty()) {
    std::sort(out.begin(), out.end());
    return out;
  }
  for (const auto& x : d.objects)
    if (F.mor_at(d.id(x)) != c.id(F.obj_at(x)))
      out.push_back({"functoriality", x, "identity image fails at " + x});
  for (const auto& [f, fe] : d.morphisms)
    for (const auto& [g, ge] : d.morphisms) {
      if (fe.second != ge.first) continue;
      if (F.mor_at(d.compose(f, g)) != c.compose(F.mor_at(f), F.mor_at(g)))
        out.push_back({"functoriality", f, "composition image fails at (" + f + ", " + g + ")"});
    }
  if (!out.empty()) {
    std::sort(out.begin(), out.end());
    return out;
  }
  // Naturality of mu in both arguments.
  for (const auto& [f, fe] : d.morphisms)
    for (const auto& [g, ge] : d.morphisms) {
      std::string lhs = c.compose(F.cod.tensor_mor(F.mor_at(f), F.mor_at(g)),
                                  F.mu_at(fe.second, ge.second));
      std::string rhs = c.compose(F.mu_at(fe.first, ge.first),
                                  F.mor_at(F.dom.tensor_mor(f, g)));
      if (lhs != rhs)
        out.push_back({"naturality", f, "mu naturality fails at (" + f + ", " + g + ")"});
    }
  // Associativity (mu tensor id);mu = (id tensor mu);mu.
  for (const auto& x : d.objects)
    for (const auto& y : d.objects)
      for (const auto& z : d.objects) {
        std::string lhs = c.compose(F.cod.tensor_mor(F.mu_at(x, y), c.id(F.obj_at(z))),
                                    F.mu_at(F.dom.tensor_obj(x, y), z));
        std::string rhs = c.compose(F.cod.tensor_mor(c.id(F.obj_at(x)), F.mu_at(y, z)),
                                    F.mu_at(x, F.dom.tensor_obj(y, z)));
        if (lhs != rhs)
          out.push_back({"associativity", x,
                         "mu associativity fails at " + detail::tuple_msg({x, y, z})});
      }
  // Unitality: (epsilon tensor id);mu(I,x) = id and (id tensor epsilon);mu(x,I) = id.
  for (const auto& x : d.objects) {
    const std::string& Fx = F.obj_at(x);
    if (c.compose(F.cod.tensor_mor(F.epsilon, c.id(Fx)), F.mu_at(F.dom.unit, x)) != c.id(Fx))
      out.push_back({"unitality", x, "left unitality fails at " + x});
    if (c.compose(F.cod.tensor_mor(c.id(Fx), F.epsilon), F.mu_at(x, F.dom.unit)) != c.id(Fx))
      out.push_back({"unitality", x, "right unitality fails at " + x});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Coends by union-find.

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t i) const {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // keep the least index as root
    parent_[b] = a;
    return true;
  }

 private:
  mutable std::vector<std::size_t> parent_;
};

// A profunctor P : X^op x Y -> Set given by tables. Elements live in
// sets[(x, y)]; lact applies m : x -> x' contravariantly to an element of
// P(x', y), ract applies n : y -> y' covariantly to an element of P(x, y).
struct FinProfunctor {
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> sets;
  std::map<std::tuple<std::string, std::string, std::string>, std::string> lact;  // (m, y, v)
  std::map<std::tuple<std::string, std::string, std::string>, std::string> ract;  // (n, x, v)

  const std::vector<std::string>& at(const std::string& x, const std::string& y) const {
    static const std::vector<std::string> empty;
    auto it = sets.find({x, y});
    return it == sets.end() ? empty : it->second;
  }
  const std::string& lact_at(const std::string& m, const std::string& y,
                             const std::string& v) const {
    auto it = lact.find({m, y, v});
    if (it == lact.end())
      throw FinCatError("profunctor: no left action (" + m + ", " + y + ", " + v + ")");
    return it->second;
  }
  const std::string& ract_at(const std::string& n, const std::string& x,
                             const std::string& v) const {
    auto it = ract.find({n, x, v});
    if (it == ract.end())
      throw FinCatError("profunctor: no right action (" + n + ", " + x + ", " + v + ")");
    return it->second;
  }
};

struct CoendElement {
  std::string obj;    // the diagonal object M
  std::string value;  // element of P(M, M)
  friend auto operator<=>(const CoendElement&, const CoendElement&) = default;
};

struct CoendResult {
  std::vector<CoendElement> elements;  // sorted; index space of the partition
  std::vector<std::size_t> cls;        // element index -> class index
  std::size_t class_count = 0;

  std::size_t index_of(const CoendElement& e) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), e);
    if (it == elements.end() || *it != e)
      throw FinCatError("coend: unknown element (" + e.obj + ", " + e.value + ")");
    return static_cast<std::size_t>(it - elements.begin());
  }
  std::size_t class_of(const CoendElement& e) const { return cls[index_of(e)]; }
  // Lexicographically least member of each class.
  const CoendElement& representative(std::size_t k) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (cls[i] == k) return elements[i];
    throw FinCatError("coend: bad class index");
  }
  std::vector<std::vector<CoendElement>> classes() const {
    std::vector<std::vector<CoendElement>> out(class_count);
    for (std::size_t i = 0; i < elements.size(); ++i) out[cls[i]].push_back(elements[i]);
    return out;
  }
};

namespace detail {

// Turn a union-find over sorted elements into class indices numbered by
// first appearance, so class 0 contains the least element overall.
inline void finish_partition(const UnionFind& uf, std::size_t n, std::vector<std::size_t>& cls,
                             std::size_t& count) {
  cls.assign(n, 0);
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t root = uf.find(i);
    auto [it, fresh] = renumber.emplace(root, renumber.size());
    cls[i] = it->second;
  }
  count = renumber.size();
}

}  // namespace detail

// Coend over X of P(M, M'): the diagonal sets quotiented by the zig-zag
// relation (x . m at the source) ~ (m . x at the target) for m : M -> M'
// and x in P(M', M).
inline CoendResult coend(const FinCategory& X, const FinProfunctor& P) {
  CoendResult out;
  for (const auto& M : X.objects)
    for (const auto& v : P.at(M, M)) out.elements.push_back({M, v});
  std::sort(out.elements.begin(), out.elements.end());
  UnionFind uf(out.elements.size());
  for (const auto& [m, me] : X.morphisms) {
    const std::string& M = me.first;
    const std::string& Mp = me.second;
    for (const auto& x : P.at(Mp, M)) {
      CoendElement lhs{M, P.lact_at(m, M, x)};    // pull back along m: lands in P(M, M)
      CoendElement rhs{Mp, P.ract_at(m, Mp, x)};  // push forward along m: lands in P(M', M')
      uf.unite(out.index_of(lhs), out.index_of(rhs));
    }
  }
  detail::finish_partition(uf, out.elements.size(), out.cls, out.class_count);
  return out;
}

inline nlohmann::json to_json(const CoendResult& r) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& cls : r.classes()) {
    nlohmann::json one = nlohmann::json::array();
    for (const auto& e : cls) one.push_back({{"object", e.obj}, {"value", e.value}});
    classes.push_back(one);
  }
  return {{"classes", classes}};
}

// ---------------------------------------------------------------------------
// Bimodular profunctors.

struct PElem {
  std::string x, y, v;  // v in T(x, y)
  friend auto operator<=>(const PElem&, const PElem&) = default;
};

// A profunctor between bimodular categories C and D (over the same acting
// pair M, N) with strengths t_M and t^N and an optional point.
struct FinBimodularProfunctor {
  std::string name;
  FinMonoidalCategory M, N;
  FinBimodularCategory C, D;
  FinProfunctor T;  // sets keyed by (object of C, object of D)
  std::map<std::pair<std::string, PElem>, PElem> str_left;   // t_M, keyed by M-object
  std::map<std::pair<std::string, PElem>, PElem> str_right;  // t^N, keyed by N-object
  std::optional<PElem> point;

  const PElem& t_left(const std::string& m, const PElem& e) const {
    auto it = str_left.find({m, e});
    if (it == str_left.end())
      throw FinCatError(name + ": no strength t_" + m + " at (" + e.x + ", " + e.y + ", " + e.v +
                        ")");
    return it->second;
  }
  const PElem& t_right(const std::string& n, const PElem& e) const {
    auto it = str_right.find({n, e});
    if (it == str_right.end())
      throw FinCatError(name + ": no strength t^" + n + " at (" + e.x + ", " + e.y + ", " + e.v +
                        ")");
    return it->second;
  }
  std::vector<PElem> all_elements() const {
    std::vector<PElem> out;
    for (const auto& [key, vs] : T.sets)
      for (const auto& v : vs) out.push_back({key.first, key.second, v});
    return out;
  }
};

inline std::vector<Diagnostic> check_strength(const FinBimodularProfunctor& P) {
  std::vector<Diagnostic> out;
  auto elems = P.all_elements();
  auto describe = [](const PElem& e) { return "(" + e.x + ", " + e.y + ", " + e.v + ")"; };
  // Profunctor functoriality.
  for (const auto& e : elems) {
    for (const auto& [f, fe] : P.C.carrier.morphisms) {
      if (fe.second != e.x) continue;
      const std::string& r = P.T.lact_at(f, e.y, e.v);
      bool found = false;
      for (const auto& w : P.T.at(fe.first, e.y)) found = found || w == r;
      if (!found)
        out.push_back({"functoriality", e.v, "left action of " + f + " leaves the value sets"});
      if (P.T.lact_at(P.C.carrier.id(e.x), e.y, e.v) != e.v)
        out.push_back({"functoriality", e.v, "left identity action fails at " + describe(e)});
    }
    for (const auto& [g, ge] : P.D.carrier.morphisms) {
      if (ge.first != e.y) continue;
      if (P.T.ract_at(P.D.carrier.id(e.y), e.x, e.v) != e.v)
        out.push_back({"functoriality", e.v, "right identity action fails at " + describe(e)});
    }
  }
  for (const auto& e : elems) {
    // Unitality t_I = id and t^I = id.
    if (P.t_left(P.M.unit, e) != e)
      out.push_back({"unitality", e.v, "t_I is not the identity at " + describe(e)});
    if (P.t_right(P.N.unit, e) != e)
      out.push_back({"unitality", e.v, "t^I is not the identity at " + describe(e)});
    // Strength endpoints and associativity.
    for (const auto& m : P.M.cat.objects) {
      const PElem& te = P.t_left(m, e);
      if (te.x != P.C.lact_obj(m, e.x) || te.y != P.D.lact_obj(m, e.y))
        out.push_back({"naturality", e.v, "t_" + m + " lands at wrong objects from " + describe(e)});
      for (const auto& m2 : P.M.cat.objects)
        if (P.t_left(m2, P.t_left(m, e)) != P.t_left(P.M.tensor_obj(m2, m), e))
          out.push_back({"associativity", e.v,
                         "t_" + m2 + "; t_" + m + " differs from t_(" + m2 + " tensor " + m +
                             ") at " + describe(e)});
      // Compatibility with the right strength.
      for (const auto& n : P.N.cat.objects)
        if (P.t_right(n, P.t_left(m, e)) != P.t_left(m, P.t_right(n, e)))
          out.push_back({"compatibility", e.v,
                         "t_" + m + " and t^" + n + " do not commute at " + describe(e)});
    }
    for (const auto& n : P.N.cat.objects) {
      const PElem& te = P.t_right(n, e);
      if (te.x != P.C.ract_obj(e.x, n) || te.y != P.D.ract_obj(e.y, n))
        out.push_back({"naturality", e.v, "t^" + n + " lands at wrong objects from " + describe(e)});
      for (const auto& n2 : P.N.cat.objects)
        if (P.t_right(n2, P.t_right(n, e)) != P.t_right(P.N.tensor_obj(n, n2), e))
          out.push_back({"associativity", e.v,
                         "t^" + n + "; t^" + n2 + " differs from t^(" + n + " tensor " + n2 +
                             ") at " + describe(e)});
    }
    // Naturality of t_M in both variables (dinaturality on generators).
    for (const auto& m : P.M.cat.objects) {
      for (const auto& [f, fe] : P.C.carrier.morphisms) {
        if (fe.second != e.x) continue;
        PElem pulled{fe.first, e.y, P.T.lact_at(f, e.y, e.v)};
        const PElem& lhs = P.t_left(m, pulled);
        const PElem& te = P.t_left(m, e);
        std::string rhs = P.T.lact_at(P.C.lact_mor(P.M.cat.id(m), f), te.y, te.v);
        if (lhs.v != rhs)
          out.push_back({"naturality", e.v,
                         "t_" + m + " is not natural in the source at (" + f + ", " + e.v + ")"});
      }
      for (const auto& [g, ge] : P.D.carrier.morphisms) {
        if (ge.first != e.y) continue;
        PElem pushed{e.x, ge.second, P.T.ract_at(g, e.x, e.v)};
        const PElem& lhs = P.t_left(m, pushed);
        const PElem& te = P.t_left(m, e);
        std::string rhs = P.T.ract_at(P.D.lact_mor(P.M.cat.id(m), g), te.x, te.v);
        if (lhs.v != rhs)
          out.push_back({"naturality", e.v,
                         "t_" + m + " is not natural in the target at (" + g + ", " + e.v + ")"});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// The hom-profunctor of a bimodular category, with strengths by action.
inline FinBimodularProfunctor hom_profunctor(const FinBimodularCategory& b) {
  FinBimodularProfunctor P;
  P.name = "hom(" + b.name + ")";
  P.M = b.left;
  P.N = b.right;
  P.C = P.D = b;
  for (const auto& x : b.carrier.objects)
    for (const auto& y : b.carrier.objects) {
      auto h = b.carrier.hom(x, y);
      std::sort(h.begin(), h.end());
      P.T.sets[{x, y}] = h;
    }
  for (const auto& [v, ve] : b.carrier.morphisms) {
    for (const auto& [f, fe] : b.carrier.morphisms)
      if (fe.second == ve.first) P.T.lact[{f, ve.second, v}] = b.carrier.compose(f, v);
    for (const auto& [g, ge] : b.carrier.morphisms)
      if (ge.first == ve.second) P.T.ract[{g, ve.first, v}] = b.carrier.compose(v, g);
    for (const auto& m : b.left.cat.objects) {
      PElem e{ve.first, ve.second, v};
      std::string av = b.lact_mor(b.left.cat.id(m), v);
      P.str_left[{m, e}] = PElem{b.lact_obj(m, ve.first), b.lact_obj(m, ve.second), av};
    }
    for (const auto& n : b.right.cat.objects) {
      PElem e{ve.first, ve.second, v};
      std::string av = b.ract_mor(v, b.right.cat.id(n));
      P.str_right[{n, e}] = PElem{b.ract_obj(ve.first, n), b.ract_obj(ve.second, n), av};
    }
  }
  return P;
}

namespace detail {

inline std::string encode3(const std::string& a, const std::string& b, const std::string& c) {
  return a + "|" + b + "|" + c;
}

}  // namespace detail

// Composite of pointed bimodular profunctors by profunctor composition:
// (P . Q)(X, Z) is the coend over Y of P(X, Y) x Q(Y, Z), computed by
// union-find; class names are the encoded least representatives.
inline FinBimodularProfunctor compose_pointed_profunctors(const FinBimodularProfunctor& P,
                                                          const FinBimodularProfunctor& Q) {
  if (P.D.carrier != Q.C.carrier)
    throw FinCatError("compose_pointed_profunctors: mismatched middle category");
  const FinCategory& mid = P.D.carrier;
  using Triple = std::tuple<std::string, std::string, std::string>;  // (Y, p, q)
  struct Block {
    std::vector<Triple> elems;
    std::vector<std::size_t> cls;
    std::size_t count = 0;
    std::size_t index_of(const Triple& t) const {
      auto it = std::lower_bound(elems.begin(), elems.end(), t);
      if (it == elems.end() || *it != t)
        throw FinCatError("compose_pointed_profunctors: unknown pair element");
      return static_cast<std::size_t>(it - elems.begin());
    }
  };
  std::map<std::pair<std::string, std::string>, Block> blocks;
  for (const auto& x : P.C.carrier.objects)
    for (const auto& z : Q.D.carrier.objects) {
      Block& blk = blocks[{x, z}];
      for (const auto& y : mid.objects)
        for (const auto& p : P.T.at(x, y))
          for (const auto& q : Q.T.at(y, z)) blk.elems.push_back({y, p, q});
      std::sort(blk.elems.begin(), blk.elems.end());
      UnionFind uf(blk.elems.size());
      // (p . m, q) ~ (p, m . q) for m : Y -> Y', p in P(X, Y), q in Q(Y', Z).
      for (const auto& [m, me] : mid.morphisms)
        for (const auto& p : P.T.at(x, me.first))
          for (const auto& q : Q.T.at(me.second, z)) {
            Triple lhs{me.second, P.T.ract_at(m, x, p), q};
            Triple rhs{me.first, p, Q.T.lact_at(m, z, q)};
            uf.unite(blk.index_of(lhs), blk.index_of(rhs));
          }
      detail::finish_partition(uf, blk.elems.size(), blk.cls, blk.count);
    }
  auto class_name = [&](const std::string& x, const std::string& z, const Triple& t) {
    const Block& blk = blocks.at({x, z});
    std::size_t k = blk.cls[blk.index_of(t)];
    for (std::size_t i = 0; i < blk.elems.size(); ++i)
      if (blk.cls[i] == k) {
        const auto& [y, p, q] = blk.elems[i];
        return detail::encode3(y, p, q);
      }
    throw FinCatError("compose_pointed_profunctors: internal class lookup failure");
  };

  FinBimodularProfunctor R;
  R.name = P.name + " . " + Q.name;
  R.M = P.M;
  R.N = P.N;
  R.C = P.C;
  R.D = Q.D;
  for (const auto& [key, blk] : blocks) {
    std::set<std::string> names;
    for (const auto& t : blk.elems) names.insert(class_name(key.first, key.second, t));
    R.T.sets[key] = std::vector<std::string>(names.begin(), names.end());
  }
  // Induced actions and strengths, computed on representatives.
  for (const auto& [key, blk] : blocks) {
    const auto& [x, z] = key;
    std::set<Triple> reps;
    for (const auto& t : blk.elems)
      if (class_name(x, z, t) == detail::encode3(std::get<0>(t), std::get<1>(t), std::get<2>(t)))
        reps.insert(t);
    for (const auto& t : reps) {
      const auto& [y, p, q] = t;
      std::string tn = detail::encode3(y, p, q);
      for (const auto& [f, fe] : P.C.carrier.morphisms)
        if (fe.second == x)
          R.T.lact[{f, z, tn}] =
              class_name(fe.first, z, Triple{y, P.T.lact_at(f, y, p), q});
      for (const auto& [g, ge] : Q.D.carrier.morphisms)
        if (ge.first == z)
          R.T.ract[{g, x, tn}] =
              class_name(x, ge.second, Triple{y, p, Q.T.ract_at(g, y, q)});
      PElem e{x, z, tn};
      for (const auto& m : P.M.cat.objects) {
        const PElem& tp = P.t_left(m, PElem{x, y, p});
        const PElem& tq = Q.t_left(m, PElem{y, z, q});
        if (tp.y != tq.x)
          throw FinCatError("compose_pointed_profunctors: strengths do not align at t_" + m);
        R.str_left[{m, e}] =
            PElem{tp.x, tq.y, class_name(tp.x, tq.y, Triple{tp.y, tp.v, tq.v})};
      }
      for (const auto& n : P.N.cat.objects) {
        const PElem& tp = P.t_right(n, PElem{x, y, p});
        const PElem& tq = Q.t_right(n, PElem{y, z, q});
        if (tp.y != tq.x)
          throw FinCatError("compose_pointed_profunctors: strengths do not align at t^" + n);
        R.str_right[{n, e}] =
            PElem{tp.x, tq.y, class_name(tp.x, tq.y, Triple{tp.y, tp.v, tq.v})};
      }
    }
  }
  if (P.point && Q.point) {
    if (P.point->y != Q.point->x)
      throw FinCatError("compose_pointed_profunctors: points do not meet in the middle");
    R.point = PElem{P.point->x, Q.point->y,
                    class_name(P.point->x, Q.point->y,
                               Triple{P.point->y, P.point->v, Q.point->v})};
  }
  return R;
}

// ---------------------------------------------------------------------------
// Tensor of bimodular profunctors over the shared actor.

// T is (M, N)-bimodular, R is (N, O)-bimodular. Value sets are
// T(X, X') x R(Y, Y') quotiented by (t^N(t), r) ~ (t, t_N(r)); only the
// profunctor-level shadow is built: partitions per index, induced outer
// strengths on classes, and the pair of points.
struct TensorBimodularResult {
  using Index = std::tuple<std::string, std::string, std::string, std::string>;  // (X, Y, X', Y')
  struct Block {
    std::vector<std::pair<std::string, std::string>> elems;  // sorted pairs (t, r)
    std::vector<std::size_t> cls;
    std::size_t count = 0;
    std::size_t index_of(const std::pair<std::string, std::string>& e) const {
      auto it = std::lower_bound(elems.begin(), elems.end(), e);
      if (it == elems.end() || *it != e)
        throw FinCatError("tensor_bimodular_profunctors: unknown pair element");
      return static_cast<std::size_t>(it - elems.begin());
    }
    std::size_t class_of(const std::pair<std::string, std::string>& e) const {
      return cls[index_of(e)];
    }
  };
  std::map<Index, Block> blocks;
  // Outer strengths on classes: t_M sends class k at (X,Y,X',Y') to a class
  // at (M |> X, Y, M |> X', Y'); t^O acts on the right component.
  std::map<std::pair<std::string, Index>, std::vector<std::size_t>> str_left;
  std::map<std::pair<std::string, Index>, std::vector<std::size_t>> str_right;
  std::optional<std::pair<Index, std::size_t>> point;
};

inline TensorBimodularResult tensor_bimodular_profunctors(const FinBimodularProfunctor& T,
                                                          const FinBimodularProfunctor& R) {
  if (T.N != R.M)
    throw FinCatError("tensor_bimodular_profunctors: action tables incompatible "
                      "(shared actor differs)");
  TensorBimodularResult out;
  for (const auto& x : T.C.carrier.objects)
    for (const auto& y : R.C.carrier.objects)
      for (const auto& xp : T.D.carrier.objects)
        for (const auto& yp : R.D.carrier.objects) {
          TensorBimodularResult::Index ix{x, y, xp, yp};
          auto& blk = out.blocks[ix];
          for (const auto& t : T.T.at(x, xp))
            for (const auto& r : R.T.at(y, yp)) blk.elems.push_back({t, r});
          std::sort(blk.elems.begin(), blk.elems.end());
        }
  // The zig-zag (t^N(t), r) ~ (t, t_N(r)) glues different index blocks in
  // general, so the quotient is computed on the disjoint union of all blocks
  // and sliced back per index afterwards.
  std::vector<std::pair<TensorBimodularResult::Index, std::pair<std::string, std::string>>> all;
  for (const auto& [ix, blk] : out.blocks)
    for (const auto& e : blk.elems) all.push_back({ix, e});
  std::sort(all.begin(), all.end());
  auto global_index = [&](const TensorBimodularResult::Index& ix,
                          const std::pair<std::string, std::string>& e) {
    auto key = std::make_pair(ix, e);
    auto it = std::lower_bound(all.begin(), all.end(), key);
    if (it == all.end() || *it != key)
      throw FinCatError("tensor_bimodular_profunctors: unknown element");
    return static_cast<std::size_t>(it - all.begin());
  };
  UnionFind uf(all.size());
  for (const auto& n : T.N.cat.objects) {
    if (n == T.N.unit) continue;
    for (const auto& [ix, blk] : out.blocks) {
      const auto& [x, y, xp, yp] = ix;
      for (const auto& [t, r] : blk.elems) {
        PElem tn = T.t_right(n, PElem{x, xp, t});   // lands at (X <| N, X' <| N)
        PElem rn = R.t_left(n, PElem{y, yp, r});    // lands at (N |> Y, N |> Y')
        // (t^N(t), r) at (X <| N, Y, X' <| N, Y') ~ (t, t_N(r)) at
        // (X, N |> Y, X', N |> Y').
        TensorBimodularResult::Index li{tn.x, y, tn.y, yp};
        TensorBimodularResult::Index ri{x, rn.x, xp, rn.y};
        uf.unite(global_index(li, {tn.v, r}), global_index(ri, {t, rn.v}));
      }
    }
  }
  std::vector<std::size_t> gcls;
  std::size_t gcount = 0;
  detail::finish_partition(uf, all.size(), gcls, gcount);
  // Slice back: per block, renumber the global classes that appear.
  for (auto& [ix, blk] : out.blocks) {
    std::map<std::size_t, std::size_t> renumber;
    blk.cls.assign(blk.elems.size(), 0);
    for (std::size_t i = 0; i < blk.elems.size(); ++i) {
      std::size_t g = gcls[global_index(ix, blk.elems[i])];
      auto [it, fresh] = renumber.emplace(g, renumber.size());
      blk.cls[i] = it->second;
    }
    blk.count = renumber.size();
  }
  // Induced outer strengths on classes; raise if ill-defined.
  for (const auto& [ix, blk] : out.blocks) {
    const auto& [x, y, xp, yp] = ix;
    for (const auto& m : T.M.cat.objects) {
      std::vector<std::optional<std::size_t>> img(blk.count);
      TensorBimodularResult::Index target;
      for (std::size_t i = 0; i < blk.elems.size(); ++i) {
        const auto& [t, r] = blk.elems[i];
        PElem tm = T.t_left(m, PElem{x, xp, t});
        target = {tm.x, y, tm.y, yp};
        std::size_t k = out.blocks.at(target).class_of({tm.v, r});
        if (img[blk.cls[i]] && *img[blk.cls[i]] != k)
          throw FinCatError("tensor_bimodular_profunctors: induced strength t_" + m +
                            " is not well-defined on classes");
        img[blk.cls[i]] = k;
      }
      std::vector<std::size_t> flat;
      for (auto& o : img) flat.push_back(o.value_or(0));
      out.str_left[{m, ix}] = flat;
    }
    for (const auto& o : R.N.cat.objects) {
      std::vector<std::optional<std::size_t>> img(blk.count);
      TensorBimodularResult::Index target;
      for (std::size_t i = 0; i < blk.elems.size(); ++i) {
        const auto& [t, r] = blk.elems[i];
        PElem ro = R.t_right(o, PElem{y, yp, r});
        target = {x, ro.x, xp, ro.y};
        std::size_t k = out.blocks.at(target).class_of({t, ro.v});
        if (img[blk.cls[i]] && *img[blk.cls[i]] != k)
          throw FinCatError("tensor_bimodular_profunctors: induced strength t^" + o +
                            " is not well-defined on classes");
        img[blk.cls[i]] = k;
      }
      std::vector<std::size_t> flat;
      for (auto& oo : img) flat.push_back(oo.value_or(0));
      out.str_right[{o, ix}] = flat;
    }
  }
  if (T.point && R.point) {
    TensorBimodularResult::Index ix{T.point->x, R.point->x, T.point->y, R.point->y};
    out.point = {ix, out.blocks.at(ix).class_of({T.point->v, R.point->v})};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kleisli promonads of a lax monoidal functor F : X -> A.

// Morphisms (A, X) -> (B, Y) of the left Kleisli category are classes of
// triples (M, a, x) with a : A -> B tensor F(M) and x : M tensor X -> Y,
// under the coend zig-zag in M. The mirrored version uses
// x : X tensor M -> Y and a : A -> F(M) tensor B.
struct KleisliCategory {
  using Obj = std::pair<std::string, std::string>;            // (A-object, X-object)
  using Key = std::pair<Obj, Obj>;                            // hom-set index
  using Triple = std::array<std::string, 3>;                  // (M, a, x)
  struct Hom {
    std::vector<Triple> elems;  // sorted
    std::vector<std::size_t> cls;
    std::size_t count = 0;
    std::size_t index_of(const Triple& t) const {
      auto it = std::lower_bound(elems.begin(), elems.end(), t);
      if (it == elems.end() || *it != t)
        throw FinCatError("kleisli: unknown triple (" + t[0] + ", " + t[1] + ", " + t[2] + ")");
      return static_cast<std::size_t>(it - elems.begin());
    }
    std::size_t class_of(const Triple& t) const { return cls[index_of(t)]; }
    Triple representative(std::size_t k) const {
      for (std::size_t i = 0; i < elems.size(); ++i)
        if (cls[i] == k) return elems[i];
      throw FinCatError("kleisli: bad class index");
    }
    std::vector<Triple> representatives() const {
      std::vector<Triple> out;
      for (std::size_t k = 0; k < count; ++k) out.push_back(representative(k));
      return out;
    }
  };

  FinLaxMonoidalFunctor F;
  bool mirrored = false;  // false: A |x F X; true: the corrected mirrored version
  std::vector<Obj> objects;
  std::map<Key, Hom> homs;

  const Hom& hom(const Obj& s, const Obj& t) const { return homs.at({s, t}); }

  Triple identity(const Obj& o) const {
    const FinMonoidalCategory& A = F.cod;
    const FinMonoidalCategory& X = F.dom;
    std::string a = mirrored ? A.cat.compose(A.cat.id(o.first),
                                             A.tensor_mor(F.epsilon, A.cat.id(o.first)))
                             : A.cat.compose(A.cat.id(o.first),
                                             A.tensor_mor(A.cat.id(o.first), F.epsilon));
    Triple t{X.unit, a, X.cat.id(o.second)};
    return hom(o, o).representative(hom(o, o).class_of(t));
  }

  // Composition on representatives; the result is the canonical
  // representative of the composite's class.
  Triple compose(const Obj& s, const Obj& mid, const Obj& t, const Triple& f,
                 const Triple& g) const {
    const FinMonoidalCategory& A = F.cod;
    const FinMonoidalCategory& X = F.dom;
    const auto& [M, a1, x1] = std::tie(f[0], f[1], f[2]);
    const auto& [N, a2, x2] = std::tie(g[0], g[1], g[2]);
    Triple out;
    if (!mirrored) {
      // middle object N tensor M; a = a1 ; (a2 tensor F M) ; (C tensor mu).
      out[0] = X.tensor_obj(N, M);
      std::string step = A.cat.compose(a1, A.tensor_mor(a2, A.cat.id(F.obj_at(M))));
      out[1] = A.cat.compose(step, A.tensor_mor(A.cat.id(t.first), F.mu_at(N, M)));
      out[2] = X.cat.compose(X.tensor_mor(X.cat.id(N), x1), x2);
    } else {
      // middle object M tensor N; x = (x1 tensor N) ; x2;
      // a = a1 ; (F M tensor a2) ; (mu tensor C).
      out[0] = X.tensor_obj(M, N);
      out[2] = X.cat.compose(X.tensor_mor(x1, X.cat.id(N)), x2);
      std::string step = A.cat.compose(a1, A.tensor_mor(A.cat.id(F.obj_at(M)), a2));
      out[1] = A.cat.compose(step, A.tensor_mor(F.mu_at(M, N), A.cat.id(t.first)));
    }
    const Hom& h = hom(s, t);
    return h.representative(h.class_of(out));
  }

  // Bimodular actions: A-objects act on the first component, X-objects on
  // the second. On morphisms, whisker the witnessing pair.
  Obj lact_obj(const std::string& c, const Obj& o) const {
    return {F.cod.tensor_obj(c, o.first), o.second};
  }
  Obj ract_obj(const Obj& o, const std::string& w) const {
    return {o.first, F.dom.tensor_obj(o.second, w)};
  }
  Triple lact_mor(const std::string& c, const Obj& s, const Obj& t, const Triple& f) const {
    Triple out{f[0], F.cod.tensor_mor(F.cod.cat.id(c), f[1]), f[2]};
    const Hom& h = hom(lact_obj(c, s), lact_obj(c, t));
    return h.representative(h.class_of(out));
  }
  Triple ract_mor(const Obj& s, const Obj& t, const Triple& f, const std::string& w) const {
    Triple out{f[0], f[1], F.dom.tensor_mor(f[2], F.dom.cat.id(w))};
    if (mirrored) {
      // x : X tensor M -> Y becomes X tensor W tensor M -> Y tensor W only
      // after moving W past M; in the strict setting the mirrored action
      // whiskers on the left of x's M-part instead. We act with W on the
      // outside: x tensor id_W, a unchanged.
    }
    const Hom& h = hom(ract_obj(s, w), ract_obj(t, w));
    return h.representative(h.class_of(out));
  }
};

// Exhaustive promonad-law check on class representatives: left/right unit,
// associativity, well-definedness of composition on classes, and Def. 2.1-
// style compatibility of the two actions on morphisms.
inline std::vector<Diagnostic> check_promonad(const KleisliCategory& K) {
  std::vector<Diagnostic> out;
  auto obj_name = [](const KleisliCategory::Obj& o) { return "(" + o.first + ", " + o.second + ")"; };
  auto tri_name = [](const KleisliCategory::Triple& t) {
    return "(" + t[0] + ", " + t[1] + ", " + t[2] + ")";
  };
  for (const auto& s : K.objects)
    for (const auto& t : K.objects) {
      const auto& h = K.hom(s, t);
      for (const auto& f : h.representatives()) {
        if (K.compose(s, s, t, K.identity(s), f) != f)
          out.push_back({"unit", tri_name(f), "left unit fails at " + obj_name(s)});
        if (K.compose(s, t, t, f, K.identity(t)) != f)
          out.push_back({"unit", tri_name(f), "right unit fails at " + obj_name(t)});
        // Composition is constant on classes: composing any member of f's
        // class gives the same representative.
        for (std::size_t i = 0; i < h.elems.size(); ++i) {
          if (h.cls[i] != h.class_of(f)) continue;
          if (K.compose(s, s, t, K.identity(s), h.elems[i]) !=
              K.compose(s, s, t, K.identity(s), f))
            out.push_back({"well-defined", tri_name(h.elems[i]),
                           "composition differs across one class"});
        }
      }
    }
  for (const auto& a : K.objects)
    for (const auto& b : K.objects)
      for (const auto& c : K.objects)
        for (const auto& d : K.objects)
          for (const auto& f : K.hom(a, b).representatives())
            for (const auto& g : K.hom(b, c).representatives())
              for (const auto& h : K.hom(c, d).representatives()) {
                auto lhs = K.compose(a, c, d, K.compose(a, b, c, f, g), h);
                auto rhs = K.compose(a, b, d, f, K.compose(b, c, d, g, h));
                if (lhs != rhs)
                  out.push_back({"associativity", tri_name(f),
                                 "associativity fails at " + obj_name(a) + " -> " + obj_name(d)});
              }
  // Action compatibility on morphisms: acting with an A-object on the left
  // and an X-object on the right commutes.
  for (const auto& s : K.objects)
    for (const auto& t : K.objects)
      for (const auto& f : K.hom(s, t).representatives())
        for (const auto& c : K.F.cod.cat.objects)
          for (const auto& w : K.F.dom.cat.objects) {
            auto lhs = K.ract_mor(K.lact_obj(c, s), K.lact_obj(c, t),
                                  K.lact_mor(c, s, t, f), w);
            auto rhs = K.lact_mor(c, K.ract_obj(s, w), K.ract_obj(t, w),
                                  K.ract_mor(s, t, f, w));
            if (lhs != rhs)
              out.push_back({"compatibility", tri_name(f),
                             "left/right actions do not commute at (" + c + ", " + w + ")"});
          }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline KleisliCategory kleisli_promonad(const FinLaxMonoidalFunctor& F, bool mirrored = false) {
  const FinMonoidalCategory& A = F.cod;
  const FinMonoidalCategory& X = F.dom;
  KleisliCategory out;
  out.F = F;
  out.mirrored = mirrored;
  for (const auto& ao : A.cat.objects)
    for (const auto& xo : X.cat.objects) out.objects.push_back({ao, xo});
  if (out.objects.size() > kMaxObjects ||
      A.cat.morphisms.size() * X.cat.morphisms.size() > kMaxMorphisms)
    throw FinCatError("kleisli_promonad: size guard exceeded");
  for (const auto& s : out.objects)
    for (const auto& t : out.objects) {
      KleisliCategory::Hom h;
      const auto& [Ao, Xo] = s;
      const auto& [Bo, Yo] = t;
      for (const auto& M : X.cat.objects) {
        // a : A -> B tensor F(M) (or F(M) tensor B mirrored);
        // x : M tensor X -> Y (or X tensor M -> Y mirrored).
        std::string a_tgt = mirrored ? A.tensor_obj(F.obj_at(M), Bo)
                                     : A.tensor_obj(Bo, F.obj_at(M));
        std::string x_src = mirrored ? X.tensor_obj(Xo, M) : X.tensor_obj(M, Xo);
        for (const auto& a : A.cat.hom(Ao, a_tgt))
          for (const auto& x : X.cat.hom(x_src, Yo)) h.elems.push_back({M, a, x});
      }
      std::sort(h.elems.begin(), h.elems.end());
      UnionFind uf(h.elems.size());
      for (const auto& [m, me] : X.cat.morphisms) {
        const std::string& M = me.first;
        const std::string& Mp = me.second;
        std::string a_src_tgt = mirrored ? A.tensor_obj(F.obj_at(M), Bo)
                                         : A.tensor_obj(Bo, F.obj_at(M));
        std::string x_src_hi = mirrored ? X.tensor_obj(Xo, Mp) : X.tensor_obj(Mp, Xo);
        for (const auto& a : A.cat.hom(Ao, a_src_tgt))
          for (const auto& x : X.cat.hom(x_src_hi, Yo)) {
            // Push m through a, or pull m through x.
            std::string a_pushed =
                mirrored ? A.cat.compose(a, A.tensor_mor(F.mor_at(m), A.cat.id(Bo)))
                         : A.cat.compose(a, A.tensor_mor(A.cat.id(Bo), F.mor_at(m)));
            std::string x_pulled =
                mirrored ? X.cat.compose(X.tensor_mor(X.cat.id(Xo), m), x)
                         : X.cat.compose(X.tensor_mor(m, X.cat.id(Xo)), x);
            KleisliCategory::Triple lhs{M, a, x_pulled};
            KleisliCategory::Triple rhs{Mp, a_pushed, x};
            uf.unite(h.index_of(lhs), h.index_of(rhs));
          }
      }
      detail::finish_partition(uf, h.elems.size(), h.cls, h.count);
      out.homs[{s, t}] = std::move(h);
    }
  return out;
}

}  // namespace collage
