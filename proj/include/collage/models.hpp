#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "collage/fincat.hpp"
#include "collage/parse.hpp"

// Built-in finite models: deloopings of commutative monoids, chain posets
// with truncated addition, products, and a couple of lax monoidal functors
// between them. Also the bridge from parsed `model` blocks.

namespace collage {

// Delooping of a commutative monoid: one object "*", one morphism per
// element, composition and tensor both given by the monoid operation.
struct FinMonoid {
  std::string name;
  std::vector<std::string> elements;
  std::string unit;
  std::map<std::pair<std::string, std::string>, std::string> op;
};

inline FinMonoidalCategory delooping(const FinMonoid& m) {
  FinMonoidalCategory out;
  out.cat.name = "delooping(" + m.name + ")";
  out.cat.objects = {"*"};
  out.unit = "*";
  out.tensor_objects[{"*", "*"}] = "*";
  for (const auto& e : m.elements) out.cat.morphisms[e] = {"*", "*"};
  out.cat.identities["*"] = m.unit;
  for (const auto& [k, v] : m.op) {
    out.cat.composition[k] = v;
    out.tensor_morphisms[k] = v;
  }
  out.cat.guard_size();
  return out;
}

// The terminal monoidal category: one object, one morphism.
inline FinMonoidalCategory trivial_monoidal() {
  FinMonoid m;
  m.name = "1";
  m.elements = {"!"};
  m.unit = "!";
  m.op[{"!", "!"}] = "!";
  FinMonoidalCategory out = delooping(m);
  out.cat.name = "trivial";
  return out;
}

inline FinMonoidalCategory z2_model() {
  FinMonoid m;
  m.name = "Z2";
  m.elements = {"0", "1"};
  m.unit = "0";
  m.op[{"0", "0"}] = "0";
  m.op[{"0", "1"}] = "1";
  m.op[{"1", "0"}] = "1";
  m.op[{"1", "1"}] = "0";
  return delooping(m);
}

// Cyclic group Z/n as a delooping, elements "0".."n-1".
inline FinMonoidalCategory zn_model(std::size_t n) {
  FinMonoid m;
  m.name = "Z" + std::to_string(n);
  m.unit = "0";
  for (std::size_t i = 0; i < n; ++i) m.elements.push_back(std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.op[{std::to_string(i), std::to_string(j)}] = std::to_string((i + j) % n);
  return delooping(m);
}

// The chain 0..n as a thin category with a morphism a -> b iff a >= b,
// monoidal via truncated addition min(a + b, n). Morphisms are named
// "h<a>_<b>".
inline std::string chain_hom_name(std::size_t a, std::size_t b) {
  return "h" + std::to_string(a) + "_" + std::to_string(b);
}

inline FinMonoidalCategory chain_model(std::size_t n) {
  FinMonoidalCategory out;
  out.cat.name = "chain" + std::to_string(n);
  for (std::size_t i = 0; i <= n; ++i) out.cat.objects.push_back(std::to_string(i));
  out.unit = "0";
  auto trunc = [n](std::size_t a, std::size_t b) { return std::min(a + b, n); };
  for (std::size_t a = 0; a <= n; ++a) {
    out.cat.identities[std::to_string(a)] = chain_hom_name(a, a);
    for (std::size_t b = 0; b <= a; ++b)
      out.cat.morphisms[chain_hom_name(a, b)] = {std::to_string(a), std::to_string(b)};
  }
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= a; ++b)
      for (std::size_t c = 0; c <= b; ++c)
        out.cat.composition[{chain_hom_name(a, b), chain_hom_name(b, c)}] = chain_hom_name(a, c);
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b)
      out.tensor_objects[{std::to_string(a), std::to_string(b)}] =
          std::to_string(trunc(a, b));
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= a; ++b)
      for (std::size_t c = 0; c <= n; ++c)
        for (std::size_t d = 0; d <= c; ++d)
          out.tensor_morphisms[{chain_hom_name(a, b), chain_hom_name(c, d)}] =
              chain_hom_name(trunc(a, c), trunc(b, d));
  out.cat.guard_size();
  return out;
}

inline FinMonoidalCategory chain3_model() { return chain_model(3); }
inline FinMonoidalCategory chain5_model() { return chain_model(4); }  // objects 0..4

// Product of monoidal categories, componentwise; names are "a.b".
inline FinMonoidalCategory product_model(const FinMonoidalCategory& a,
                                         const FinMonoidalCategory& b) {
  auto pair_name = [](const std::string& x, const std::string& y) { return x + "." + y; };
  FinMonoidalCategory out;
  out.cat.name = a.cat.name + " x " + b.cat.name;
  for (const auto& x : a.cat.objects)
    for (const auto& y : b.cat.objects) out.cat.objects.push_back(pair_name(x, y));
  out.unit = pair_name(a.unit, b.unit);
  for (const auto& [f, fe] : a.cat.morphisms)
    for (const auto& [g, ge] : b.cat.morphisms)
      out.cat.morphisms[pair_name(f, g)] = {pair_name(fe.first, ge.first),
                                            pair_name(fe.second, ge.second)};
  for (const auto& x : a.cat.objects)
    for (const auto& y : b.cat.objects)
      out.cat.identities[pair_name(x, y)] = pair_name(a.cat.id(x), b.cat.id(y));
  for (const auto& [k1, v1] : a.cat.composition)
    for (const auto& [k2, v2] : b.cat.composition)
      out.cat.composition[{pair_name(k1.first, k2.first), pair_name(k1.second, k2.second)}] =
          pair_name(v1, v2);
  for (const auto& [k1, v1] : a.tensor_objects)
    for (const auto& [k2, v2] : b.tensor_objects)
      out.tensor_objects[{pair_name(k1.first, k2.first), pair_name(k1.second, k2.second)}] =
          pair_name(v1, v2);
  for (const auto& [k1, v1] : a.tensor_morphisms)
    for (const auto& [k2, v2] : b.tensor_morphisms)
      out.tensor_morphisms[{pair_name(k1.first, k2.first), pair_name(k1.second, k2.second)}] =
          pair_name(v1, v2);
  out.cat.guard_size();
  return out;
}

// The identity functor as a lax monoidal functor (identity laxators).
inline FinLaxMonoidalFunctor identity_lax(const FinMonoidalCategory& m) {
  FinLaxMonoidalFunctor F;
  F.name = "id(" + m.cat.name + ")";
  F.dom = F.cod = m;
  for (const auto& o : m.cat.objects) F.obj[o] = o;
  for (const auto& [f, fe] : m.cat.morphisms) F.mor[f] = f;
  F.epsilon = m.cat.id(m.unit);
  for (const auto& x : m.cat.objects)
    for (const auto& y : m.cat.objects) F.mu[{x, y}] = m.cat.id(m.tensor_obj(x, y));
  return F;
}

// F(x) = ceil(x / 2) on a truncated-addition chain: lax because
// ceil(x/2) + ceil(y/2) >= ceil((x+y)/2) and the chain is thin.
inline FinLaxMonoidalFunctor chain_half_lax(std::size_t n) {
  FinMonoidalCategory big = chain_model(n);
  FinLaxMonoidalFunctor F;
  F.name = "half(chain" + std::to_string(n) + ")";
  F.dom = F.cod = big;
  auto half = [](std::size_t x) { return (x + 1) / 2; };
  for (std::size_t a = 0; a <= n; ++a) F.obj[std::to_string(a)] = std::to_string(half(a));
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= a; ++b)
      F.mor[chain_hom_name(a, b)] = chain_hom_name(half(a), half(b));
  F.epsilon = chain_hom_name(0, 0);
  auto trunc = [n](std::size_t a, std::size_t b) { return std::min(a + b, n); };
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b)
      F.mu[{std::to_string(a), std::to_string(b)}] =
          chain_hom_name(trunc(half(a), half(b)), half(trunc(a, b)));
  return F;
}

inline FinLaxMonoidalFunctor chain5_half_lax() { return chain_half_lax(4); }

// ---------------------------------------------------------------------------
// Bridge from parsed model blocks.

inline FinMonoidalCategory model_from_raw(const RawModel& raw) {
  FinMonoidalCategory out;
  out.cat.name = raw.name;
  out.cat.objects = raw.objects;
  out.unit = raw.unit;
  for (const auto& h : raw.homs)
    for (const auto& m : h.morphisms) {
      if (out.cat.morphisms.count(m))
        throw FinCatError(raw.name + ": duplicate morphism name '" + m + "'");
      out.cat.morphisms[m] = {h.src, h.tgt};
    }
  out.cat.identities = raw.identities;
  for (const auto& [k, v] : raw.compose) out.cat.composition[k] = v;
  auto is_object = [&](const std::string& s) {
    return std::find(raw.objects.begin(), raw.objects.end(), s) != raw.objects.end();
  };
  for (const auto& [k, v] : raw.tensor) {
    if (is_object(k.first) && is_object(k.second))
      out.tensor_objects[k] = v;
    else
      out.tensor_morphisms[k] = v;
  }
  out.cat.guard_size();
  return out;
}

// Looks up a model by name: user-defined blocks first, then built-ins.
inline FinMonoidalCategory resolve_model(const CollageFile& file, const std::string& name) {
  if (const RawModel* raw = file.model(name)) return model_from_raw(*raw);
  if (name == "z2") return z2_model();
  if (name == "z3") return zn_model(3);
  if (name == "chain3") return chain3_model();
  if (name == "chain5") return chain5_model();
  throw FinCatError("unknown model '" + name + "'");
}

inline std::vector<std::string> builtin_model_names() { return {"chain3", "chain5", "z2", "z3"}; }

}  // namespace collage
