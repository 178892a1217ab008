#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kd3/groups.hpp"
#include "kd3/pd.hpp"
#include "kd3/word.hpp"

// Wirtinger presentations from planar diagram code, longitudes, and the
// surgery presentation of the boundary 3-manifold.

namespace kd3 {

struct WirtingerResult {
  Presentation presentation;
  std::map<Int, int> arc_generator;          // edge -> generator (1-based)
  std::map<std::string, int> base_meridian;  // component -> generator
};

namespace detail {

// Wirtinger arcs: edges merged across over-strand passes.
struct ArcClasses {
  std::map<Int, Int> parent;
  Int find(Int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(Int x, Int y) {
    add(x);
    add(y);
    parent[find(x)] = find(y);
  }
  void add(Int x) {
    if (!parent.count(x)) parent[x] = x;
  }
};

inline std::map<Int, int> arc_generators(const PlanarDiagramCode& pd) {
  ArcClasses uf;
  for (auto& c : pd.components)
    for (Int e : c.arcs) uf.add(e);
  for (auto& x : pd.crossings) uf.unite(x.over_in(), x.over_out());
  std::map<Int, int> gen;  // class representative -> generator index
  std::map<Int, int> out;
  int n = 0;
  for (auto& c : pd.components)
    for (Int e : c.arcs) {
      Int root = uf.find(e);
      auto it = gen.find(root);
      if (it == gen.end()) it = gen.emplace(root, ++n).first;
      out[e] = it->second;
    }
  return out;
}

}  // namespace detail

// One generator per arc, one conjugation relator per crossing
// (out = over^sign * in * over^-sign), with one redundant relator dropped.
inline WirtingerResult wirtinger(const PlanarDiagramCode& pd) {
  auto diags = validate(pd);
  if (!diags.empty())
    throw std::invalid_argument("invalid pd: " + diags.front().code + " " +
                                diags.front().detail);
  WirtingerResult r;
  r.arc_generator = detail::arc_generators(pd);
  int n = 0;
  for (auto& [e, g] : r.arc_generator) n = std::max(n, g);
  r.presentation.gens = n;
  for (auto& x : pd.crossings) {
    int in = r.arc_generator.at(x.a);
    int out = r.arc_generator.at(x.c);
    int over = r.arc_generator.at(x.over_in());
    Word w{-out, x.sign * over, in, -x.sign * over};
    r.presentation.relators.push_back(free_reduce(w));
  }
  if (!r.presentation.relators.empty()) r.presentation.relators.pop_back();
  for (auto& c : pd.components)
    r.base_meridian[c.id] = r.arc_generator.at(c.arcs.front());
  return r;
}

// 0-framed longitude as a word in Wirtinger generators: over-arc letters
// collected at the component's under-crossings, then the blackboard
// framing cancelled with the base meridian.
inline Word longitude(const PlanarDiagramCode& pd, const std::string& comp) {
  if (!pd.find_component(comp))
    throw std::invalid_argument("unknown component: " + comp);
  auto gens = detail::arc_generators(pd);
  auto owner = edge_components(pd);
  const PdComponent& c = *pd.find_component(comp);

  // map incoming-under edge -> crossing index for this component
  std::map<Int, size_t> under_at;
  for (size_t i = 0; i < pd.crossings.size(); ++i)
    if (owner.at(pd.crossings[i].a) == comp) under_at[pd.crossings[i].a] = i;

  Word w;
  for (Int e : c.arcs) {
    auto it = under_at.find(e);
    if (it == under_at.end()) continue;
    const PdCrossing& x = pd.crossings[it->second];
    w.push_back(x.sign * gens.at(x.over_in()));
  }
  Int writhe = pd_writhe(pd, comp);
  int mu = gens.at(c.arcs.front());
  for (Int i = 0; i < (writhe > 0 ? writhe : -writhe); ++i)
    w.push_back(writhe > 0 ? -mu : mu);
  return free_reduce(w);
}

// Surgery presentation of the boundary: Wirtinger relators plus, for each
// component, (0-framed longitude) * meridian^framing. Dotted components
// are exactly the 0-framed ones.
inline Presentation pi1_of_boundary(const PlanarDiagramCode& pd) {
  WirtingerResult w = wirtinger(pd);
  Presentation p = w.presentation;
  for (auto& c : pd.components) {
    Word rel = longitude(pd, c.id);
    Int f = c.dotted ? 0 : c.framing;
    int mu = w.base_meridian.at(c.id);
    for (Int i = 0; i < (f > 0 ? f : -f); ++i) rel.push_back(f > 0 ? mu : -mu);
    rel = free_reduce(rel);
    if (!rel.empty()) p.relators.push_back(rel);
  }
  return p;
}

}  // namespace kd3
