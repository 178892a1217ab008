#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kd3/checked.hpp"
#include "kd3/diagram.hpp"

// Crossing-level link data. A crossing stores its four edge labels
// counterclockwise starting from the incoming under-edge, plus a sign.
// Slots: a = incoming under, c = outgoing under; the over-strand enters at
// d when the sign is +1 and at b when it is -1. Edges are the segments
// between crossings; a crossing-free component is a single closed edge.

namespace kd3 {

struct PdCrossing {
  Int a = 0, b = 0, c = 0, d = 0;
  int sign = 1;
  bool operator==(const PdCrossing&) const = default;

  Int over_in() const { return sign > 0 ? d : b; }
  Int over_out() const { return sign > 0 ? b : d; }
};

struct PdComponent {
  std::string id;
  std::vector<Int> arcs;  // edges in traversal order (cyclic)
  Int framing = 0;
  bool dotted = false;
  bool operator==(const PdComponent&) const = default;
};

struct PlanarDiagramCode {
  std::vector<PdCrossing> crossings;
  std::vector<PdComponent> components;

  const PdComponent* find_component(const std::string& id) const {
    for (auto& c : components)
      if (c.id == id) return &c;
    return nullptr;
  }
  bool operator==(const PlanarDiagramCode&) const = default;
};

inline std::vector<Diagnostic> validate(const PlanarDiagramCode& pd) {
  std::vector<Diagnostic> out;
  std::map<Int, int> uses;
  for (auto& x : pd.crossings)
    for (Int e : {x.a, x.b, x.c, x.d}) ++uses[e];
  for (auto& [e, n] : uses)
    if (n != 2)
      out.push_back({"arc-use-count",
                     "edge " + std::to_string(e) + " used " +
                         std::to_string(n) + " times"});

  // edge -> successor edge along its strand
  std::map<Int, Int> next;
  auto link = [&](Int in, Int to) {
    if (next.count(in))
      out.push_back({"arc-use-count", "edge " + std::to_string(in) +
                                          " enters two crossings"});
    next[in] = to;
  };
  for (auto& x : pd.crossings) {
    link(x.a, x.c);
    link(x.over_in(), x.over_out());
  }

  std::set<Int> claimed;
  for (auto& comp : pd.components) {
    if (comp.arcs.empty()) {
      out.push_back({"empty-component", comp.id});
      continue;
    }
    for (Int e : comp.arcs)
      if (!claimed.insert(e).second)
        out.push_back({"arc-in-two-components", std::to_string(e)});
    if (comp.arcs.size() == 1 && !uses.count(comp.arcs[0]))
      continue;  // crossing-free unknot
    for (size_t i = 0; i < comp.arcs.size(); ++i) {
      Int e = comp.arcs[i];
      Int want = comp.arcs[(i + 1) % comp.arcs.size()];
      auto it = next.find(e);
      if (it == next.end() || it->second != want)
        out.push_back({"component-cycle-broken",
                       comp.id + " after edge " + std::to_string(e)});
    }
  }
  for (auto& [e, n] : uses)
    if (!claimed.count(e))
      out.push_back({"arc-unassigned", std::to_string(e)});
  std::set<std::string> ids;
  for (auto& comp : pd.components)
    if (!ids.insert(comp.id).second) out.push_back({"duplicate-id", comp.id});
  return out;
}

// Which component an edge belongs to.
inline std::map<Int, std::string> edge_components(const PlanarDiagramCode& pd) {
  std::map<Int, std::string> owner;
  for (auto& c : pd.components)
    for (Int e : c.arcs) owner[e] = c.id;
  return owner;
}

// Linking number of two distinct components: half the signed count of
// their mutual crossings.
inline Int pd_linking(const PlanarDiagramCode& pd, const std::string& c1,
                      const std::string& c2) {
  auto owner = edge_components(pd);
  Int total = 0;
  for (auto& x : pd.crossings) {
    const std::string &u = owner.at(x.a), &o = owner.at(x.over_in());
    if ((u == c1 && o == c2) || (u == c2 && o == c1))
      total = checked_add(total, x.sign);
  }
  return total / 2;
}

// Signed self-crossing count (blackboard framing).
inline Int pd_writhe(const PlanarDiagramCode& pd, const std::string& c) {
  auto owner = edge_components(pd);
  Int w = 0;
  for (auto& x : pd.crossings)
    if (owner.at(x.a) == c && owner.at(x.over_in()) == c)
      w = checked_add(w, x.sign);
  return w;
}

}  // namespace kd3
