#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kd3/diagram.hpp"

// Banded-unlink processing: band resolutions, surface Euler characteristic,
// 3-handle counting, and the Kirby diagram of the surface-knot exterior.

namespace kd3 {

enum class Which { L_minus, L_plus };

struct Resolution {
  Which which;
  Int component_count = 0;
};

namespace detail {

// Boundary points of the attachment arcs: each slot s on a circle has an
// incoming endpoint in(s) and an outgoing endpoint out(s); the circle
// contributes the arcs out(s) ~ in(s+1). Band surgery reconnects the slot
// endpoints across the band; discarding a band closes each slot locally.
struct PointUf {
  std::vector<int> parent;
  explicit PointUf(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = (int)i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace detail

inline Resolution resolve(const BandedUnlink& b, Which which) {
  auto diags = validate(b);
  if (!diags.empty())
    throw std::invalid_argument("invalid banded unlink: " +
                                diags.front().code);
  // point ids: per component, slot s -> in = base+2s, out = base+2s+1
  std::map<std::string, int> base;
  int total = 0;
  Int free_circles = 0;
  for (auto& c : b.components) {
    if (c.slots == 0) {
      ++free_circles;
      continue;
    }
    base[c.id] = total;
    total += (int)(2 * c.slots);
  }
  detail::PointUf uf(total);
  auto in_pt = [&](const BandEnd& e) { return base.at(e.component) + 2 * (int)e.slot; };
  auto out_pt = [&](const BandEnd& e) { return base.at(e.component) + 2 * (int)e.slot + 1; };
  for (auto& c : b.components) {
    if (c.slots == 0) continue;
    for (Int s = 0; s < c.slots; ++s) {
      int out = base.at(c.id) + 2 * (int)s + 1;
      int next_in = base.at(c.id) + 2 * (int)((s + 1) % c.slots);
      uf.unite(out, next_in);
    }
  }
  for (auto& band : b.bands) {
    if (which == Which::L_minus) {
      uf.unite(in_pt(band.a), out_pt(band.a));
      uf.unite(in_pt(band.b), out_pt(band.b));
    } else if (!band.flip) {
      uf.unite(in_pt(band.a), out_pt(band.b));
      uf.unite(out_pt(band.a), in_pt(band.b));
    } else {
      uf.unite(in_pt(band.a), in_pt(band.b));
      uf.unite(out_pt(band.a), out_pt(band.b));
    }
  }
  std::map<int, int> roots;
  for (int i = 0; i < total; ++i) roots[uf.find(i)] = 1;
  Resolution r{which, (Int)roots.size() + free_circles};
  if (r.component_count < 1 && !b.components.empty())
    throw std::logic_error("resolution lost all components");
  return r;
}

inline Int surface_euler(const BandedUnlink& b) {
  Int lm = resolve(b, Which::L_minus).component_count;
  Int lp = resolve(b, Which::L_plus).component_count;
  return checked_sub(checked_add(lm, lp), (Int)b.bands.size());
}

inline Int three_handle_count(const BandedUnlink& b) {
  return checked_sub(resolve(b, Which::L_plus).component_count, 1);
}

// A banded surface is orientable iff the component circles can be oriented
// so that every band is attached coherently: an unflipped band wants equal
// orientations, a flipped one opposite; a flipped band with both ends on
// one circle is a Mobius band.
inline bool orientable(const BandedUnlink& b) {
  std::map<std::string, std::pair<std::string, int>> up;  // id -> (parent, parity)
  for (auto& c : b.components) up[c.id] = {c.id, 0};
  std::function<std::pair<std::string, int>(const std::string&)> find =
      [&](const std::string& x) -> std::pair<std::string, int> {
    if (up[x].first == x) return {x, 0};
    auto [root, par] = find(up[x].first);
    up[x] = {root, (up[x].second + par) & 1};
    return up[x];
  };
  for (auto& band : b.bands) {
    int want = band.flip ? 1 : 0;
    auto [ra, pa] = find(band.a.component);
    auto [rb, pb] = find(band.b.component);
    if (ra == rb) {
      if (((pa + pb) & 1) != want) return false;
    } else {
      up[ra] = {rb, (pa + pb + want) & 1};
    }
  }
  return true;
}

// Kirby diagram of the surface-knot exterior: dot every unlink component,
// replace every band by a 0-framed circle passing the two endpoint discs,
// and record |L+| - 1 three-handles (attaching data left zero until the
// spheres are identified in the boundary).
inline KirbyDiagram exterior_kirby(const BandedUnlink& b) {
  auto diags = validate(b);
  if (!diags.empty())
    throw std::invalid_argument("invalid banded unlink: " +
                                diags.front().code);
  if (!orientable(b))
    throw std::invalid_argument("non-orientable banded surface");
  KirbyDiagram d;
  for (auto& c : b.components) d.one_handles.push_back({c.id});
  for (auto& band : b.bands) {
    TwoHandle h;
    h.id = band.id;
    h.framing = 0;
    if (band.a.component == band.b.component) {
      h.disc_word = {{band.a.component, 1}, {band.a.component, -1}};
    } else {
      h.disc_word = {{band.a.component, 1},
                     {band.b.component, band.flip ? 1 : -1}};
      d.linking.set(band.id, band.a.component, 1);
      d.linking.set(band.id, band.b.component, band.flip ? 1 : -1);
    }
    d.two_handles.push_back(h);
  }
  Int k = three_handle_count(b);
  for (Int i = 1; i <= k; ++i) {
    ThreeHandleData s;
    s.id = "s" + std::to_string(i);
    d.three_handles.push_back(s);
  }
  d.four_handles = 0;
  return d;
}

}  // namespace kd3
