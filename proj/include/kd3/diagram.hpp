#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kd3/checked.hpp"

// Extended Kirby diagrams: dotted circles (1-handles), framed components
// with disc words (2-handles), 3-handle linking records, 4-handle count,
// and the symmetric linking table. All values are immutable-by-use:
// operations take a diagram by const reference and return new values.

namespace kd3 {

struct OneHandle {
  std::string id;
  bool operator==(const OneHandle&) const = default;
};

// One signed pass through a dotted circle's disc. sign = +1 when the pass
// agrees with the dotted circle's chosen normal.
struct DiscLetter {
  std::string handle;
  int sign = 1;
  bool operator==(const DiscLetter&) const = default;
};

using DiscWord = std::vector<DiscLetter>;

struct TwoHandle {
  std::string id;
  Int framing = 0;  // full twists relative to the 0-framing
  DiscWord disc_word;
  bool operator==(const TwoHandle&) const = default;
};

// Attaching-sphere record of a 3-handle: geometric interaction counts with
// the earlier handles. The mod-2 reductions are the homology classes that
// determine the sphere in this model; integers are kept so cancellation
// ("meets the belt sphere once") stays expressible.
struct ThreeHandleData {
  std::string id;
  std::map<std::string, Int> link_1h_attach;  // case (1)(a)
  std::map<std::string, Int> link_1h_core;    // case (1)(b)
  std::map<std::string, Int> link_2h_circle;  // case (2)(a)
  std::map<std::string, Int> link_2h_core;    // case (2)(b)

  bool all_zero() const {
    auto z = [](const std::map<std::string, Int>& m) {
      for (auto& [k, v] : m)
        if (v != 0) return false;
      return true;
    };
    return z(link_1h_attach) && z(link_1h_core) && z(link_2h_circle) &&
           z(link_2h_core);
  }
  bool operator==(const ThreeHandleData&) const = default;
};

// Off-diagonal linking numbers, stored once per unordered pair. Diagonal
// entries follow the fixed convention: framing for framed components, 0
// for dotted ones.
struct LinkingTable {
  std::map<std::pair<std::string, std::string>, Int> entries;

  static std::pair<std::string, std::string> key(const std::string& a,
                                                 const std::string& b) {
    return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
  }
  Int get(const std::string& a, const std::string& b) const {
    auto it = entries.find(key(a, b));
    return it == entries.end() ? 0 : it->second;
  }
  void set(const std::string& a, const std::string& b, Int v) {
    if (v == 0)
      entries.erase(key(a, b));
    else
      entries[key(a, b)] = v;
  }
  void add(const std::string& a, const std::string& b, Int v) {
    set(a, b, checked_add(get(a, b), v));
  }
  void erase_component(const std::string& id) {
    for (auto it = entries.begin(); it != entries.end();)
      it = (it->first.first == id || it->first.second == id)
               ? entries.erase(it)
               : std::next(it);
  }
  bool operator==(const LinkingTable&) const = default;
};

struct KirbyDiagram {
  Int zero_handles = 1;
  std::vector<OneHandle> one_handles;
  std::vector<TwoHandle> two_handles;
  std::vector<ThreeHandleData> three_handles;
  Int four_handles = 0;
  LinkingTable linking;

  const OneHandle* find_dotted(const std::string& id) const {
    for (auto& h : one_handles)
      if (h.id == id) return &h;
    return nullptr;
  }
  const TwoHandle* find_framed(const std::string& id) const {
    for (auto& h : two_handles)
      if (h.id == id) return &h;
    return nullptr;
  }
  TwoHandle* find_framed(const std::string& id) {
    for (auto& h : two_handles)
      if (h.id == id) return &h;
    return nullptr;
  }
  const ThreeHandleData* find_sphere(const std::string& id) const {
    for (auto& s : three_handles)
      if (s.id == id) return &s;
    return nullptr;
  }
  ThreeHandleData* find_sphere(const std::string& id) {
    for (auto& s : three_handles)
      if (s.id == id) return &s;
    return nullptr;
  }
  bool operator==(const KirbyDiagram&) const = default;
};

// Banded unlink: unlink components as cyclic slot sequences plus bands.
struct BandEnd {
  std::string component;
  Int slot = 0;
  bool operator==(const BandEnd&) const = default;
};

struct Band {
  std::string id;
  BandEnd a, b;
  bool flip = false;  // orientation flag
  bool operator==(const Band&) const = default;
};

struct UnlinkComponent {
  std::string id;
  Int slots = 0;
  bool operator==(const UnlinkComponent&) const = default;
};

struct BandedUnlink {
  std::vector<UnlinkComponent> components;
  std::vector<Band> bands;

  const UnlinkComponent* find_component(const std::string& id) const {
    for (auto& c : components)
      if (c.id == id) return &c;
    return nullptr;
  }
  bool operator==(const BandedUnlink&) const = default;
};

struct Diagnostic {
  std::string code;
  std::string detail;
  bool operator==(const Diagnostic&) const = default;
};

inline Int disc_word_exponent_sum(const DiscWord& w, const std::string& id) {
  Int s = 0;
  for (auto& l : w)
    if (l.handle == id) s = checked_add(s, l.sign);
  return s;
}

inline std::vector<Diagnostic> validate(const KirbyDiagram& d) {
  std::vector<Diagnostic> out;
  if (d.zero_handles != 1)
    out.push_back({"zero-handle-count",
                   "exactly one 0-handle required, got " +
                       std::to_string(d.zero_handles)});
  if (d.four_handles < 0)
    out.push_back({"negative-4handle-count", ""});

  std::set<std::string> ids;
  for (auto& h : d.one_handles)
    if (!ids.insert(h.id).second)
      out.push_back({"duplicate-id", h.id});
  for (auto& h : d.two_handles)
    if (!ids.insert(h.id).second)
      out.push_back({"duplicate-id", h.id});
  std::set<std::string> sphere_ids;
  for (auto& s : d.three_handles)
    if (!sphere_ids.insert(s.id).second)
      out.push_back({"duplicate-3handle-id", s.id});

  for (auto& f : d.two_handles)
    for (auto& l : f.disc_word)
      if (!d.find_dotted(l.handle))
        out.push_back({"unknown-word-letter", f.id + ": " + l.handle});

  for (auto& [k, v] : d.linking.entries) {
    bool a_dot = d.find_dotted(k.first), b_dot = d.find_dotted(k.second);
    bool a_known = a_dot || d.find_framed(k.first);
    bool b_known = b_dot || d.find_framed(k.second);
    if (!a_known || !b_known) {
      out.push_back({"unknown-linking-component",
                     k.first + " " + k.second});
      continue;
    }
    if (k.first == k.second) continue;  // diagonal handled by convention
    if (a_dot && b_dot && v != 0)
      out.push_back({"dotted-dotted-linking", k.first + " " + k.second});
  }

  for (auto& f : d.two_handles)
    for (auto& h : d.one_handles) {
      Int es = disc_word_exponent_sum(f.disc_word, h.id);
      if (es != d.linking.get(f.id, h.id))
        out.push_back({"word-linking-mismatch",
                       f.id + " vs " + h.id + ": word exponent sum " +
                           std::to_string(es) + ", linking " +
                           std::to_string(d.linking.get(f.id, h.id))});
    }

  for (auto& s : d.three_handles) {
    auto chk = [&](const std::map<std::string, Int>& m, bool dotted,
                   const char* which) {
      for (auto& [id, v] : m) {
        bool known = dotted ? d.find_dotted(id) != nullptr
                            : d.find_framed(id) != nullptr;
        if (!known)
          out.push_back({"unknown-3handle-ref",
                         s.id + std::string(" ") + which + " " + id});
        if (v < 0)
          out.push_back({"negative-multiplicity",
                         s.id + std::string(" ") + which + " " + id});
      }
    };
    chk(s.link_1h_attach, true, "1a");
    chk(s.link_1h_core, true, "1b");
    chk(s.link_2h_circle, false, "2a");
    chk(s.link_2h_core, false, "2b");
  }
  return out;
}

inline std::vector<Diagnostic> validate(const BandedUnlink& b) {
  std::vector<Diagnostic> out;
  std::set<std::string> ids;
  for (auto& c : b.components) {
    if (!ids.insert(c.id).second) out.push_back({"duplicate-id", c.id});
    if (c.slots < 0) out.push_back({"negative-slot-count", c.id});
  }
  std::set<std::string> bids;
  std::set<std::pair<std::string, Int>> used;
  for (auto& band : b.bands) {
    if (!bids.insert(band.id).second)
      out.push_back({"duplicate-id", band.id});
    for (auto* e : {&band.a, &band.b}) {
      auto* c = b.find_component(e->component);
      if (!c) {
        out.push_back({"unknown-component", band.id + ": " + e->component});
        continue;
      }
      if (e->slot < 0 || e->slot >= c->slots)
        out.push_back({"slot-out-of-range", band.id});
      else if (!used.insert({e->component, e->slot}).second)
        out.push_back({"slot-reused",
                       e->component + "@" + std::to_string(e->slot)});
    }
    if (band.a.component == band.b.component && band.a.slot == band.b.slot)
      out.push_back({"band-ends-coincide", band.id});
  }
  for (auto& c : b.components) {
    Int n = 0;
    for (auto& band : b.bands) {
      if (band.a.component == c.id) ++n;
      if (band.b.component == c.id) ++n;
    }
    if (n != c.slots)
      out.push_back({"unused-slot", c.id + ": " + std::to_string(c.slots) +
                                        " slots, " + std::to_string(n) +
                                        " band ends"});
  }
  return out;
}

inline Int euler_characteristic(const KirbyDiagram& d) {
  Int chi = d.zero_handles;
  chi = checked_sub(chi, (Int)d.one_handles.size());
  chi = checked_add(chi, (Int)d.two_handles.size());
  chi = checked_sub(chi, (Int)d.three_handles.size());
  chi = checked_add(chi, d.four_handles);
  return chi;
}

// Component order used everywhere a matrix or presentation is built:
// dotted circles first, then framed components, each block sorted by id.
inline std::vector<std::string> component_order(const KirbyDiagram& d) {
  std::vector<std::string> dotted, framed;
  for (auto& h : d.one_handles) dotted.push_back(h.id);
  for (auto& h : d.two_handles) framed.push_back(h.id);
  std::sort(dotted.begin(), dotted.end());
  std::sort(framed.begin(), framed.end());
  dotted.insert(dotted.end(), framed.begin(), framed.end());
  return dotted;
}

}  // namespace kd3
