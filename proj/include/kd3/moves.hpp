#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kd3/diagram.hpp"
#include "kd3/groups.hpp"
#include "kd3/invariants.hpp"

// The extended move set: handle slides involving 1-, 2- and 3-handles,
// cancellation/creation of adjacent-index pairs, and erasure of an
// inessential 3-handle against a 4-handle. Every move is a partial pure
// transformation with an explicit applicability predicate.

namespace kd3 {

enum class MoveKind {
  slide_1_1,
  slide_2_1,
  slide_2_2,
  slide_3_1,
  slide_3_2,
  slide_3_3,
  cancel_1_2,
  cancel_2_3,
  cancel_3_4,
  create_1_2,
  create_2_3,
  create_3_4,
  erase_inessential_3,
};

inline const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::slide_1_1: return "slide_1_1";
    case MoveKind::slide_2_1: return "slide_2_1";
    case MoveKind::slide_2_2: return "slide_2_2";
    case MoveKind::slide_3_1: return "slide_3_1";
    case MoveKind::slide_3_2: return "slide_3_2";
    case MoveKind::slide_3_3: return "slide_3_3";
    case MoveKind::cancel_1_2: return "cancel_1_2";
    case MoveKind::cancel_2_3: return "cancel_2_3";
    case MoveKind::cancel_3_4: return "cancel_3_4";
    case MoveKind::create_1_2: return "create_1_2";
    case MoveKind::create_2_3: return "create_2_3";
    case MoveKind::create_3_4: return "create_3_4";
    case MoveKind::erase_inessential_3: return "erase_inessential_3";
  }
  return "?";
}

inline std::optional<MoveKind> parse_move_kind(const std::string& s) {
  for (MoveKind k :
       {MoveKind::slide_1_1, MoveKind::slide_2_1, MoveKind::slide_2_2,
        MoveKind::slide_3_1, MoveKind::slide_3_2, MoveKind::slide_3_3,
        MoveKind::cancel_1_2, MoveKind::cancel_2_3, MoveKind::cancel_3_4,
        MoveKind::create_1_2, MoveKind::create_2_3, MoveKind::create_3_4,
        MoveKind::erase_inessential_3})
    if (s == move_kind_name(k)) return k;
  return std::nullopt;
}

struct MoveRequest {
  MoveKind kind;
  std::string actor;   // the handle being slid / cancelled / created
  std::string target;  // the handle slid over / the partner ("-" if none)
  int sign = 1;        // orientation choice where the move formula has +-
};

struct InvariantDigest {
  std::array<Int, 5> counts{};
  std::vector<Int> linking_snf;
  Abelianization pi1_ab;
  bool operator==(const InvariantDigest&) const = default;
};

inline InvariantDigest digest(const KirbyDiagram& d) {
  InvariantDigest g;
  g.counts = {d.zero_handles, (Int)d.one_handles.size(),
              (Int)d.two_handles.size(), (Int)d.three_handles.size(),
              d.four_handles};
  g.linking_snf = smith_normal_form(linking_matrix(d)).divisors;
  g.pi1_ab = abelianization(pi1_of_X(d).presentation);
  return g;
}

struct MoveReport {
  bool applied = false;
  std::string reason;  // why applicable / why not
  InvariantDigest pre, post;
};

struct Applicability {
  bool ok = false;
  std::string reason;
};

inline Applicability applicable(const KirbyDiagram& d, const MoveRequest& r) {
  auto no = [](const std::string& why) { return Applicability{false, why}; };
  auto yes = [](const std::string& why) { return Applicability{true, why}; };
  if (r.sign != 1 && r.sign != -1) return no("sign must be +1 or -1");
  const bool actor_dot = d.find_dotted(r.actor), actor_fr = d.find_framed(r.actor),
             actor_sp = d.find_sphere(r.actor);
  const bool tgt_dot = d.find_dotted(r.target), tgt_fr = d.find_framed(r.target),
             tgt_sp = d.find_sphere(r.target);

  switch (r.kind) {
    case MoveKind::slide_1_1:
      if (!actor_dot) return no("actor is not a dotted circle");
      if (!tgt_dot) return no("target is not a dotted circle");
      if (r.actor == r.target) return no("cannot slide a handle over itself");
      return yes("1-handle slide");
    case MoveKind::slide_2_1:
      if (!actor_fr) return no("actor is not a framed component");
      if (!tgt_dot) return no("target is not a dotted circle");
      return yes("2-handle slide over a 1-handle");
    case MoveKind::slide_2_2:
      if (!actor_fr) return no("actor is not a framed component");
      if (!tgt_fr) return no("target is not a framed component");
      if (r.actor == r.target) return no("cannot slide a handle over itself");
      return yes("2-handle slide");
    case MoveKind::slide_3_1:
      if (!actor_sp) return no("actor is not a 3-handle");
      if (!tgt_dot) return no("target is not a dotted circle");
      return yes("3-handle slide over a 1-handle (connected sum with its sphere)");
    case MoveKind::slide_3_2:
      if (!actor_sp) return no("actor is not a 3-handle");
      if (!tgt_fr) return no("target is not a framed component");
      return yes("3-handle slide over a 2-handle (two parallel meridional discs)");
    case MoveKind::slide_3_3:
      if (!actor_sp) return no("actor is not a 3-handle");
      if (!tgt_sp) return no("target is not a 3-handle");
      if (r.actor == r.target) return no("cannot slide a handle over itself");
      return yes("3-handle slide over a 3-handle");
    case MoveKind::cancel_1_2: {
      if (!actor_dot) return no("actor is not a dotted circle");
      if (!tgt_fr) return no("target is not a framed component");
      const TwoHandle* f = d.find_framed(r.target);
      int passes = 0;
      for (auto& l : f->disc_word)
        if (l.handle == r.actor) ++passes;
      if (passes != 1)
        return no("cancelling 2-handle must pass the disc exactly once");
      for (auto& g : d.two_handles) {
        if (g.id == r.target) continue;
        for (auto& l : g.disc_word)
          if (l.handle == r.actor)
            return no("extra strand through the dotted disc (" + g.id + ")");
      }
      for (auto& s : d.three_handles) {
        auto it = s.link_1h_core.find(r.actor);
        if (it != s.link_1h_core.end() && it->second != 0)
          return no("3-handle " + s.id +
                    " links the 1-handle core; rerouting not expressible");
      }
      return yes("geometrically cancelling 1-2 pair");
    }
    case MoveKind::cancel_2_3: {
      if (!actor_sp) return no("actor is not a 3-handle");
      if (!tgt_fr) return no("target is not a framed component");
      const ThreeHandleData* s = d.find_sphere(r.actor);
      for (auto& [id, v] : s->link_2h_core) {
        if (id == r.target) continue;
        if (v != 0) return no("sphere carries meridional discs of " + id);
      }
      auto it = s->link_2h_core.find(r.target);
      if (it == s->link_2h_core.end() || it->second != 1)
        return no("sphere must meet the belt sphere transversely in one point");
      return yes("geometrically cancelling 2-3 pair");
    }
    case MoveKind::cancel_3_4:
    case MoveKind::erase_inessential_3: {
      if (!actor_sp) return no("actor is not a 3-handle");
      const ThreeHandleData* s = d.find_sphere(r.actor);
      if (!s->all_zero())
        return no("attaching sphere is not inessential in this model");
      if (d.four_handles < 1) return no("no 4-handle available");
      return yes("inessential sphere cancelled by a 4-handle");
    }
    case MoveKind::create_1_2:
      if (actor_dot || actor_fr || actor_sp)
        return no("actor id already in use");
      if (tgt_dot || tgt_fr || tgt_sp) return no("target id already in use");
      if (r.actor == r.target) return no("ids must differ");
      return yes("create cancelling 1-2 pair");
    case MoveKind::create_2_3:
      if (actor_dot || actor_fr || actor_sp)
        return no("actor id already in use");
      if (tgt_dot || tgt_fr || tgt_sp) return no("target id already in use");
      if (r.actor == r.target) return no("ids must differ");
      return yes("create cancelling 2-3 pair");
    case MoveKind::create_3_4:
      if (actor_dot || actor_fr || actor_sp)
        return no("actor id already in use");
      return yes("create cancelling 3-4 pair");
  }
  return no("unknown move kind");
}

struct MoveOutcome {
  KirbyDiagram diagram;  // unchanged when not applied
  MoveReport report;
};

inline MoveOutcome apply_move(const KirbyDiagram& d, const MoveRequest& r) {
  MoveOutcome out{d, {}};
  Applicability a = applicable(d, r);
  out.report.reason = a.reason;
  out.report.pre = digest(d);
  if (!a.ok) {
    out.report.post = out.report.pre;
    return out;
  }
  KirbyDiagram n = d;
  const Int s = r.sign;

  switch (r.kind) {
    case MoveKind::slide_1_1: {
      // the slid letter is replaced by the pair: actor^e -> (actor target^s)^e
      for (auto& f : n.two_handles) {
        DiscWord w;
        for (auto& l : f.disc_word) {
          if (l.handle != r.actor) {
            w.push_back(l);
          } else if (l.sign > 0) {
            w.push_back(l);
            w.push_back({r.target, (int)s});
          } else {
            w.push_back({r.target, (int)-s});
            w.push_back(l);
          }
        }
        f.disc_word = w;
      }
      // linking rows of the two dotted circles add: row(target) += s*row(actor)
      for (auto& f : n.two_handles)
        n.linking.add(f.id, r.target, checked_mul(s, d.linking.get(f.id, r.actor)));
      break;
    }
    case MoveKind::slide_2_1: {
      // band sum with the 0-framed surgery pushoff of the dotted circle:
      // the actor's row absorbs the dotted row; the disc word is unchanged
      // because the pushoff is disjoint from every dotted disc.
      TwoHandle* f = n.find_framed(r.actor);
      f->framing = checked_add(
          f->framing, checked_mul(2 * s, d.linking.get(r.actor, r.target)));
      for (auto& h : d.one_handles)
        if (h.id != r.target)
          n.linking.add(r.actor, h.id,
                        checked_mul(s, d.linking.get(r.target, h.id)));
      for (auto& g : d.two_handles)
        if (g.id != r.actor)
          n.linking.add(r.actor, g.id,
                        checked_mul(s, d.linking.get(r.target, g.id)));
      break;
    }
    case MoveKind::slide_2_2: {
      TwoHandle* f = n.find_framed(r.actor);
      const TwoHandle* g = d.find_framed(r.target);
      Int lk = d.linking.get(r.actor, r.target);
      f->framing = checked_add(checked_add(f->framing, g->framing),
                               checked_mul(2 * s, lk));
      for (auto& x : component_order(d)) {
        if (x == r.actor || x == r.target) continue;
        n.linking.add(r.actor, x, checked_mul(s, d.linking.get(r.target, x)));
      }
      n.linking.add(r.actor, r.target, checked_mul(s, g->framing));
      DiscWord tail = g->disc_word;
      if (s < 0) {
        DiscWord rev;
        for (auto it = tail.rbegin(); it != tail.rend(); ++it)
          rev.push_back({it->handle, -it->sign});
        tail = rev;
      }
      f->disc_word.insert(f->disc_word.end(), tail.begin(), tail.end());
      for (auto& sp : n.three_handles) {
        Int add = 0;
        auto it = sp.link_2h_circle.find(r.target);
        if (it != sp.link_2h_circle.end()) add = it->second;
        if (add != 0)
          sp.link_2h_circle[r.actor] =
              checked_add(sp.link_2h_circle[r.actor], add);
      }
      break;
    }
    case MoveKind::slide_3_1: {
      ThreeHandleData* sp = n.find_sphere(r.actor);
      sp->link_1h_attach[r.target] =
          checked_add(sp->link_1h_attach[r.target], 1);
      break;
    }
    case MoveKind::slide_3_2: {
      ThreeHandleData* sp = n.find_sphere(r.actor);
      sp->link_2h_core[r.target] = checked_add(sp->link_2h_core[r.target], 2);
      for (auto& g : d.two_handles) {
        if (g.id == r.target) continue;
        Int lk = d.linking.get(r.target, g.id);
        if (lk < 0) lk = checked_neg(lk);
        if (lk != 0)
          sp->link_2h_circle[g.id] =
              checked_add(sp->link_2h_circle[g.id], checked_mul(2, lk));
      }
      break;
    }
    case MoveKind::slide_3_3: {
      ThreeHandleData* si = n.find_sphere(r.actor);
      const ThreeHandleData* sj = d.find_sphere(r.target);
      auto merge = [](std::map<std::string, Int>& dst,
                      const std::map<std::string, Int>& src) {
        for (auto& [k, v] : src)
          if (v != 0) dst[k] = checked_add(dst[k], v);
      };
      merge(si->link_1h_attach, sj->link_1h_attach);
      merge(si->link_1h_core, sj->link_1h_core);
      merge(si->link_2h_circle, sj->link_2h_circle);
      merge(si->link_2h_core, sj->link_2h_core);
      break;
    }
    case MoveKind::cancel_1_2: {
      const TwoHandle* f = d.find_framed(r.target);
      // residual word: f = u . actor^e . v, so actor = (v u)^-e inverted
      size_t pos = 0;
      int e = 1;
      for (size_t i = 0; i < f->disc_word.size(); ++i)
        if (f->disc_word[i].handle == r.actor) {
          pos = i;
          e = f->disc_word[i].sign;
        }
      DiscWord residual(f->disc_word.begin() + pos + 1, f->disc_word.end());
      residual.insert(residual.end(), f->disc_word.begin(),
                      f->disc_word.begin() + pos);
      DiscWord replacement;
      for (auto it = residual.rbegin(); it != residual.rend(); ++it)
        replacement.push_back({it->handle, -it->sign});
      if (e < 0) {
        DiscWord rev;
        for (auto it = replacement.rbegin(); it != replacement.rend(); ++it)
          rev.push_back({it->handle, -it->sign});
        replacement = rev;
      }
      for (auto& g : n.two_handles) {
        if (g.id == r.target) continue;
        DiscWord w;
        for (auto& l : g.disc_word) {
          if (l.handle != r.actor) {
            w.push_back(l);
          } else if (l.sign > 0) {
            w.insert(w.end(), replacement.begin(), replacement.end());
          } else {
            for (auto it = replacement.rbegin(); it != replacement.rend(); ++it)
              w.push_back({it->handle, -it->sign});
          }
        }
        g.disc_word = w;
      }
      std::erase_if(n.one_handles,
                    [&](const OneHandle& h) { return h.id == r.actor; });
      std::erase_if(n.two_handles,
                    [&](const TwoHandle& h) { return h.id == r.target; });
      n.linking.erase_component(r.actor);
      n.linking.erase_component(r.target);
      for (auto& sp : n.three_handles) {
        sp.link_1h_attach.erase(r.actor);
        sp.link_1h_core.erase(r.actor);
        sp.link_2h_circle.erase(r.target);
        sp.link_2h_core.erase(r.target);
      }
      break;
    }
    case MoveKind::cancel_2_3: {
      std::erase_if(n.three_handles,
                    [&](const ThreeHandleData& x) { return x.id == r.actor; });
      std::erase_if(n.two_handles,
                    [&](const TwoHandle& h) { return h.id == r.target; });
      n.linking.erase_component(r.target);
      for (auto& sp : n.three_handles) {
        sp.link_2h_circle.erase(r.target);
        sp.link_2h_core.erase(r.target);
      }
      break;
    }
    case MoveKind::cancel_3_4:
    case MoveKind::erase_inessential_3: {
      std::erase_if(n.three_handles,
                    [&](const ThreeHandleData& x) { return x.id == r.actor; });
      n.four_handles = checked_sub(n.four_handles, 1);
      break;
    }
    case MoveKind::create_1_2: {
      n.one_handles.push_back({r.actor});
      TwoHandle f;
      f.id = r.target;
      f.framing = 0;
      f.disc_word = {{r.actor, 1}};
      n.two_handles.push_back(f);
      n.linking.set(r.actor, r.target, 1);
      break;
    }
    case MoveKind::create_2_3: {
      TwoHandle f;
      f.id = r.target;
      n.two_handles.push_back(f);
      ThreeHandleData sp;
      sp.id = r.actor;
      sp.link_2h_core[r.target] = 1;
      n.three_handles.push_back(sp);
      break;
    }
    case MoveKind::create_3_4: {
      ThreeHandleData sp;
      sp.id = r.actor;
      n.three_handles.push_back(sp);
      n.four_handles = checked_add(n.four_handles, 1);
      break;
    }
  }

  out.diagram = n;
  out.report.applied = true;
  out.report.post = digest(n);
  return out;
}

// Sequential application; stops at the first inapplicable move and returns
// the partial transcript.
inline std::pair<KirbyDiagram, std::vector<MoveReport>> run_script(
    const KirbyDiagram& d, const std::vector<MoveRequest>& script) {
  KirbyDiagram cur = d;
  std::vector<MoveReport> reports;
  for (auto& r : script) {
    MoveOutcome o = apply_move(cur, r);
    reports.push_back(o.report);
    if (!o.report.applied) break;
    cur = o.diagram;
  }
  return {cur, reports};
}

}  // namespace kd3
