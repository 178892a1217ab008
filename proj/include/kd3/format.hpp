#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "kd3/diagram.hpp"
#include "kd3/groups.hpp"
#include "kd3/matrix.hpp"
#include "kd3/moves.hpp"
#include "kd3/pd.hpp"

// The kd3 text format. Line oriented, UTF-8, '#' starts a comment.
//
//   kd3 v1
//   1handle d1
//   2handle f1 framing=0 word=d1 d2^-1
//   link f1 d1 = 1
//   3handle s1 1a={d1:1} 1b={} 2a={} 2b={f1:2}
//   4handles 1
//   pd (1,2,5,4,+) (2,3,6,5,+)
//   pdcomp f1 arcs=1,5,3
//   unlink u1 slots=2
//   band b1 u1@0 u2@1 [flip]
//
// Unknown statement kinds are errors. Serialization is canonical: sorted
// identifiers, normalized whitespace, zero entries omitted.

namespace kd3 {

struct ParseError {
  int line = 0;
  int column = 0;
  std::string message;
};

struct ParsedDocument {
  std::variant<KirbyDiagram, BandedUnlink> value;
  std::optional<PlanarDiagramCode> pd;  // crossing-level data, if present

  KirbyDiagram* diagram() { return std::get_if<KirbyDiagram>(&value); }
  const KirbyDiagram* diagram() const {
    return std::get_if<KirbyDiagram>(&value);
  }
  BandedUnlink* banded() { return std::get_if<BandedUnlink>(&value); }
  const BandedUnlink* banded() const {
    return std::get_if<BandedUnlink>(&value);
  }
};

struct ParseResult {
  std::optional<ParsedDocument> document;
  std::vector<ParseError> errors;
  bool ok() const { return document.has_value() && errors.empty(); }
};

namespace detail {

struct LineLexer {
  const std::string& s;
  size_t pos = 0;
  int line;
  explicit LineLexer(const std::string& text, int ln) : s(text), line(ln) {}

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  int col() const { return (int)pos + 1; }
  std::string token() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && !std::isspace((unsigned char)s[pos])) ++pos;
    return s.substr(start, pos - start);
  }
  bool literal(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
};

inline bool valid_id(const std::string& t) {
  if (t.empty()) return false;
  if (!std::isalpha((unsigned char)t[0]) && t[0] != '_') return false;
  for (char c : t)
    if (!std::isalnum((unsigned char)c) && c != '_') return false;
  return true;
}

inline bool parse_int(const std::string& t, Int& out) {
  if (t.empty()) return false;
  size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
  if (i == t.size()) return false;
  for (size_t j = i; j < t.size(); ++j)
    if (!std::isdigit((unsigned char)t[j])) return false;
  try {
    out = std::stoll(t);
  } catch (...) {
    return false;
  }
  return true;
}

// "d1" or "d1^-1"
inline bool parse_letter(const std::string& t, DiscLetter& out) {
  auto caret = t.find('^');
  std::string id = t.substr(0, caret);
  if (!valid_id(id)) return false;
  out.handle = id;
  out.sign = 1;
  if (caret != std::string::npos) {
    std::string e = t.substr(caret + 1);
    if (e == "1" || e == "+1")
      out.sign = 1;
    else if (e == "-1")
      out.sign = -1;
    else
      return false;
  }
  return true;
}

// "{id:n,id:n,...}" or "{}"
inline bool parse_count_map(const std::string& t,
                            std::map<std::string, Int>& out) {
  if (t.size() < 2 || t.front() != '{' || t.back() != '}') return false;
  std::string body = t.substr(1, t.size() - 2);
  if (body.empty()) return true;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) return false;
    std::string id = item.substr(0, colon);
    Int v;
    if (!valid_id(id) || !parse_int(item.substr(colon + 1), v)) return false;
    if (v != 0) out[id] = v;
  }
  return true;
}

// "(a,b,c,d,+)" or "(a,b,c,d,-)"
inline bool parse_crossing(const std::string& t, PdCrossing& out) {
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') return false;
  std::string body = t.substr(1, t.size() - 2);
  std::vector<std::string> parts;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 5) return false;
  Int v[4];
  for (int i = 0; i < 4; ++i)
    if (!parse_int(parts[i], v[i]) || v[i] <= 0) return false;
  out.a = v[0];
  out.b = v[1];
  out.c = v[2];
  out.d = v[3];
  if (parts[4] == "+")
    out.sign = 1;
  else if (parts[4] == "-")
    out.sign = -1;
  else
    return false;
  return true;
}

}  // namespace detail

inline ParseResult parse_kd3(const std::string& text) {
  ParseResult res;
  KirbyDiagram kd;
  BandedUnlink bu;
  PlanarDiagramCode pd;
  bool saw_header = false, saw_kirby = false, saw_banded = false,
       saw_pd = false, saw_4handles = false;
  // explicit link statements, checked for symmetry against duplicates
  std::map<std::pair<std::string, std::string>, Int> links;

  auto err = [&](int line, int col, const std::string& m) {
    res.errors.push_back({line, col, m});
  };

  std::stringstream stream(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(stream, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    detail::LineLexer lx(line, lineno);
    if (lx.at_end()) continue;
    std::string kw = lx.token();

    if (!saw_header) {
      if (kw != "kd3") {
        err(lineno, 1, "expected header 'kd3 v1'");
        return res;
      }
      std::string v = lx.token();
      if (v != "v1") {
        err(lineno, lx.col(), "unsupported version '" + v + "'");
        return res;
      }
      saw_header = true;
      continue;
    }

    if (kw == "1handle") {
      std::string id = lx.token();
      if (!detail::valid_id(id)) {
        err(lineno, lx.col(), "expected identifier after 1handle");
        continue;
      }
      saw_kirby = true;
      kd.one_handles.push_back({id});
    } else if (kw == "2handle") {
      std::string id = lx.token();
      if (!detail::valid_id(id)) {
        err(lineno, lx.col(), "expected identifier after 2handle");
        continue;
      }
      std::string fr = lx.token();
      TwoHandle h;
      h.id = id;
      if (fr.rfind("framing=", 0) != 0 ||
          !detail::parse_int(fr.substr(8), h.framing)) {
        err(lineno, lx.col(), "expected framing=<int>");
        continue;
      }
      std::string w = lx.token();
      if (w.rfind("word=", 0) != 0) {
        err(lineno, lx.col(), "expected word=<letters>");
        continue;
      }
      std::string first = w.substr(5);
      bool bad = false;
      auto add_letter = [&](const std::string& t) {
        DiscLetter l;
        if (!detail::parse_letter(t, l)) {
          err(lineno, lx.col(), "bad word letter '" + t + "'");
          bad = true;
        } else {
          h.disc_word.push_back(l);
        }
      };
      if (!first.empty()) add_letter(first);
      while (!lx.at_end() && !bad) add_letter(lx.token());
      if (bad) continue;
      saw_kirby = true;
      kd.two_handles.push_back(h);
    } else if (kw == "link") {
      std::string a = lx.token(), b = lx.token();
      if (!detail::valid_id(a) || !detail::valid_id(b)) {
        err(lineno, lx.col(), "expected 'link <id> <id> = <int>'");
        continue;
      }
      if (!lx.literal('=')) {
        err(lineno, lx.col(), "expected '='");
        continue;
      }
      Int v;
      if (!detail::parse_int(lx.token(), v)) {
        err(lineno, lx.col(), "expected integer linking value");
        continue;
      }
      auto key = LinkingTable::key(a, b);
      auto it = links.find(key);
      if (it != links.end() && it->second != v) {
        err(lineno, 1,
            "asymmetric linking entry for " + a + " " + b + ": " +
                std::to_string(it->second) + " vs " + std::to_string(v));
        continue;
      }
      links[key] = v;
      saw_kirby = true;
    } else if (kw == "3handle") {
      std::string id = lx.token();
      if (!detail::valid_id(id)) {
        err(lineno, lx.col(), "expected identifier after 3handle");
        continue;
      }
      ThreeHandleData s;
      s.id = id;
      bool bad = false;
      while (!lx.at_end()) {
        std::string t = lx.token();
        std::map<std::string, Int>* dst = nullptr;
        size_t plen = 0;
        if (t.rfind("1a=", 0) == 0) dst = &s.link_1h_attach, plen = 3;
        else if (t.rfind("1b=", 0) == 0) dst = &s.link_1h_core, plen = 3;
        else if (t.rfind("2a=", 0) == 0) dst = &s.link_2h_circle, plen = 3;
        else if (t.rfind("2b=", 0) == 0) dst = &s.link_2h_core, plen = 3;
        if (!dst || !detail::parse_count_map(t.substr(plen), *dst)) {
          err(lineno, lx.col(), "bad 3handle field '" + t + "'");
          bad = true;
          break;
        }
      }
      if (bad) continue;
      saw_kirby = true;
      kd.three_handles.push_back(s);
    } else if (kw == "4handles") {
      Int v;
      if (!detail::parse_int(lx.token(), v) || v < 0) {
        err(lineno, lx.col(), "expected non-negative count after 4handles");
        continue;
      }
      if (saw_4handles) {
        err(lineno, 1, "duplicate 4handles statement");
        continue;
      }
      saw_4handles = true;
      saw_kirby = true;
      kd.four_handles = v;
    } else if (kw == "pd") {
      while (!lx.at_end()) {
        std::string t = lx.token();
        PdCrossing x;
        if (!detail::parse_crossing(t, x)) {
          err(lineno, lx.col(), "bad crossing '" + t + "'");
          break;
        }
        pd.crossings.push_back(x);
      }
      saw_pd = true;
    } else if (kw == "pdcomp") {
      std::string id = lx.token();
      std::string arcs = lx.token();
      if (!detail::valid_id(id) || arcs.rfind("arcs=", 0) != 0) {
        err(lineno, lx.col(), "expected 'pdcomp <id> arcs=<a,b,...>'");
        continue;
      }
      PdComponent c;
      c.id = id;
      std::stringstream ss(arcs.substr(5));
      std::string item;
      bool bad = false;
      while (std::getline(ss, item, ',')) {
        Int v;
        if (!detail::parse_int(item, v) || v <= 0) {
          err(lineno, lx.col(), "bad arc id '" + item + "'");
          bad = true;
          break;
        }
        c.arcs.push_back(v);
      }
      if (bad || c.arcs.empty()) {
        if (c.arcs.empty() && !bad)
          err(lineno, lx.col(), "pdcomp needs at least one arc");
        continue;
      }
      pd.components.push_back(c);
      saw_pd = true;
    } else if (kw == "unlink") {
      std::string id = lx.token();
      std::string slots = lx.token();
      Int v = 0;
      if (!detail::valid_id(id) || slots.rfind("slots=", 0) != 0 ||
          !detail::parse_int(slots.substr(6), v) || v < 0) {
        err(lineno, lx.col(), "expected 'unlink <id> slots=<n>'");
        continue;
      }
      saw_banded = true;
      bu.components.push_back({id, v});
    } else if (kw == "band") {
      std::string id = lx.token();
      auto parse_end = [&](BandEnd& e) {
        std::string t = lx.token();
        auto at = t.find('@');
        if (at == std::string::npos) return false;
        e.component = t.substr(0, at);
        return detail::valid_id(e.component) &&
               detail::parse_int(t.substr(at + 1), e.slot) && e.slot >= 0;
      };
      Band band;
      band.id = id;
      if (!detail::valid_id(id) || !parse_end(band.a) || !parse_end(band.b)) {
        err(lineno, lx.col(), "expected 'band <id> <id>@<slot> <id>@<slot>'");
        continue;
      }
      if (!lx.at_end()) {
        std::string t = lx.token();
        if (t == "flip")
          band.flip = true;
        else {
          err(lineno, lx.col(), "unexpected token '" + t + "'");
          continue;
        }
      }
      saw_banded = true;
      bu.bands.push_back(band);
    } else {
      err(lineno, 1, "unknown statement kind '" + kw + "'");
    }
  }

  if (!saw_header) {
    err(lineno ? lineno : 1, 1, "missing header 'kd3 v1'");
    return res;
  }
  if (saw_banded && (saw_kirby || saw_pd)) {
    err(lineno, 1, "document mixes banded-unlink and kirby statements");
    return res;
  }
  if (!res.errors.empty()) return res;

  if (saw_banded) {
    res.document = ParsedDocument{bu, std::nullopt};
    return res;
  }

  // resolve link statements
  for (auto& [key, v] : links) {
    auto known = [&](const std::string& id) {
      return kd.find_dotted(id) || kd.find_framed(id);
    };
    if (!known(key.first) || !known(key.second)) {
      err(0, 0, "link references unknown identifier " + key.first + " " +
                    key.second);
      continue;
    }
    if (key.first == key.second) {
      auto* f = kd.find_framed(key.first);
      Int want = f ? f->framing : 0;
      if (v != want)
        err(0, 0, "diagonal linking for " + key.first +
                      " conflicts with its framing/dot convention");
      continue;
    }
    kd.linking.set(key.first, key.second, v);
  }
  // word/linking consistency is a semantic parse error as well as a
  // validation diagnostic
  for (auto& f : kd.two_handles)
    for (auto& h : kd.one_handles) {
      Int es = disc_word_exponent_sum(f.disc_word, h.id);
      if (es != kd.linking.get(f.id, h.id))
        err(0, 0, "word/linking mismatch for " + f.id + " over " + h.id);
    }
  if (!res.errors.empty()) return res;

  // attach pd component flags from the component declarations
  std::optional<PlanarDiagramCode> pd_out;
  if (saw_pd) {
    for (auto& c : pd.components) {
      if (kd.find_dotted(c.id)) {
        c.dotted = true;
        c.framing = 0;
      } else if (auto* f = kd.find_framed(c.id)) {
        c.dotted = false;
        c.framing = f->framing;
      } else {
        err(0, 0, "pdcomp references unknown component " + c.id);
      }
    }
    if (!res.errors.empty()) return res;
    pd_out = pd;
  }
  res.document = ParsedDocument{kd, pd_out};
  return res;
}

// ---------------------------------------------------------------------
// Canonical serialization: components sorted by id, weights sorted, zero
// entries omitted, single spaces. parse(serialize(d)) == canonicalize(d).

namespace detail {

inline std::string letter_str(const DiscLetter& l) {
  return l.sign > 0 ? l.handle : l.handle + "^-1";
}

inline std::string map_str(const std::map<std::string, Int>& m) {
  std::string out = "{";
  bool first = true;
  for (auto& [k, v] : m) {
    if (v == 0) continue;
    if (!first) out += ",";
    out += k + ":" + std::to_string(v);
    first = false;
  }
  return out + "}";
}

}  // namespace detail

inline std::string serialize_kd3(const KirbyDiagram& d,
                                 const std::optional<PlanarDiagramCode>& pd =
                                     std::nullopt) {
  std::ostringstream out;
  out << "kd3 v1\n";
  std::vector<std::string> dotted;
  for (auto& h : d.one_handles) dotted.push_back(h.id);
  std::sort(dotted.begin(), dotted.end());
  for (auto& id : dotted) out << "1handle " << id << "\n";
  std::vector<std::string> framed;
  for (auto& h : d.two_handles) framed.push_back(h.id);
  std::sort(framed.begin(), framed.end());
  for (auto& id : framed) {
    auto* f = d.find_framed(id);
    out << "2handle " << id << " framing=" << f->framing << " word=";
    for (size_t i = 0; i < f->disc_word.size(); ++i)
      out << (i ? " " : "") << detail::letter_str(f->disc_word[i]);
    out << "\n";
  }
  for (auto& [key, v] : d.linking.entries)
    if (v != 0)
      out << "link " << key.first << " " << key.second << " = " << v << "\n";
  std::vector<std::string> spheres;
  for (auto& s : d.three_handles) spheres.push_back(s.id);
  std::sort(spheres.begin(), spheres.end());
  for (auto& id : spheres) {
    auto* s = d.find_sphere(id);
    out << "3handle " << id << " 1a=" << detail::map_str(s->link_1h_attach)
        << " 1b=" << detail::map_str(s->link_1h_core)
        << " 2a=" << detail::map_str(s->link_2h_circle)
        << " 2b=" << detail::map_str(s->link_2h_core) << "\n";
  }
  if (d.four_handles != 0) out << "4handles " << d.four_handles << "\n";
  if (pd) {
    if (!pd->crossings.empty()) {
      out << "pd";
      for (auto& x : pd->crossings)
        out << " (" << x.a << "," << x.b << "," << x.c << "," << x.d << ","
            << (x.sign > 0 ? "+" : "-") << ")";
      out << "\n";
    }
    for (auto& c : pd->components) {
      out << "pdcomp " << c.id << " arcs=";
      for (size_t i = 0; i < c.arcs.size(); ++i)
        out << (i ? "," : "") << c.arcs[i];
      out << "\n";
    }
  }
  return out.str();
}

inline std::string serialize_kd3(const BandedUnlink& b) {
  std::ostringstream out;
  out << "kd3 v1\n";
  std::vector<std::string> comps;
  for (auto& c : b.components) comps.push_back(c.id);
  std::sort(comps.begin(), comps.end());
  for (auto& id : comps)
    out << "unlink " << id << " slots=" << b.find_component(id)->slots
        << "\n";
  std::vector<std::string> bands;
  for (auto& band : b.bands) bands.push_back(band.id);
  std::sort(bands.begin(), bands.end());
  for (auto& id : bands) {
    const Band* band = nullptr;
    for (auto& x : b.bands)
      if (x.id == id) band = &x;
    out << "band " << id << " " << band->a.component << "@" << band->a.slot
        << " " << band->b.component << "@" << band->b.slot
        << (band->flip ? " flip" : "") << "\n";
  }
  return out.str();
}

inline std::string serialize_kd3(const ParsedDocument& doc) {
  if (auto* d = doc.diagram()) return serialize_kd3(*d, doc.pd);
  return serialize_kd3(*doc.banded());
}

// canonicalize: reorder the in-memory lists to match serialization order
inline KirbyDiagram canonicalize(const KirbyDiagram& d) {
  KirbyDiagram c = d;
  std::sort(c.one_handles.begin(), c.one_handles.end(),
            [](auto& a, auto& b) { return a.id < b.id; });
  std::sort(c.two_handles.begin(), c.two_handles.end(),
            [](auto& a, auto& b) { return a.id < b.id; });
  std::sort(c.three_handles.begin(), c.three_handles.end(),
            [](auto& a, auto& b) { return a.id < b.id; });
  for (auto& s : c.three_handles) {
    std::erase_if(s.link_1h_attach, [](auto& kv) { return kv.second == 0; });
    std::erase_if(s.link_1h_core, [](auto& kv) { return kv.second == 0; });
    std::erase_if(s.link_2h_circle, [](auto& kv) { return kv.second == 0; });
    std::erase_if(s.link_2h_core, [](auto& kv) { return kv.second == 0; });
  }
  std::erase_if(c.linking.entries, [](auto& kv) { return kv.second == 0; });
  return c;
}

// ---------------------------------------------------------------------
// Presentations: "gens n" then one relator word per line ("g1 g2^-1 ...").

inline std::string serialize_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "gens " << p.gens << "\n";
  for (auto& r : p.relators) {
    for (size_t i = 0; i < r.size(); ++i) {
      out << (i ? " " : "") << "g" << std::abs(r[i]);
      if (r[i] < 0) out << "^-1";
    }
    out << "\n";
  }
  return out.str();
}

inline std::optional<Presentation> parse_presentation(const std::string& text,
                                                      std::string* error) {
  Presentation p;
  std::stringstream stream(text);
  std::string raw;
  bool saw_gens = false;
  int lineno = 0;
  auto fail = [&](const std::string& m) {
    if (error) *error = "line " + std::to_string(lineno) + ": " + m;
    return std::nullopt;
  };
  while (std::getline(stream, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    detail::LineLexer lx(line, lineno);
    if (lx.at_end()) continue;
    if (!saw_gens) {
      if (lx.token() != "gens") return fail("expected 'gens <n>'");
      Int n;
      if (!detail::parse_int(lx.token(), n) || n < 0)
        return fail("expected generator count");
      p.gens = (int)n;
      saw_gens = true;
      continue;
    }
    Word w;
    while (!lx.at_end()) {
      std::string t = lx.token();
      DiscLetter l;
      if (!detail::parse_letter(t, l) || l.handle[0] != 'g')
        return fail("bad letter '" + t + "'");
      Int idx;
      if (!detail::parse_int(l.handle.substr(1), idx) || idx < 1 ||
          idx > p.gens)
        return fail("letter out of range '" + t + "'");
      w.push_back((int)idx * l.sign);
    }
    p.relators.push_back(w);
  }
  if (!saw_gens) return fail("missing 'gens <n>' header");
  return p;
}

// ---------------------------------------------------------------------
// Matrices: whitespace-separated integers after a "rows cols" header.

inline std::optional<IntegerMatrix> parse_matrix(const std::string& text,
                                                 std::string* error) {
  std::stringstream ss(text);
  long long r, c;
  if (!(ss >> r >> c) || r < 0 || c < 0) {
    if (error) *error = "expected 'rows cols' header";
    return std::nullopt;
  }
  IntegerMatrix m((int)r, (int)c);
  for (long long i = 0; i < r * c; ++i) {
    long long v;
    if (!(ss >> v)) {
      if (error) *error = "expected " + std::to_string(r * c) + " entries";
      return std::nullopt;
    }
    m.a[i] = v;
  }
  long long extra;
  if (ss >> extra) {
    if (error) *error = "trailing entries after matrix";
    return std::nullopt;
  }
  return m;
}

inline std::string serialize_matrix(const IntegerMatrix& m) {
  std::ostringstream out;
  out << m.rows << " " << m.cols << "\n";
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) out << (j ? " " : "") << m.at(i, j);
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------
// Move scripts: "move <kind> <actor> <target> sign=<+1|-1>" per line;
// target '-' when the move takes none.

inline std::optional<std::vector<MoveRequest>> parse_move_script(
    const std::string& text, std::string* error) {
  std::vector<MoveRequest> script;
  std::stringstream stream(text);
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& m) {
    if (error) *error = "line " + std::to_string(lineno) + ": " + m;
    return std::nullopt;
  };
  while (std::getline(stream, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    detail::LineLexer lx(line, lineno);
    if (lx.at_end()) continue;
    if (lx.token() != "move") return fail("expected 'move'");
    MoveRequest r;
    auto kind = parse_move_kind(lx.token());
    if (!kind) return fail("unknown move kind");
    r.kind = *kind;
    r.actor = lx.token();
    r.target = lx.token();
    if (r.actor.empty() || r.target.empty())
      return fail("expected actor and target");
    std::string sg = lx.token();
    if (sg.empty())
      r.sign = 1;
    else if (sg == "sign=+1" || sg == "sign=1")
      r.sign = 1;
    else if (sg == "sign=-1")
      r.sign = -1;
    else
      return fail("expected sign=+1 or sign=-1");
    script.push_back(r);
  }
  return script;
}

}  // namespace kd3
