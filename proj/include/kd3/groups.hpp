#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kd3/diagram.hpp"
#include "kd3/matrix.hpp"
#include "kd3/word.hpp"

// Finitely presented groups: abelianization, a small Tietze simplifier,
// and exact hom counting into small finite groups.

namespace kd3 {

struct Presentation {
  int gens = 0;
  std::vector<Word> relators;
  bool operator==(const Presentation&) const = default;
};

struct Abelianization {
  Int free_rank = 0;
  std::vector<Int> torsion;  // divisors > 1
  bool operator==(const Abelianization&) const = default;
};

inline Abelianization abelianization(const Presentation& p) {
  IntegerMatrix M((int)p.relators.size(), p.gens);
  for (int i = 0; i < (int)p.relators.size(); ++i)
    for (int j = 0; j < p.gens; ++j)
      M.at(i, j) = exponent_sum(p.relators[i], j + 1);
  SmithForm s = smith_normal_form(M);
  Abelianization ab;
  ab.free_rank = p.gens - s.rank;
  for (Int d : s.divisors)
    if (d > 1) ab.torsion.push_back(d);
  return ab;
}

// ---------------------------------------------------------------------
// Finite targets for hom counting. Multiplication tables, elements 0..n-1
// with 0 the identity.

struct FiniteGroup {
  std::string name;
  int order = 0;
  std::vector<int> table;  // table[a*order+b] = a*b
  std::vector<int> inverse;

  int mul(int a, int b) const { return table[a * order + b]; }
};

inline FiniteGroup make_cyclic(int n) {
  if (n < 1 || n > 24) throw std::invalid_argument("cyclic order out of range");
  FiniteGroup g;
  g.name = "z/" + std::to_string(n);
  g.order = n;
  g.table.resize(n * n);
  g.inverse.resize(n);
  for (int a = 0; a < n; ++a) {
    g.inverse[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) g.table[a * n + b] = (a + b) % n;
  }
  return g;
}

inline FiniteGroup make_symmetric(int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("symmetric degree out of range");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(k);
  for (int i = 0; i < k; ++i) p[i] = i;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // ensure identity is element 0
  std::sort(perms.begin(), perms.end());
  int n = (int)perms.size();
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[perms[i]] = i;
  FiniteGroup g;
  g.name = "s" + std::to_string(k);
  g.order = n;
  g.table.resize(n * n);
  g.inverse.resize(n);
  for (int a = 0; a < n; ++a) {
    std::vector<int> inv(k);
    for (int i = 0; i < k; ++i) inv[perms[a][i]] = i;
    g.inverse[a] = index[inv];
    for (int b = 0; b < n; ++b) {
      std::vector<int> ab(k);
      for (int i = 0; i < k; ++i) ab[i] = perms[a][perms[b][i]];
      g.table[a * n + b] = index[ab];
    }
  }
  return g;
}

// "s3", "s4", "z/5", ...
inline FiniteGroup parse_target(const std::string& spec) {
  if (spec == "s1" || spec == "s2" || spec == "s3" || spec == "s4")
    return make_symmetric(spec[1] - '0');
  if (spec.rfind("z/", 0) == 0) return make_cyclic(std::stoi(spec.substr(2)));
  throw std::invalid_argument("unknown target group: " + spec);
}

// Exhaustive count of homomorphisms. The state space |G|^gens is capped;
// anything past the cap is an error, not an approximation.
inline long long count_homs(const Presentation& p, const FiniteGroup& g,
                            double budget = 1e8) {
  if (g.order > 24) throw std::invalid_argument("target order > 24");
  double states = 1;
  for (int i = 0; i < p.gens; ++i) states *= g.order;
  if (states > budget) throw std::runtime_error("hom budget exceeded");

  std::vector<int> assign(p.gens, 0);
  long long count = 0;
  while (true) {
    bool ok = true;
    for (auto& r : p.relators) {
      int acc = 0;
      for (int letter : r) {
        int v = assign[std::abs(letter) - 1];
        if (letter < 0) v = g.inverse[v];
        acc = g.mul(acc, v);
      }
      if (acc != 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    int i = 0;
    while (i < p.gens && ++assign[i] == g.order) assign[i++] = 0;
    if (i == p.gens) break;
  }
  return count;
}

// ---------------------------------------------------------------------
// Tietze simplification. Sound moves only: free/cyclic reduction, removal
// of trivial relators, and elimination of a generator that occurs exactly
// once in some relator. Total relator length never increases, so the loop
// terminates; no normal form is claimed.

namespace detail {

inline std::vector<Word> tz_normalize(std::vector<Word> rels) {
  for (auto& r : rels) r = cyclic_reduce(r);
  rels.erase(std::remove_if(rels.begin(), rels.end(),
                            [](const Word& w) { return w.empty(); }),
             rels.end());
  // drop duplicates up to rotation and inversion
  std::set<Word> seen;
  std::vector<Word> out;
  for (auto& r : rels) {
    bool dup = false;
    for (const Word& base : {r, word_inverse(r)}) {
      Word w = base;
      for (size_t i = 0; i < w.size() && !dup; ++i) {
        std::rotate(w.begin(), w.begin() + 1, w.end());
        if (seen.count(w)) dup = true;
      }
      if (seen.count(base)) dup = true;
    }
    if (!dup) {
      seen.insert(r);
      out.push_back(r);
    }
  }
  return out;
}

inline size_t tz_total(const std::vector<Word>& rels) {
  size_t t = 0;
  for (auto& r : rels) t += r.size();
  return t;
}

inline std::vector<Word> tz_eliminate(const std::vector<Word>& rels,
                                      size_t ri, size_t pos) {
  const Word& r = rels[ri];
  int letter = r[pos];
  int gen = std::abs(letter);
  Word u(r.begin(), r.begin() + pos), v(r.begin() + pos + 1, r.end());
  Word rep = free_reduce([&] {          // g^e = u^-1 v^-1
    Word w = word_inverse(u);
    Word vi = word_inverse(v);
    w.insert(w.end(), vi.begin(), vi.end());
    return w;
  }());
  if (letter < 0) rep = word_inverse(rep);
  std::vector<Word> out;
  for (size_t j = 0; j < rels.size(); ++j)
    if (j != ri) out.push_back(substitute(rels[j], gen, rep));
  return tz_normalize(out);
}

}  // namespace detail

inline Presentation tietze_simplify(const Presentation& p, int budget = 1000) {
  std::vector<Word> rels = detail::tz_normalize(p.relators);
  std::set<int> eliminated;
  for (int step = 0; step < budget; ++step) {
    // length-1 relator kills its generator outright
    bool applied = false;
    for (size_t i = 0; i < rels.size() && !applied; ++i)
      if (rels[i].size() == 1) {
        int gen = std::abs(rels[i][0]);
        std::vector<Word> out;
        for (size_t j = 0; j < rels.size(); ++j)
          if (j != i) out.push_back(substitute(rels[j], gen, {}));
        rels = detail::tz_normalize(out);
        eliminated.insert(gen);
        applied = true;
      }
    if (applied) continue;

    size_t cur = detail::tz_total(rels);
    std::optional<std::vector<Word>> best;
    size_t best_len = cur + 1;
    int best_gen = 0;
    for (size_t i = 0; i < rels.size(); ++i)
      for (size_t k = 0; k < rels[i].size(); ++k) {
        int gen = std::abs(rels[i][k]);
        if (occurrences(rels[i], gen) != 1) continue;
        auto cand = detail::tz_eliminate(rels, i, k);
        size_t len = detail::tz_total(cand);
        if (len <= cur && len < best_len) {
          best_len = len;
          best = std::move(cand);
          best_gen = gen;
        }
      }
    if (!best) break;
    rels = std::move(*best);
    eliminated.insert(best_gen);
  }

  // renumber: only explicitly eliminated generators disappear; everything
  // else (including generators freed of all relators) survives
  std::vector<int> keep;
  for (int gen = 1; gen <= p.gens; ++gen)
    if (!eliminated.count(gen)) keep.push_back(gen);
  std::map<int, int> renumber;
  for (size_t i = 0; i < keep.size(); ++i) renumber[keep[i]] = (int)i + 1;
  Presentation out;
  out.gens = (int)keep.size();
  for (auto& r : rels) {
    Word w;
    for (int x : r) w.push_back(x > 0 ? renumber.at(x) : -renumber.at(-x));
    out.relators.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------
// pi1 of the 4-manifold read off the diagram: generators are meridians of
// the dotted circles, relators the disc words of the framed components.
// The clean read-off assumes 0-framed 2-handles; nonzero framings only
// earn a caveat, not a refusal.

struct Pi1Result {
  Presentation presentation;
  std::vector<std::string> generator_ids;  // dotted circles, sorted
  bool nonzero_framing_warning = false;
};

inline Pi1Result pi1_of_X(const KirbyDiagram& d) {
  Pi1Result r;
  std::vector<std::string> dotted;
  for (auto& h : d.one_handles) dotted.push_back(h.id);
  std::sort(dotted.begin(), dotted.end());
  std::map<std::string, int> index;
  for (size_t i = 0; i < dotted.size(); ++i)
    index[dotted[i]] = (int)i + 1;
  r.generator_ids = dotted;
  r.presentation.gens = (int)dotted.size();
  std::vector<std::string> framed;
  for (auto& f : d.two_handles) framed.push_back(f.id);
  std::sort(framed.begin(), framed.end());
  for (auto& id : framed) {
    auto* f = d.find_framed(id);
    Word w;
    for (auto& l : f->disc_word) w.push_back(l.sign * index.at(l.handle));
    r.presentation.relators.push_back(w);
    if (f->framing != 0) r.nonzero_framing_warning = true;
  }
  return r;
}

}  // namespace kd3
