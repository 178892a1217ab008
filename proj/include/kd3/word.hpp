#pragma once

#include <cstdlib>
#include <vector>

// Words in a free group. Letters are nonzero ints: +k / -k are the k-th
// generator and its inverse (generators are 1-based).

namespace kd3 {

using Word = std::vector<int>;

inline Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline Word word_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

// Conjugacy-class representative: freely reduce, then strip matching ends.
inline Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  while (r.size() >= 2 && r.front() == -r.back()) {
    r.erase(r.begin());
    r.pop_back();
    r = free_reduce(r);
  }
  return r;
}

inline Word substitute(const Word& w, int gen, const Word& replacement) {
  Word out;
  for (int x : w) {
    if (x == gen)
      out.insert(out.end(), replacement.begin(), replacement.end());
    else if (x == -gen) {
      Word inv = word_inverse(replacement);
      out.insert(out.end(), inv.begin(), inv.end());
    } else
      out.push_back(x);
  }
  return free_reduce(out);
}

inline long long exponent_sum(const Word& w, int gen) {
  long long s = 0;
  for (int x : w) {
    if (x == gen) ++s;
    if (x == -gen) --s;
  }
  return s;
}

inline int occurrences(const Word& w, int gen) {
  int n = 0;
  for (int x : w)
    if (std::abs(x) == gen) ++n;
  return n;
}

}  // namespace kd3
