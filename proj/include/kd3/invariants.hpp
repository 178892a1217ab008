#pragma once

#include <string>
#include <vector>

#include "kd3/diagram.hpp"
#include "kd3/matrix.hpp"

// Homological invariants of the surgered boundary. The boundary of the
// 2-handlebody is surgery on the framed link obtained by replacing each
// dotted circle with a 0-framed component; its homology is presented by
// the linking matrix.

namespace kd3 {

inline IntegerMatrix linking_matrix(const KirbyDiagram& d) {
  auto order = component_order(d);
  int m = (int)order.size();
  IntegerMatrix lm(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) {
        auto* f = d.find_framed(order[i]);
        lm.at(i, j) = f ? f->framing : 0;
      } else {
        lm.at(i, j) = d.linking.get(order[i], order[j]);
      }
    }
  }
  return lm;
}

struct BoundaryHomology {
  Int h1_free_rank = 0;
  std::vector<Int> h1_torsion;  // divisors > 1
  Int h2_free_rank = 0;         // m - rank(LM)
  bool operator==(const BoundaryHomology&) const = default;
};

inline BoundaryHomology boundary_homology(const KirbyDiagram& d) {
  IntegerMatrix lm = linking_matrix(d);
  SmithForm s = smith_normal_form(lm);
  BoundaryHomology h;
  h.h1_free_rank = lm.rows - s.rank;
  for (Int v : s.divisors)
    if (v > 1) h.h1_torsion.push_back(v);
  h.h2_free_rank = lm.rows - s.rank;
  return h;
}

struct HypothesisReport {
  Int three_handle_count = 0;
  Int h2_free_rank = 0;       // upper bound for rank H2^sph
  bool count_within_bound = false;
  bool all_spheres_nonzero = false;
  bool inessential_flag = false;  // all-zero sphere with no 4-handle to cancel it
  std::vector<std::string> zero_spheres;
};

// Uniqueness hypothesis data for the 3-handle attachments: the number of
// 3-handles against the free rank of H2 of the surgered boundary (an
// upper bound for the rank of the subgroup spanned by embedded spheres),
// plus whether any attaching sphere is inessential in this model
// (all-zero record).
inline HypothesisReport hypothesis_report(const KirbyDiagram& d) {
  HypothesisReport r;
  r.three_handle_count = (Int)d.three_handles.size();
  r.h2_free_rank = boundary_homology(d).h2_free_rank;
  r.count_within_bound = r.three_handle_count <= r.h2_free_rank;
  r.all_spheres_nonzero = true;
  for (auto& s : d.three_handles)
    if (s.all_zero()) {
      r.all_spheres_nonzero = false;
      r.zero_spheres.push_back(s.id);
    }
  r.inessential_flag = !r.all_spheres_nonzero && d.four_handles == 0;
  return r;
}

}  // namespace kd3
