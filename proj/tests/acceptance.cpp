// Acceptance suite: runs every criterion at its stated tolerance and
// prints one pass/fail line each. Exit status is nonzero if any fails.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "kd3/format.hpp"
#include "kd3/invariants.hpp"
#include "kd3/moves.hpp"
#include "kd3/surface.hpp"
#include "kd3/wirtinger.hpp"

using namespace kd3;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void line(int n, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what
            << "\n";
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParsedDocument load(const std::string& path) {
  auto r = parse_kd3(slurp(path));
  if (!r.ok()) throw std::runtime_error("parse failed: " + path);
  return *r.document;
}

// --- criterion 5 helpers -------------------------------------------------

KirbyDiagram random_diagram(std::mt19937& rng) {
  KirbyDiagram d;
  std::uniform_int_distribution<int> nd(0, 3), nf(0, 3), len(0, 3),
      coin(0, 1), fr(-2, 2), lk(-2, 2), ns(0, 2), val(0, 2);
  int ndot = nd(rng), nfr = nf(rng);
  for (int i = 0; i < ndot; ++i)
    d.one_handles.push_back({"d" + std::to_string(i + 1)});
  for (int i = 0; i < nfr; ++i) {
    TwoHandle f;
    f.id = "f" + std::to_string(i + 1);
    f.framing = fr(rng);
    if (ndot > 0) {
      int L = len(rng);
      std::uniform_int_distribution<int> pick(1, ndot);
      for (int j = 0; j < L; ++j)
        f.disc_word.push_back(
            {"d" + std::to_string(pick(rng)), coin(rng) ? 1 : -1});
    }
    d.two_handles.push_back(f);
  }
  for (auto& f : d.two_handles)
    for (auto& h : d.one_handles)
      d.linking.set(f.id, h.id, disc_word_exponent_sum(f.disc_word, h.id));
  for (size_t i = 0; i < d.two_handles.size(); ++i)
    for (size_t j = i + 1; j < d.two_handles.size(); ++j)
      d.linking.set(d.two_handles[i].id, d.two_handles[j].id, lk(rng));
  int nsph = ns(rng);
  for (int i = 0; i < nsph; ++i) {
    ThreeHandleData s;
    s.id = "s" + std::to_string(i + 1);
    for (auto& h : d.one_handles) {
      if (int x = val(rng)) s.link_1h_attach[h.id] = x;
      if (int x = val(rng)) s.link_1h_core[h.id] = x;
    }
    for (auto& f : d.two_handles) {
      if (int x = val(rng)) s.link_2h_circle[f.id] = x;
      if (int x = val(rng)) s.link_2h_core[f.id] = x;
    }
    d.three_handles.push_back(s);
  }
  d.four_handles = coin(rng);
  return d;
}

std::vector<MoveRequest> all_slides(const KirbyDiagram& d) {
  std::vector<MoveRequest> moves;
  std::vector<std::string> dotted, framed, spheres;
  for (auto& h : d.one_handles) dotted.push_back(h.id);
  for (auto& h : d.two_handles) framed.push_back(h.id);
  for (auto& s : d.three_handles) spheres.push_back(s.id);
  auto both = [&](MoveKind k, const std::string& a, const std::string& b) {
    moves.push_back({k, a, b, 1});
    moves.push_back({k, a, b, -1});
  };
  for (auto& a : dotted)
    for (auto& b : dotted)
      if (a != b) both(MoveKind::slide_1_1, a, b);
  for (auto& a : framed)
    for (auto& b : dotted) both(MoveKind::slide_2_1, a, b);
  for (auto& a : framed)
    for (auto& b : framed)
      if (a != b) both(MoveKind::slide_2_2, a, b);
  for (auto& a : spheres) {
    for (auto& b : dotted) both(MoveKind::slide_3_1, a, b);
    for (auto& b : framed) both(MoveKind::slide_3_2, a, b);
    for (auto& b : spheres)
      if (a != b) both(MoveKind::slide_3_3, a, b);
  }
  return moves;
}

}  // namespace

int main(int argc, char** argv) {
  std::string data = argc > 1 ? argv[1] : "data";

  // 1. spun-trefoil linking matrix ---------------------------------------
  try {
    auto t0 = Clock::now();
    auto doc = load(data + "/spun_trefoil_exterior.kd3");
    const KirbyDiagram& d = *doc.diagram();
    bool ok = validate(d).empty();
    IntegerMatrix lm = linking_matrix(d);
    std::vector<std::vector<Int>> want = {
        {0, 0, 0, 1}, {0, 0, 0, 1}, {0, 0, 0, 0}, {1, 1, 0, 0}};
    ok = ok && lm.rows == 4 && lm.cols == 4;
    for (int i = 0; ok && i < 4; ++i)
      for (int j = 0; ok && j < 4; ++j) ok = lm.at(i, j) == want[i][j];
    auto snf = smith_normal_form(lm);
    ok = ok && snf.rank == 2;
    auto h = boundary_homology(d);
    ok = ok && h.h2_free_rank == 2 && h.h1_free_rank == 2 &&
         h.h1_torsion.empty();
    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    std::ostringstream what;
    what << "spun-trefoil linking matrix, rank 2, H2 free rank 2, H1 free "
            "rank 2 ("
         << dt << " s)";
    line(1, ok, what.str());
  } catch (const std::exception& e) {
    line(1, false, std::string("exception: ") + e.what());
  }

  // 2. spun-trefoil 3-handle count via the exterior pipeline -------------
  try {
    auto doc = load(data + "/spun_trefoil_banded.kd3");
    const BandedUnlink& b = *doc.banded();
    Int lminus = resolve(b, Which::L_minus).component_count;
    Int lplus = resolve(b, Which::L_plus).component_count;
    bool ok = lminus == 2 && lplus == 2 && (Int)b.bands.size() == 2;
    ok = ok && three_handle_count(b) == 1;
    KirbyDiagram ext = exterior_kirby(b);
    ok = ok && euler_characteristic(ext) == 0;
    std::ostringstream what;
    what << "exterior pipeline: |L-|=" << lminus << " |L+|=" << lplus
         << " |M|=" << b.bands.size() << " 3-handles="
         << three_handle_count(b) << " chi(exterior)="
         << euler_characteristic(ext);
    line(2, ok, what.str());
  } catch (const std::exception& e) {
    line(2, false, std::string("exception: ") + e.what());
  }

  // 3. boundary group certificate ----------------------------------------
  try {
    auto t0 = Clock::now();
    auto doc = load(data + "/spun_trefoil_surgery.kd3");
    bool ok = doc.pd.has_value() && validate(*doc.pd).empty();
    FiniteGroup s3 = make_symmetric(3);
    long long homs = -1;
    Abelianization ab;
    if (ok) {
      Presentation p = pi1_of_boundary(*doc.pd);
      Presentation q = tietze_simplify(p);
      ab = abelianization(q);
      homs = count_homs(q, s3);
      ok = ab.free_rank == 2 && ab.torsion.empty() && homs == 72;
    }
    Presentation free2{2, {}}, free3{3, {}};
    long long c2 = count_homs(free2, s3), c3 = count_homs(free3, s3);
    ok = ok && c2 == 36 && c3 == 216 && homs != c2 && homs != c3;
    double dt = seconds_since(t0);
    ok = ok && dt < 10.0;
    std::ostringstream what;
    what << "boundary group: abelianization free rank " << ab.free_rank
         << ", homs to s3 = " << homs << " (free ranks 2,3 give " << c2 << ","
         << c3 << "; " << dt << " s)";
    line(3, ok, what.str());
  } catch (const std::exception& e) {
    line(3, false, std::string("exception: ") + e.what());
  }

  // 4. pi1 of the exterior -----------------------------------------------
  try {
    auto doc = load(data + "/spun_trefoil_exterior.kd3");
    auto pi1 = pi1_of_X(*doc.diagram());
    FiniteGroup s3 = make_symmetric(3);
    long long homs = count_homs(pi1.presentation, s3);
    Presentation trefoil{2, {{1, 1, -2, -2, -2}}};  // <a,b | a^2 = b^3>
    long long want = count_homs(trefoil, s3);
    bool ok = homs == want && homs == 12;
    std::ostringstream what;
    what << "pi1(exterior) homs to s3 = " << homs
         << ", brute force for <a,b | a^2=b^3> = " << want;
    line(4, ok, what.str());
  } catch (const std::exception& e) {
    line(4, false, std::string("exception: ") + e.what());
  }

  // 5. move-invariance property suite ------------------------------------
  try {
    auto t0 = Clock::now();
    std::mt19937 rng(987654321);
    FiniteGroup s3 = make_symmetric(3);
    int diagrams = 0, slides = 0, pairs = 0, violations = 0;
    while (diagrams < 1000) {
      KirbyDiagram d = random_diagram(rng);
      if (!validate(d).empty()) continue;
      ++diagrams;
      auto moves = all_slides(d);
      std::shuffle(moves.begin(), moves.end(), rng);
      int used = 0;
      long long pre_homs = count_homs(pi1_of_X(d).presentation, s3);
      auto pre_snf = smith_normal_form(linking_matrix(d)).divisors;
      auto pre_ab = abelianization(pi1_of_X(d).presentation);
      Int pre_chi = euler_characteristic(d);
      for (auto& mv : moves) {
        if (used >= 2) break;
        if (!applicable(d, mv).ok) continue;
        ++used;
        ++slides;
        auto out = apply_move(d, mv);
        if (!out.report.applied ||
            smith_normal_form(linking_matrix(out.diagram)).divisors !=
                pre_snf ||
            euler_characteristic(out.diagram) != pre_chi ||
            abelianization(pi1_of_X(out.diagram).presentation) != pre_ab ||
            count_homs(pi1_of_X(out.diagram).presentation, s3) != pre_homs)
          ++violations;
      }
      // create/cancel pair round trip preserves chi
      for (MoveKind k : {MoveKind::create_1_2, MoveKind::create_2_3,
                         MoveKind::create_3_4}) {
        MoveRequest mk{k, k == MoveKind::create_1_2 ? "dz" : "sz",
                       k == MoveKind::create_3_4 ? "-" : "fz", 1};
        auto out = apply_move(d, mk);
        MoveKind inv = k == MoveKind::create_1_2   ? MoveKind::cancel_1_2
                       : k == MoveKind::create_2_3 ? MoveKind::cancel_2_3
                                                   : MoveKind::cancel_3_4;
        auto back = apply_move(out.diagram, {inv, mk.actor, mk.target, 1});
        ++pairs;
        if (!out.report.applied || !back.report.applied ||
            euler_characteristic(out.diagram) != pre_chi ||
            !(back.diagram == d))
          ++violations;
      }
    }
    double dt = seconds_since(t0);
    bool ok = violations == 0 && dt < 300.0 && slides > 1000;
    std::ostringstream what;
    what << diagrams << " diagrams, " << slides << " slides, " << pairs
         << " create/cancel pairs, " << violations << " violations ("
         << dt << " s)";
    line(5, ok, what.str());
  } catch (const std::exception& e) {
    line(5, false, std::string("exception: ") + e.what());
  }

  // 6. framing formula on a grid ------------------------------------------
  try {
    int checked = 0, wrong = 0;
    for (Int f1 = -3; f1 <= 3; ++f1)
      for (Int f2 = -3; f2 <= 3; ++f2)
        for (Int lk = -3; lk <= 3; ++lk)
          for (int sign : {1, -1}) {
            KirbyDiagram d;
            d.two_handles = {{"h1", f1, {}}, {"h2", f2, {}}};
            d.linking.set("h1", "h2", lk);
            auto out = apply_move(d, {MoveKind::slide_2_2, "h1", "h2", sign});
            ++checked;
            // independent direct evaluation of the handle-slide formula
            Int want = f1 + f2 + 2 * sign * lk;
            if (!out.report.applied ||
                out.diagram.find_framed("h1")->framing != want ||
                out.diagram.find_framed("h2")->framing != f2)
              ++wrong;
          }
    std::ostringstream what;
    what << "slide_2_2 framing formula on " << checked
         << " grid points, " << wrong << " mismatches";
    line(6, wrong == 0, what.str());
  } catch (const std::exception& e) {
    line(6, false, std::string("exception: ") + e.what());
  }

  // 7. basis checkers against oracles --------------------------------------
  try {
    auto mod2_oracle = [](const std::vector<std::vector<int>>& v) {
      size_t k = v.size();
      for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::vector<int> sum(k, 0);
        for (size_t i = 0; i < k; ++i)
          if (mask >> i & 1)
            for (size_t j = 0; j < k; ++j) sum[j] ^= v[i][j] & 1;
        bool zero = true;
        for (int x : sum) zero &= x == 0;
        if (zero) return false;
      }
      return true;
    };
    long long checked = 0, wrong = 0;
    for (int k = 1; k <= 4; ++k) {
      int cells = k * k;
      for (unsigned bits = 0; bits < (1u << cells); ++bits) {
        std::vector<std::vector<int>> v(k, std::vector<int>(k));
        for (int i = 0; i < cells; ++i) v[i / k][i % k] = bits >> i & 1;
        ++checked;
        if (check_basis_mod2(v) != mod2_oracle(v)) ++wrong;
      }
    }
    auto det3 = [](const std::vector<std::vector<Int>>& v) {
      return v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) -
             v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0]) +
             v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]);
    };
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> ent(-5, 5);
    for (int iter = 0; iter < 10000; ++iter) {
      std::vector<std::vector<Int>> v(3, std::vector<Int>(3));
      for (auto& row : v)
        for (auto& x : row) x = ent(rng);
      Int dv = det3(v);
      ++checked;
      if (check_basis_integral(v) != (dv == 1 || dv == -1)) ++wrong;
    }
    std::ostringstream what;
    what << "basis checkers vs kernel-search and determinant oracles, "
         << checked << " cases, " << wrong << " mismatches";
    line(7, wrong == 0, what.str());
  } catch (const std::exception& e) {
    line(7, false, std::string("exception: ") + e.what());
  }

  // 8. torus-times-sphere example -----------------------------------------
  try {
    auto doc = load(data + "/t2s2.kd3");
    const KirbyDiagram& d = *doc.diagram();
    bool ok = validate(d).empty();
    ok = ok && d.four_handles == 1 && euler_characteristic(d) == 0;
    auto hyp = hypothesis_report(d);
    ok = ok && hyp.three_handle_count == 2 && hyp.all_spheres_nonzero &&
         hyp.count_within_bound;
    std::string err;
    auto pairing = parse_matrix(slurp(data + "/t2s2_pairing.mat"), &err);
    ok = ok && pairing.has_value() && meridian_pairing_check(*pairing);
    std::ostringstream what;
    what << "torus-times-sphere: valid, chi=0 with one 4-handle, k="
         << hyp.three_handle_count
         << " spheres with nonzero data, 2x2 meridian pairing passes";
    line(8, ok, what.str());
  } catch (const std::exception& e) {
    line(8, false, std::string("exception: ") + e.what());
  }

  if (failures == 0)
    std::cout << "all criteria passed\n";
  else
    std::cout << failures << " criteria FAILED\n";
  return failures == 0 ? 0 : 1;
}
