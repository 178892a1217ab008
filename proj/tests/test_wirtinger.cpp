#include <catch2/catch_amalgamated.hpp>

#include "kd3/format.hpp"
#include "kd3/wirtinger.hpp"

using namespace kd3;

namespace {

// right-handed trefoil as a closed 2-braid with three positive crossings
PlanarDiagramCode trefoil() {
  PlanarDiagramCode pd;
  pd.crossings = {{1, 2, 5, 4, 1}, {2, 3, 6, 5, 1}, {3, 1, 4, 6, 1}};
  pd.components = {{"k", {1, 5, 3, 4, 2, 6}, 0, false}};
  return pd;
}

PlanarDiagramCode crossingless_unknot(Int framing, bool dotted = false) {
  PlanarDiagramCode pd;
  pd.components = {{"u", {1}, framing, dotted}};
  return pd;
}

PlanarDiagramCode hopf() {
  PlanarDiagramCode pd;
  pd.crossings = {{1, 2, 4, 3, 1}, {2, 1, 3, 4, 1}};
  pd.components = {{"a", {1, 4}, 0, false}, {"b", {2, 3}, 0, false}};
  return pd;
}

}  // namespace

TEST_CASE("pd validation") {
  CHECK(validate(trefoil()).empty());
  CHECK(validate(hopf()).empty());
  CHECK(validate(crossingless_unknot(0)).empty());

  auto bad = trefoil();
  bad.crossings[0].b = 9;  // edge 9 used once, edge 2 used once
  CHECK_FALSE(validate(bad).empty());

  auto cyc = trefoil();
  std::swap(cyc.components[0].arcs[1], cyc.components[0].arcs[2]);
  bool broken = false;
  for (auto& g : validate(cyc)) broken |= g.code == "component-cycle-broken";
  CHECK(broken);
}

TEST_CASE("wirtinger: crossingless unknot") {
  auto w = wirtinger(crossingless_unknot(0));
  CHECK(w.presentation.gens == 1);
  CHECK(w.presentation.relators.empty());
}

TEST_CASE("wirtinger: trefoil group") {
  auto w = wirtinger(trefoil());
  CHECK(w.presentation.gens == 3);
  CHECK(w.presentation.relators.size() == 2);  // one per crossing, one dropped
  CHECK(count_homs(w.presentation, make_symmetric(3)) == 12);
}

TEST_CASE("wirtinger: two-component unlink is free of rank 2") {
  PlanarDiagramCode pd;
  pd.components = {{"a", {1}, 0, false}, {"b", {2}, 0, false}};
  auto w = wirtinger(pd);
  CHECK(w.presentation.gens == 2);
  CHECK(w.presentation.relators.empty());
  CHECK(count_homs(w.presentation, make_symmetric(3)) == 36);
}

TEST_CASE("wirtinger yields one relator per crossing before the drop; any drop is sound") {
  auto pd = trefoil();
  WirtingerResult w = wirtinger(pd);
  // rebuild without dropping by hand: relator count equals crossing count
  CHECK(w.presentation.relators.size() + 1 == pd.crossings.size());
  // dropping any single relator from the full set leaves the group intact
  Presentation full = w.presentation;
  {
    // recover the dropped relator by recomputing from the last crossing
    auto gens = w.arc_generator;
    const PdCrossing& x = pd.crossings.back();
    Word rel{-gens.at(x.c), x.sign * gens.at(x.over_in()), gens.at(x.a),
             -x.sign * gens.at(x.over_in())};
    full.relators.push_back(free_reduce(rel));
  }
  long long want = count_homs(full, make_symmetric(3));
  for (size_t i = 0; i < full.relators.size(); ++i) {
    Presentation dropped = full;
    dropped.relators.erase(dropped.relators.begin() + i);
    CHECK(count_homs(dropped, make_symmetric(3)) == want);
  }
}

TEST_CASE("longitude: crossingless unknot is empty") {
  CHECK(longitude(crossingless_unknot(0), "u").empty());
  CHECK_THROWS_AS(longitude(crossingless_unknot(0), "v"),
                  std::invalid_argument);
}

TEST_CASE("longitude of the trefoil has exponent sum zero after writhe correction") {
  auto pd = trefoil();
  Word l = longitude(pd, "k");
  long long total = 0;
  for (int x : l) total += x > 0 ? 1 : -1;
  CHECK(total == 0);
}

TEST_CASE("longitude letters from another component sum to the linking number") {
  auto pd = hopf();
  CHECK(pd_linking(pd, "a", "b") == 1);
  auto gens = wirtinger(pd).arc_generator;
  Word la = longitude(pd, "a");
  long long sum = 0;
  for (int x : la) {
    int g = std::abs(x);
    bool of_b = false;
    for (Int e : pd.components[1].arcs) of_b |= gens.at(e) == g;
    if (of_b) sum += x > 0 ? 1 : -1;
  }
  CHECK(sum == pd_linking(pd, "a", "b"));
}

TEST_CASE("pi1 of the boundary: surgeries on the unknot") {
  // 0-framed unknot: S^1 x S^2
  auto p0 = pi1_of_boundary(crossingless_unknot(0));
  CHECK(count_homs(p0, make_symmetric(3)) == 6);
  // +1-framed unknot: the 3-sphere
  auto p1 = pi1_of_boundary(crossingless_unknot(1));
  CHECK(count_homs(p1, make_symmetric(3)) == 1);
  // dotted components count as 0-framed
  auto pdot = pi1_of_boundary(crossingless_unknot(5, true));
  CHECK(count_homs(pdot, make_symmetric(3)) == 6);
}

TEST_CASE("pi1 of the boundary: spun trefoil surgery diagram") {
  // l4 threads the 0-framed rings l1 and l2 with three pierces each
  std::string text =
      "kd3 v1\n"
      "2handle l1 framing=0 word=\n2handle l2 framing=0 word=\n"
      "2handle l3 framing=0 word=\n2handle l4 framing=0 word=\n"
      "link l1 l4 = 1\nlink l2 l4 = 1\n"
      "pd (1,18,2,17,+) (18,3,13,2,+) (23,3,24,4,-) (4,24,5,19,-) "
      "(5,14,6,13,+) (16,7,17,6,+) (7,23,8,22,+) (19,9,20,8,+) "
      "(14,9,15,10,-) (10,15,11,16,-) (11,22,12,21,+) (20,1,21,12,+)\n"
      "pdcomp l1 arcs=13,14,15,16,17,18\n"
      "pdcomp l2 arcs=19,20,21,22,23,24\n"
      "pdcomp l3 arcs=25\n"
      "pdcomp l4 arcs=1,2,3,4,5,6,7,8,9,10,11,12\n";
  auto r = parse_kd3(text);
  REQUIRE(r.ok());
  REQUIRE(r.document->pd.has_value());
  const auto& pd = *r.document->pd;
  CHECK(validate(pd).empty());
  CHECK(pd_linking(pd, "l1", "l4") == 1);
  CHECK(pd_linking(pd, "l2", "l4") == 1);
  CHECK(pd_linking(pd, "l1", "l2") == 0);
  CHECK(pd_linking(pd, "l3", "l4") == 0);

  Presentation p = pi1_of_boundary(pd);
  Presentation q = tietze_simplify(p);
  auto ab = abelianization(q);
  CHECK(ab.free_rank == 2);
  CHECK(ab.torsion.empty());
  CHECK(count_homs(q, make_symmetric(3)) == 72);
}
