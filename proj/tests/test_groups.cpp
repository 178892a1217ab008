#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kd3/format.hpp"
#include "kd3/groups.hpp"

using namespace kd3;

TEST_CASE("free reduction") {
  CHECK(free_reduce({1, -1}) == Word{});
  CHECK(free_reduce({1, 2, -2, -1, 3}) == Word{3});
  Word w{1, 2, -2, 1};
  CHECK(free_reduce(free_reduce(w)) == free_reduce(w));  // idempotent
  CHECK(free_reduce(w).size() <= w.size());
}

TEST_CASE("abelianization: worked examples") {
  Presentation p;  // <a,b | a^2 b^-3>
  p.gens = 2;
  p.relators = {{1, 1, -2, -2, -2}};
  auto ab = abelianization(p);
  CHECK(ab.free_rank == 1);
  CHECK(ab.torsion.empty());

  Presentation fr;  // free of rank 3
  fr.gens = 3;
  CHECK(abelianization(fr).free_rank == 3);
  CHECK(abelianization(fr).torsion.empty());

  Presentation zn;  // <a | a^4>
  zn.gens = 1;
  zn.relators = {{1, 1, 1, 1}};
  auto abz = abelianization(zn);
  CHECK(abz.free_rank == 0);
  CHECK(abz.torsion == std::vector<Int>{4});
}

TEST_CASE("hom counting into small groups") {
  FiniteGroup s3 = make_symmetric(3);
  CHECK(s3.order == 6);

  Presentation free2;
  free2.gens = 2;
  CHECK(count_homs(free2, s3) == 36);

  Presentation trefoil;  // <a,b | a^2 = b^3>
  trefoil.gens = 2;
  trefoil.relators = {{1, 1, -2, -2, -2}};
  CHECK(count_homs(trefoil, s3) == 12);

  Presentation trivial;
  trivial.gens = 0;
  CHECK(count_homs(trivial, s3) == 1);

  Presentation z;  // cyclic checks
  z.gens = 1;
  CHECK(count_homs(z, make_cyclic(5)) == 5);
  z.relators = {{1, 1}};
  CHECK(count_homs(z, make_cyclic(6)) == 2);  // elements of order dividing 2

  Presentation big;
  big.gens = 12;
  CHECK_THROWS(count_homs(big, s3));  // state space over budget
}

TEST_CASE("target parsing") {
  CHECK(parse_target("s3").order == 6);
  CHECK(parse_target("s4").order == 24);
  CHECK(parse_target("z/7").order == 7);
  CHECK_THROWS(parse_target("m12"));
}

TEST_CASE("tietze: trivial relator removes a generator") {
  Presentation p;  // <a,b | b>
  p.gens = 2;
  p.relators = {{2}};
  auto q = tietze_simplify(p);
  CHECK(q.gens == 1);
  CHECK(q.relators.empty());
}

TEST_CASE("tietze: already reduced presentations are fixed points") {
  Presentation p;  // <a,b | aba^-1b^-1 ... > commutator has no single letter
  p.gens = 2;
  p.relators = {{1, 2, -1, -2}};
  auto q = tietze_simplify(p);
  CHECK(q.gens == 2);
  REQUIRE(q.relators.size() == 1);
  CHECK(q.relators[0].size() == 4);
}

TEST_CASE("tietze: boundary presentation loses its killed generator") {
  // <l1..l4 | l4^-1, l4^-1, l1^-1 l2 l1^-1 l2^-1 l1 l2^-1>
  Presentation p;
  p.gens = 4;
  Word w{-1, 2, -1, -2, 1, -2};
  p.relators = {{-4}, {-4}, w};
  auto q = tietze_simplify(p);
  CHECK(q.gens == 3);
  REQUIRE(q.relators.size() == 1);
  CHECK(q.relators[0].size() == 6);
  auto ab = abelianization(q);
  CHECK(ab.free_rank == 2);
  CHECK(count_homs(q, make_symmetric(3)) == 72);
}

TEST_CASE("tietze: freely trivial relators vanish without losing generators") {
  Presentation p;  // <a | a a^-1> is the free group on a
  p.gens = 1;
  p.relators = {{1, -1}};
  auto q = tietze_simplify(p);
  CHECK(q.gens == 1);
  CHECK(q.relators.empty());
}

TEST_CASE("tietze preserves hom counts and abelianization") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> gens(1, 4), nrel(0, 4), len(0, 6),
      letter(1, 4), coin(0, 1);
  FiniteGroup s3 = make_symmetric(3);
  for (int iter = 0; iter < 300; ++iter) {
    Presentation p;
    p.gens = gens(rng);
    int r = nrel(rng);
    for (int i = 0; i < r; ++i) {
      Word w;
      int L = len(rng);
      for (int j = 0; j < L; ++j) {
        int g = 1 + (letter(rng) - 1) % p.gens;
        w.push_back(coin(rng) ? g : -g);
      }
      p.relators.push_back(w);
    }
    auto q = tietze_simplify(p);
    CHECK(count_homs(p, s3) == count_homs(q, s3));
    auto a1 = abelianization(p), a2 = abelianization(q);
    CHECK(a1.free_rank == a2.free_rank);
    CHECK(a1.torsion == a2.torsion);
  }
}

TEST_CASE("pi1 of the 4-manifold: worked examples") {
  KirbyDiagram d;  // one dotted circle: S^1 x D^3
  d.one_handles = {{"g1"}};
  auto r = pi1_of_X(d);
  CHECK(r.presentation.gens == 1);
  CHECK(r.presentation.relators.empty());
  CHECK_FALSE(r.nonzero_framing_warning);

  // torus times sphere: two generators, commutator plus empty relator
  auto parsed = parse_kd3(
      "kd3 v1\n1handle d1\n1handle d2\n"
      "2handle f1 framing=0 word=d1 d2 d1^-1 d2^-1\n"
      "2handle f2 framing=0 word=\nlink f1 f2 = 1\n");
  REQUIRE(parsed.ok());
  auto t = pi1_of_X(*parsed.document->diagram());
  CHECK(t.presentation.gens == 2);
  CHECK(t.presentation.relators.size() == 2);
  auto ab = abelianization(t.presentation);
  CHECK(ab.free_rank == 2);
  CHECK(ab.torsion.empty());

  // nonzero framing only raises the caveat
  KirbyDiagram w;
  w.one_handles = {{"d1"}};
  w.two_handles = {{"f", 2, {{"d1", 1}}}};
  w.linking.set("f", "d1", 1);
  CHECK(pi1_of_X(w).nonzero_framing_warning);
}

TEST_CASE("pi1 of the spun trefoil exterior has 12 homs into s3") {
  auto parsed = parse_kd3(
      "kd3 v1\n1handle l1\n1handle l2\n"
      "2handle l3 framing=0 word=\n"
      "2handle l4 framing=0 word=l1 l2^-1 l1 l2 l1^-1 l2\n"
      "link l1 l4 = 1\nlink l2 l4 = 1\n");
  REQUIRE(parsed.ok());
  auto r = pi1_of_X(*parsed.document->diagram());
  CHECK(count_homs(r.presentation, make_symmetric(3)) == 12);
}
