#include <doctest.h>

#include <random>
#include <set>

#include "algpos/errors.hpp"
#include "algpos/structure.hpp"
#include "helpers.hpp"

using namespace algpos;

TEST_CASE("digraph_of includes loops") {
  Digraph d = digraph_of(parse_pattern("0 +\n- 0"));
  CHECK(d.arc_count() == 2);
  CHECK(d.has_arc(0, 1));
  CHECK(d.has_arc(1, 0));
  Digraph loop = digraph_of(parse_pattern("+"));
  CHECK(loop.has_arc(0, 0));
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_connected(Digraph(2, {{0, 1}, {1, 0}})));
  CHECK_FALSE(is_strongly_connected(Digraph(2, {{0, 1}})));
  CHECK(is_strongly_connected(Digraph(1, {})));
  SignPattern y = testing::load_fixture("section4_Y.sp");
  CHECK(is_strongly_connected(digraph_of(y)));
}

TEST_CASE("minimal strong connectivity") {
  Digraph cycle3(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(is_minimally_strongly_connected(cycle3));
  Digraph chord = cycle3;
  chord.add_arc(0, 2);
  CHECK_FALSE(is_minimally_strongly_connected(chord));
  CHECK_FALSE(is_minimally_strongly_connected(Digraph(2, {{0, 1}})));
}

TEST_CASE("nested_sequence on a plain cycle") {
  Digraph cycle4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  NestedSequence ns = nested_sequence(cycle4, 0);
  CHECK(ns.cycle == std::vector<int>{0, 1, 2, 3});
  CHECK(ns.ears.empty());
  CHECK(ns.sets().size() == 1);
}

TEST_CASE("nested_sequence rejects bad input") {
  Digraph loop(1, {{0, 0}});
  CHECK_THROWS_AS(nested_sequence(loop, 0), HasLoop);
  Digraph chord(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}});
  CHECK_THROWS_AS(nested_sequence(chord, 0), NotMinimallyStronglyConnected);
}

TEST_CASE("nested_sequence matches the worked inner sequences") {
  // Component {1,2,3,4} of the order-12 fixture: arcs 1->2,2->3,3->1,3->4,4->2.
  Digraph g1(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 1}});
  NestedSequence ns1 = nested_sequence(g1, 0);
  CHECK(ns1.cycle == std::vector<int>{0, 1, 2});
  REQUIRE(ns1.ears.size() == 1);
  CHECK(ns1.ears[0].path == std::vector<int>{3});
  CHECK(ns1.ears[0].from == 2);
  CHECK(ns1.ears[0].to == 1);
  CHECK(ns1.sets() ==
        std::vector<std::vector<int>>{{0, 1, 2}, {0, 1, 2, 3}});

  // Component {5,6,7,8}: arcs 5->6,6->7,7->5,5->8,8->7 (locally 0-based).
  Digraph g2(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 2}});
  NestedSequence ns2 = nested_sequence(g2, 0);
  CHECK(ns2.cycle == std::vector<int>{0, 1, 2});
  REQUIRE(ns2.ears.size() == 1);
  CHECK(ns2.ears[0].path == std::vector<int>{3});
  CHECK(ns2.ears[0].from == 0);
  CHECK(ns2.ears[0].to == 2);
}

TEST_CASE("nested_sequence properties on random minimally connected digraphs") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    Digraph d = testing::random_minimally_strongly_connected(n, rng);
    REQUIRE(is_minimally_strongly_connected(d));
    NestedSequence ns = nested_sequence(d, 0);
    auto sets = ns.sets();

    // P1: the first set induces a directed cycle.
    Digraph first = d.induced(sets.front());
    for (int v = 0; v < first.vertex_count(); ++v) {
      CHECK(first.out(v).size() == 1);
      CHECK(first.in(v).size() == 1);
    }
    CHECK(is_strongly_connected(first));

    // P2: every set induces a strongly connected subgraph.
    for (const auto& s : sets) CHECK(is_strongly_connected(d.induced(s)));

    // Remark on ears: exactly two arcs join each ear to the previous set,
    // one in and one out.
    std::set<int> inside(sets.front().begin(), sets.front().end());
    for (const auto& ear : ns.ears) {
      std::set<int> earset(ear.path.begin(), ear.path.end());
      int entering = 0, leaving = 0;
      for (auto [a, b] : d.arcs()) {
        if (inside.count(a) && earset.count(b)) ++leaving;
        if (earset.count(a) && inside.count(b)) ++entering;
      }
      CHECK(leaving == 1);
      CHECK(entering == 1);
      CHECK(inside.count(ear.from) == 1);
      CHECK(inside.count(ear.to) == 1);
      inside.insert(earset.begin(), earset.end());
    }
    CHECK(sets.back().size() == static_cast<size_t>(n));
  }
}

TEST_CASE("irreducible_components") {
  CHECK(irreducible_components(parse_pattern("0 +\n+ 0")).parts ==
        std::vector<std::vector<int>>{{0, 1}});
  CHECK(irreducible_components(parse_pattern("+ 0\n0 +")).parts ==
        std::vector<std::vector<int>>{{0}, {1}});
  SignPattern y = testing::load_fixture("section4_Y.sp");
  CHECK(irreducible_components(positive_part(y)).parts ==
        std::vector<std::vector<int>>{{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9}, {10, 11}});
}

TEST_CASE("is_ap_irreducible") {
  CHECK(is_ap_irreducible(parse_pattern("0 +\n+ 0")));
  CHECK_FALSE(is_ap_irreducible(parse_pattern("0 +\n- 0")));  // row 2 lacks +
  CHECK(is_ap_irreducible(testing::load_fixture("section4_X.sp")));
  CHECK(is_ap_irreducible(parse_pattern("+")));
  CHECK_FALSE(is_ap_irreducible(parse_pattern("-")));
}

TEST_CASE("is_ap_irreducible is permutation invariant") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> sign(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    SignPattern p(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) p.set(i, j, static_cast<Sign>(sign(rng)));
    std::vector<Eigen::Index> s{0, 1, 2, 3};
    std::shuffle(s.begin(), s.end(), rng);
    CHECK(is_ap_irreducible(permute(p, s)) == is_ap_irreducible(p));
  }
}

TEST_CASE("is_minimally_ap_irreducible") {
  CHECK(is_minimally_ap_irreducible(testing::load_fixture("section4_Y.sp")));
  CHECK_FALSE(is_minimally_ap_irreducible(parse_pattern("+ +\n+ +")));
  CHECK(is_minimally_ap_irreducible(parse_pattern("0 +\n+ 0")));
}

TEST_CASE("minimal_ap_subpattern") {
  SignPattern y = testing::load_fixture("section4_Y.sp");
  CHECK(minimal_ap_subpattern(y) == y);  // already minimal

  SignPattern with_loop = parse_pattern("+ +\n+ 0");
  CHECK(minimal_ap_subpattern(with_loop) == parse_pattern("0 +\n+ 0"));

  CHECK_THROWS_AS(minimal_ap_subpattern(parse_pattern("0 +\n- 0")), NotApIrreducible);
}

TEST_CASE("minimal_ap_subpattern preserves positive-part components") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> sizes;
    int parts = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < parts; ++i) sizes.push_back(2 + static_cast<int>(rng() % 3));
    SignPattern p = testing::random_hypothesis_pattern(sizes, rng);
    // Thicken a little so there is something to strip.
    SignPattern thick = p;
    Components target = irreducible_components(positive_part(p));
    for (int i = 0; i < thick.order(); ++i)
      if (rng() % 4 == 0) thick.set(i, i, Sign::Plus);
    if (!is_ap_irreducible(thick)) continue;
    if (!(irreducible_components(positive_part(thick)) == target)) continue;
    SignPattern x = minimal_ap_subpattern(thick);
    CHECK(is_minimally_ap_irreducible(x));
    CHECK(is_subpattern(x, thick));
    CHECK(irreducible_components(positive_part(x)) == target);
  }
}

TEST_CASE("color_arcs splits blue and red") {
  SignPattern y = testing::load_fixture("section4_Y.sp");
  Components parts = irreducible_components(positive_part(y));
  ArcColoring c = color_arcs(y, parts);
  std::set<Arc> red(c.red.begin(), c.red.end());
  // 0-based images of the five crossing arcs.
  CHECK(red == std::set<Arc>{{0, 6}, {4, 8}, {9, 3}, {10, 3}, {4, 11}});
  CHECK(c.blue.size() + c.red.size() == static_cast<size_t>(y.nonzero_count()));

  SignPattern single = parse_pattern("0 +\n+ 0");
  ArcColoring cs = color_arcs(single, irreducible_components(positive_part(single)));
  CHECK(cs.red.empty());
  CHECK(cs.blue.size() == 2);

  CHECK_THROWS_AS(color_arcs(y, Components{{{0, 1}}}), ComponentMismatch);
}

TEST_CASE("quotient_digraph") {
  SignPattern y = testing::load_fixture("section4_Y.sp");
  Components parts = irreducible_components(positive_part(y));
  Digraph d0 = quotient_digraph(color_arcs(y, parts), parts);
  CHECK(d0.vertex_count() == 4);
  CHECK(d0.has_arc(0, 1));
  CHECK(d0.has_arc(1, 2));
  CHECK(d0.has_arc(2, 0));
  CHECK(d0.has_arc(1, 3));
  CHECK(d0.has_arc(3, 0));
  CHECK(d0.arc_count() == 5);
  CHECK_FALSE(d0.has_loop());
  CHECK(is_minimally_strongly_connected(d0));

  SignPattern single = parse_pattern("0 +\n+ 0");
  Components sp = irreducible_components(positive_part(single));
  Digraph q1 = quotient_digraph(color_arcs(single, sp), sp);
  CHECK(q1.vertex_count() == 1);
  CHECK(q1.arc_count() == 0);

  // Two components joined by a red 2-cycle.
  SignPattern two = parse_pattern("0 + 0 0\n+ 0 - 0\n0 0 0 +\n- 0 + 0");
  Components tp = irreducible_components(positive_part(two));
  Digraph q2 = quotient_digraph(color_arcs(two, tp), tp);
  CHECK(q2.vertex_count() == 2);
  CHECK(q2.has_arc(0, 1));
  CHECK(q2.has_arc(1, 0));
}

TEST_CASE("minimally irreducible patterns have at most 2n-2 arcs") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    Digraph d = testing::random_minimally_strongly_connected(n, rng);
    CHECK(d.arc_count() <= 2 * n - 2);
  }
}
