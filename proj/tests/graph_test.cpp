#include "isg/graph.hpp"

#include "isg/luck.hpp"
#include "testutil.hpp"

#include <doctest.h>

using namespace isg;
using namespace isg::testutil;

TEST_SUITE("graph") {

TEST_CASE("agreement game graph") {
  const SynchronousGame g = agreement_game();
  const GameGraph x = build_game_graph(g);
  REQUIRE(x.size() == 4);
  // Oracle: enumerate the 6 unordered pairs against the predicate by hand.
  // Vertices sorted (q,a): (0,0) (0,1) (1,0) (1,1); adjacency iff the answers
  // differ (the predicate only compares answers).
  int expected_edges = 0;
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) {
      const Vertex vu = x.vertices()[u];
      const Vertex vv = x.vertices()[v];
      const bool adjacent = vu.a != vv.a;
      CHECK(x.adjacent(u, v) == adjacent);
      if (adjacent) ++expected_edges;
    }
  }
  CHECK(expected_edges == 4);
  CHECK(x.edge_count() == 4);
}

TEST_CASE("luck game graph") {
  const LuckParams p{3, 2};
  const GameGraph x = build_game_graph(make_luck_game(p));
  const int t = p.k * p.n;
  REQUIRE(x.size() == t);
  for (int u = 0; u < t; ++u) {
    for (int v = 0; v < t; ++v) {
      if (u == v) continue;
      // 0-based: low questions are indices < n.
      const bool expected = (u < p.n) || (v < p.n);
      CHECK(x.adjacent(u, v) == expected);
    }
  }
}

TEST_CASE("all-winning game leaves only synchronicity edges") {
  SynchronousGame g = make_synchronous_game({"0", "1", "2"}, {"0", "1"}, Distribution::uniform(3));
  const GameGraph x = build_game_graph(g);
  for (int u = 0; u < x.size(); ++u) {
    for (int v = u + 1; v < x.size(); ++v) {
      const Vertex vu = x.vertices()[u];
      const Vertex vv = x.vertices()[v];
      CHECK(x.adjacent(u, v) == (vu.q == vv.q && vu.a != vv.a));
    }
  }
}

TEST_CASE("flipping winning cells to losing never removes edges") {
  Rng rng(61);
  SynchronousGame g = random_sync_game(3, 2, 0.2, rng);
  GameGraph before = build_game_graph(g);
  for (int round = 0; round < 4; ++round) {
    const int q = static_cast<int>(rng() % 3);
    int qp = static_cast<int>(rng() % 3);
    if (q == qp) qp = (qp + 1) % 3;
    g.set_win(q, qp, static_cast<int>(rng() % 2), static_cast<int>(rng() % 2), false);
    const GameGraph after = build_game_graph(g);
    for (int u = 0; u < before.size(); ++u) {
      for (int v = u + 1; v < before.size(); ++v) {
        if (before.adjacent(u, v)) CHECK(after.adjacent(u, v));
      }
    }
    before = after;
  }
}

TEST_CASE("questions induce cliques over answers") {
  Rng rng(67);
  const SynchronousGame g = random_sync_game(3, 3, 0.3, rng);
  const GameGraph x = build_game_graph(g);
  for (int q = 0; q < 3; ++q) {
    for (int a = 0; a < 3; ++a) {
      for (int ap = a + 1; ap < 3; ++ap) {
        const int u = x.find_vertex(Vertex{q, a});
        const int v = x.find_vertex(Vertex{q, ap});
        CHECK(x.adjacent(u, v));
      }
    }
  }
}

TEST_CASE("independent set membership") {
  const GameGraph x = build_game_graph(agreement_game());
  const int v00 = x.find_vertex(Vertex{0, 0});
  const int v10 = x.find_vertex(Vertex{1, 0});
  const int v11 = x.find_vertex(Vertex{1, 1});
  CHECK(is_independent_set(x, {v00, v10}));
  CHECK_FALSE(is_independent_set(x, {v00, v11}));
  CHECK(is_independent_set(x, {}));
  CHECK_FALSE(is_independent_set(x, {v00, v00}));
  CHECK_THROWS_AS(is_independent_set(x, {99}), std::out_of_range);
}

TEST_CASE("a perfect synchronous witness induces an independent set") {
  Rng rng(71);
  int found = 0;
  for (int trial = 0; trial < 40 && found < 5; ++trial) {
    const SynchronousGame g = random_sync_game(3, 3, 0.15, rng);
    const auto result = classical_value(g, 1e8, true);
    if (*result.exact != Rat(1)) continue;
    ++found;
    const GameGraph x = build_game_graph(g);
    std::vector<int> set;
    for (int q = 0; q < g.nq(); ++q) set.push_back(x.find_vertex(Vertex{q, result.witness.f[q]}));
    CHECK(is_independent_set(x, set));
  }
  CHECK(found > 0);
}

TEST_CASE("exports") {
  std::vector<Vertex> single = {Vertex{0, 0}};
  const GameGraph one(single);
  CHECK(export_dot(one) == "graph X {\n  \"0,0\";\n}\n");
  CHECK(export_edge_list(one).empty());

  const GameGraph x = build_game_graph(agreement_game());
  const std::string dot = export_dot(x);
  CHECK(dot.find("\"0,0\" -- \"0,1\";") != std::string::npos);
  int edge_lines = 0;
  const std::string edges = export_edge_list(x);
  for (char ch : edges) {
    if (ch == '\n') ++edge_lines;
  }
  CHECK(edge_lines == 4);
  // Deterministic output.
  CHECK(export_dot(x) == dot);
}

}  // TEST_SUITE
