#include <catch2/catch_amalgamated.hpp>

#include "bidir/oracle.hpp"
#include "support/generators.hpp"

using namespace bidir;
using namespace bidir::testing;

TEST_CASE("shortest_bidirected examples", "[shortest]") {
  const auto one = make_graph({{1, 2, R, R}});
  CHECK(shortest_bidirected(one, one.vertex(1), one.vertex(2)) == 1);
  CHECK(shortest_bidirected(one, one.vertex(2), one.vertex(1)) == 1);
  CHECK(shortest_bidirected(one, one.vertex(1), one.vertex(1)) == 0);

  const auto blocked = make_graph({{1, 2, R, R}, {2, 3, L, R}});
  CHECK(shortest_bidirected(blocked, blocked.vertex(1), blocked.vertex(3)) == kInfinity);

  CHECK_THROWS_AS(shortest_bidirected(one, 0, 9), DomainError);
}

TEST_CASE("terminal_shortest examples", "[shortest]") {
  const auto one = make_graph({{1, 2, R, R}});
  CHECK(terminal_shortest(one, one.vertex(1), one.vertex(2)) == 1);
  CHECK(terminal_shortest(one, one.vertex(2), one.vertex(1)) == kInfinity);

  const auto alt = make_graph({{1, 2, R, L}, {2, 3, L, R}});
  CHECK(terminal_shortest(alt, alt.vertex(1), alt.vertex(3)) == 2);

  const auto path = make_graph({{1, 2, R, R}, {2, 3, R, R}});
  CHECK(terminal_shortest(path, path.vertex(3), path.vertex(1)) == kInfinity);
}

TEST_CASE("terminal mode with s == t is the cheapest closed walk", "[shortest]") {
  const auto tri = make_graph({{1, 2, R, R, 2}, {2, 3, R, R, 3}, {3, 1, R, R, 4}});
  CHECK(terminal_shortest(tri, 0, 0) == 9);
  const auto loop = make_graph({{1, 1, R, R, 5}});
  CHECK(terminal_shortest(loop, 0, 0) == 5);
  const auto path = make_graph({{1, 2, R, R}});
  CHECK(terminal_shortest(path, 0, 0) == kInfinity);
}

TEST_CASE("BFS engine", "[shortest]") {
  const auto single = make_graph({}, {4});
  const auto l = bfs_unit_weights(single, 0, SearchMode::general);
  CHECK(l.plus(0) == 0);
  CHECK(l.minus(0) == 0);

  const auto one = make_graph({{1, 2, R, R}});
  CHECK(bfs_unit_weights(one, 0, SearchMode::terminal).plus(1) == 1);

  const auto weighted = make_graph({{1, 2, R, R, 2}});
  CHECK_THROWS_AS(bfs_unit_weights(weighted, 0, SearchMode::general), PreconditionError);
}

TEST_CASE("engines agree with the oracle", "[shortest][oracle][property]") {
  Rng rng(101);
  for (int iter = 0; iter < 150; ++iter) {
    const bool unit = iter % 2 == 0;
    const auto g = random_graph(rng, 6, 10, 1, unit ? 1 : 5);
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
      const auto gen = shortest_bidirected(g, s, Engine::heap);
      const auto ter = terminal_shortest(g, s, Engine::heap);
      for (Vertex t = 0; t < g.vertex_count(); ++t) {
        CHECK(gen.distance(t) == oracle_shortest(g, s, t, OracleMode::general));
        CHECK(ter.distance(t) == oracle_shortest(g, s, t, OracleMode::terminal));
      }
      if (unit) {
        const auto bg = bfs_unit_weights(g, s, SearchMode::general);
        const auto bt = bfs_unit_weights(g, s, SearchMode::terminal);
        for (Vertex t = 0; t < g.vertex_count(); ++t) {
          CHECK(bg.plus(t) == gen.plus(t));
          CHECK(bg.minus(t) == gen.minus(t));
          CHECK(bt.distance(t) == ter.distance(t));
        }
      }
    }
  }
}

TEST_CASE("reconstructed walks realise their labels", "[shortest][property]") {
  Rng rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    const auto g = random_graph(rng, 7, 14, 1, 9);
    const Vertex s = static_cast<Vertex>(uniform(rng, 0, g.vertex_count() - 1));
    const auto ter = terminal_shortest(g, s);
    const auto gen = shortest_bidirected(g, s);
    for (Vertex t = 0; t < g.vertex_count(); ++t) {
      if (const double d = ter.distance(t); d != kInfinity) {
        const auto w = ter.walk_to(t);
        REQUIRE(w);
        CHECK(validate_walk(g, *w));
        CHECK(w->start == s);
        CHECK(end_vertex(g, *w) == t);
        CHECK_FALSE(w->empty());
        CHECK(walk_cost(g, *w) == d);
        CHECK(start_spin(g, *w) == Spin::out);
        CHECK(end_spin(g, *w) == Spin::in);
      }
      if (const double d = gen.distance(t); d != kInfinity) {
        const auto w = gen.walk_to(t);
        REQUIRE(w);
        CHECK(validate_walk(g, *w));
        CHECK(end_vertex(g, *w) == t);
        CHECK(walk_cost(g, *w) == d);
      }
    }
  }
}

TEST_CASE("labels become permanent in non-decreasing order", "[shortest][property]") {
  Rng rng(13);
  for (int iter = 0; iter < 200; ++iter) {
    const auto g = random_graph(rng, 8, 16, 0, 5);
    const auto l = shortest_bidirected(g, 0, Engine::heap);
    const auto seq = l.settle_sequence();
    CHECK(std::is_sorted(seq.begin(), seq.end()));
  }
}

TEST_CASE("general distances are symmetric", "[shortest][property]") {
  // The reverse of a valid walk is valid and costs the same.
  Rng rng(19);
  for (int iter = 0; iter < 150; ++iter) {
    const auto g = random_graph(rng, 6, 10, 1, 4);
    for (Vertex s = 0; s < g.vertex_count(); ++s)
      for (Vertex t = 0; t < g.vertex_count(); ++t)
        CHECK(shortest_bidirected(g, s, t) == shortest_bidirected(g, t, s));
  }
}

TEST_CASE("parallel searches match sequential ones", "[shortest]") {
  Rng rng(31);
  const auto g = random_graph(rng, 8, 16, 1, 5);
  std::vector<WalkState> starts;
  for (Vertex x = 0; x < g.vertex_count(); ++x) starts.push_back({x, Sign::plus});
  std::vector<std::vector<double>> par(starts.size());
  for_each_search(g, std::span<const WalkState>(starts), SearchMode::terminal, 4, [&](std::size_t i, const DistLabels& l) {
    for (Vertex t = 0; t < g.vertex_count(); ++t) par[i].push_back(l.plus(t));
  });
  for (std::size_t i = 0; i < starts.size(); ++i)
    for (Vertex t = 0; t < g.vertex_count(); ++t) CHECK(par[i][t] == terminal_shortest(g, starts[i].vertex).plus(t));
}
