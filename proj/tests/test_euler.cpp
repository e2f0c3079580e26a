#include <catch2/catch_amalgamated.hpp>

#include "support/generators.hpp"

using namespace bidir;
using namespace bidir::testing;

namespace {

void check_tour(const MultiBiGraph& mg, const BiWalk& w) {
  const BiGraph& g = mg.base();
  CHECK(w.cyclic);
  CHECK(validate_walk(g, w));
  const auto counts = traversal_counts(g, w);
  for (EdgeId e = 0; e < g.edge_count(); ++e) CHECK(counts[e] == mg.copies(e));
}

}  // namespace

TEST_CASE("euler_tour small cases", "[euler]") {
  SECTION("2-cycle") {
    const auto g = make_graph({{1, 2, R, R}, {1, 2, L, L}});
    const MultiBiGraph mg(g);
    const auto w = euler_tour(mg);
    CHECK(w.size() == 2);
    check_tour(mg, w);
  }
  SECTION("triangle") {
    const auto g = make_graph({{1, 2, R, R}, {2, 3, R, R}, {3, 1, R, R}});
    const MultiBiGraph mg(g);
    const auto w = euler_tour(mg, g.vertex(2));
    CHECK(w.size() == 3);
    CHECK(w.start == g.vertex(2));
    check_tour(mg, w);
  }
  SECTION("self-loop") {
    const auto g = make_graph({{4, 4, R, R}});
    const MultiBiGraph mg(g);
    const auto w = euler_tour(mg);
    CHECK(w.size() == 1);
    check_tour(mg, w);
  }
  SECTION("multiplicity") {
    const auto g = make_graph({{1, 2, R, R, 1, 2}, {1, 2, L, L, 1, 2}});
    const MultiBiGraph mg(g);
    const auto w = euler_tour(mg);
    CHECK(w.size() == 4);
    check_tour(mg, w);
  }
  SECTION("no edges") {
    const auto g = make_graph({}, {3});
    const auto w = euler_tour(MultiBiGraph(g));
    CHECK(w.empty());
    CHECK(w.cyclic);
  }
}

TEST_CASE("euler_tour preconditions", "[euler]") {
  const auto path = make_graph({{1, 2, R, R}});
  CHECK_THROWS_AS(euler_tour(MultiBiGraph(path)), PreconditionError);
  const auto two = make_graph({{1, 1, R, R}, {2, 2, R, R}});
  CHECK_THROWS_AS(euler_tour(MultiBiGraph(two)), PreconditionError);
  CHECK(euler_tours(MultiBiGraph(two)).size() == 2);
  CHECK_THROWS_AS(euler_tour(MultiBiGraph(BiGraph{})), PreconditionError);
  const auto tri = make_graph({{1, 2, R, R}, {2, 3, R, R}, {3, 1, R, R}}, {9});
  CHECK_THROWS_AS(euler_tour(MultiBiGraph(tri), tri.vertex(9)), PreconditionError);
}

TEST_CASE("overlaying copies restores balance", "[euler]") {
  // A path 1 -> 2 -> 3 plus one extra copy of a closing walk is balanced.
  const auto g = make_graph({{1, 2, R, R}, {2, 3, R, R}, {3, 1, R, R}});
  MultiBiGraph mg(g);
  mg.add_copies(0);
  CHECK_FALSE(mg.balanced());
  mg.add_copies(1);
  mg.add_copies(2);
  CHECK(mg.balanced());
  CHECK(mg.total_copies() == 6);
  check_tour(mg, euler_tour(mg));
  CHECK_THROWS_AS(mg.add_copies(7), StructuralError);
}

TEST_CASE("tours of random balanced graphs", "[euler][property]") {
  Rng rng(71);
  for (int iter = 0; iter < 150; ++iter) {
    const auto g = random_balanced_graph(rng, uniform(rng, 1, 12), 60, 1, 3);
    REQUIRE(is_balanced(g));
    const MultiBiGraph mg(g);
    if (g.edge_count() == 0) continue;
    const auto w = euler_tour(mg);
    check_tour(mg, w);
    CHECK(walk_cost(g, w) == g.total_cost());
  }
}

TEST_CASE("every component gets its own tour", "[euler][property]") {
  Rng rng(73);
  for (int iter = 0; iter < 60; ++iter) {
    GraphBuilder b;
    const std::size_t parts = uniform(rng, 2, 4);
    std::size_t nonempty = 0;
    for (std::size_t p = 0; p < parts; ++p) {
      const auto part = random_balanced_graph(rng, uniform(rng, 1, 5), 12);
      if (part.edge_count() && components(part).size() == 1) ++nonempty;
      const Label offset = 100 * (p + 1);
      for (const auto& e : part.edges())
        b.add_edge(part.label(e.u) + offset, part.label(e.v) + offset, e.o1, e.o2, e.weight, e.multiplicity);
    }
    const auto g = b.build();
    const MultiBiGraph mg(g);
    const auto tours = euler_tours(mg);
    std::size_t with_edges = 0;
    for (const auto& comp : components(g))
      if (!g.incidences(comp.front()).empty()) ++with_edges;
    CHECK(tours.size() == with_edges);
    CHECK(tours.size() >= nonempty);
    std::vector<std::uint64_t> total(g.edge_count(), 0);
    for (const auto& t : tours) {
      CHECK(t.cyclic);
      CHECK(validate_walk(g, t));
      const auto c = traversal_counts(g, t);
      for (EdgeId e = 0; e < g.edge_count(); ++e) total[e] += c[e];
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) CHECK(total[e] == g.edge(e).multiplicity);
  }
}
