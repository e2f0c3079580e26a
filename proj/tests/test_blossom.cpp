#include <catch2/catch_amalgamated.hpp>

#include "support/generators.hpp"

using namespace bidir;
using namespace bidir::testing;

namespace {

struct Best {
  std::size_t size = 0;
  double weight = -1;
};

// Exhaustive: pair the lowest free vertex with each neighbour or leave it out.
Best brute_max_weight(std::size_t n, const std::vector<GeneralEdge>& edges, bool max_cardinality) {
  Best best;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, std::size_t size, double weight) -> void {
    std::size_t v = 0;
    while (v < n && used[v]) ++v;
    if (v == n) {
      const bool better = max_cardinality ? std::tie(size, weight) > std::tie(best.size, best.weight)
                                          : weight > best.weight;
      if (better) best = {size, weight};
      return;
    }
    used[v] = 1;
    self(self, size, weight);
    for (const auto& e : edges) {
      const std::size_t u = e.a == v ? e.b : e.b == v ? e.a : n;
      if (u == n || u == v || used[u]) continue;
      used[u] = 1;
      self(self, size + 1, weight + e.cost);
      used[u] = 0;
    }
    used[v] = 0;
  };
  rec(rec, 0, 0.0);
  return best;
}

std::optional<double> brute_min_perfect(std::size_t n, const std::vector<GeneralEdge>& edges) {
  std::optional<double> best;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, double cost) -> void {
    std::size_t v = 0;
    while (v < n && used[v]) ++v;
    if (v == n) {
      if (!best || cost < *best) best = cost;
      return;
    }
    used[v] = 1;
    for (const auto& e : edges) {
      const std::size_t u = e.a == v ? e.b : e.b == v ? e.a : n;
      if (u == n || u == v || used[u]) continue;
      used[u] = 1;
      self(self, cost + e.cost);
      used[u] = 0;
    }
    used[v] = 0;
  };
  rec(rec, 0.0);
  return best;
}

std::vector<GeneralEdge> random_edges(Rng& rng, std::size_t n, double density, int max_cost) {
  std::vector<GeneralEdge> edges;
  std::bernoulli_distribution keep(density);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (keep(rng)) edges.push_back({a, b, static_cast<double>(uniform(rng, 0, max_cost))});
  return edges;
}

double mate_weight(const std::vector<int>& mate, const std::vector<GeneralEdge>& edges, std::size_t* size) {
  double w = 0;
  *size = 0;
  for (const auto& e : edges) {
    if (mate[e.a] == static_cast<int>(e.b)) {
      w += e.cost;
      ++*size;
    }
  }
  return w;
}

}  // namespace

TEST_CASE("odd cycle needs a blossom", "[blossom]") {
  // Triangle 0-1-2 with a pendant 3 on vertex 2: the only perfect matching
  // uses the pendant edge and one triangle edge.
  const std::vector<GeneralEdge> edges{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 10}};
  const auto pm = min_cost_perfect_matching(4, edges);
  REQUIRE(pm);
  CHECK(*pm == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 3}});
}

TEST_CASE("no perfect matching", "[blossom]") {
  const std::vector<GeneralEdge> star{{0, 1, 1}, {0, 2, 1}, {0, 3, 1}};
  CHECK_FALSE(min_cost_perfect_matching(4, star));
  CHECK_FALSE(min_cost_perfect_matching(3, star));
  CHECK(min_cost_perfect_matching(0, {})->empty());
}

TEST_CASE("input checks", "[blossom]") {
  const std::vector<GeneralEdge> out_of_range{{0, 5, 1}};
  CHECK_THROWS_AS(min_cost_perfect_matching(2, out_of_range), DomainError);
  CHECK_THROWS_AS(max_weight_matching(2, out_of_range), DomainError);
  const std::vector<GeneralEdge> negative{{0, 1, -1}};
  CHECK_THROWS_AS(min_cost_perfect_matching(2, negative), InputError);
}

TEST_CASE("max_weight_matching agrees with brute force", "[blossom][property]") {
  Rng rng(59);
  for (int iter = 0; iter < 400; ++iter) {
    const std::size_t n = uniform(rng, 1, 9);
    const auto edges = random_edges(rng, n, 0.5, 12);
    for (bool maxcard : {false, true}) {
      const auto mate = max_weight_matching(n, edges, maxcard);
      for (std::size_t v = 0; v < n; ++v)
        if (mate[v] >= 0) CHECK(mate[static_cast<std::size_t>(mate[v])] == static_cast<int>(v));
      std::size_t size = 0;
      const double w = mate_weight(mate, edges, &size);
      const auto ref = brute_max_weight(n, edges, maxcard);
      CHECK(w == ref.weight);
      if (maxcard) CHECK(size == ref.size);
    }
  }
}

TEST_CASE("min_cost_perfect_matching agrees with brute force", "[blossom][property]") {
  Rng rng(61);
  for (int iter = 0; iter < 400; ++iter) {
    const std::size_t n = 2 * uniform(rng, 1, 5);
    const auto edges = random_edges(rng, n, 0.6, 20);
    const auto pm = min_cost_perfect_matching(n, edges);
    const auto ref = brute_min_perfect(n, edges);
    REQUIRE(pm.has_value() == ref.has_value());
    if (!pm) continue;
    double cost = 0;
    std::vector<char> seen(n, 0);
    for (auto [a, b] : *pm) {
      CHECK(a < b);
      seen[a] = seen[b] = 1;
      double c = std::numeric_limits<double>::infinity();
      for (const auto& e : edges)
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) c = std::min(c, e.cost);
      cost += c;
    }
    CHECK(std::count(seen.begin(), seen.end(), 1) == static_cast<long>(n));
    CHECK(cost == *ref);
  }
}
