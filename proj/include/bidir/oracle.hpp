#pragma once

// Brute-force references for tests. They read orientation symbols directly
// and share no search code with the solvers: a walk step is an edge written
// in its direction of travel, (x, y, a, b), and consecutive steps are valid
// when the second one's `a` equals the first one's `b`.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "bidir/bigraph.hpp"
#include "bidir/matching.hpp"

namespace bidir {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumBudget {
  std::size_t max_vertices = 8;
  std::size_t max_edges = 16;      // shortest-walk oracle
  std::size_t max_cpp_edges = 6;   // postman oracle, counting multiplicity
  std::size_t max_matrix = 8;      // matching oracle
  std::size_t max_walk_len = 0;    // 0: 2|V| + 1
  std::uint64_t seed = 0;          // recorded by generators, unused here
};

enum class OracleMode { general, terminal };

namespace detail {

struct Directed {
  Vertex x, y;
  Orientation a, b;
  double w;
  EdgeId id;
};

inline std::vector<Directed> both_directions(const BiGraph& g) {
  std::vector<Directed> out;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const auto& e = g.edge(id);
    out.push_back({e.u, e.v, e.o1, e.o2, e.weight, id});
    out.push_back({e.v, e.u, mirror(e.o2), mirror(e.o1), e.weight, id});
  }
  return out;
}

}  // namespace detail

// Layered relaxation over walks of at most max_walk_len edges. In general
// mode any first step is allowed; in terminal mode the first step must start
// with '>' and the walk must end with '>' at t. For s == t general mode gives
// 0 and terminal mode the cheapest closed walk of at least one edge.
inline double oracle_shortest(const BiGraph& g, Vertex s, Vertex t, OracleMode mode, const EnumBudget& budget = {}) {
  if (g.vertex_count() > budget.max_vertices || g.edge_count() > budget.max_edges) {
    throw BudgetExceeded("oracle_shortest: graph exceeds the enumeration budget");
  }
  g.check_vertex(s);
  g.check_vertex(t);
  if (mode == OracleMode::general && s == t) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t n = g.vertex_count();
  const std::size_t len = budget.max_walk_len ? budget.max_walk_len : 2 * n + 1;
  const auto steps = detail::both_directions(g);
  // cur[v][sym]: cheapest walk of >= 1 edge ending at v whose last symbol is sym.
  std::vector<std::array<double, 2>> best(n, {inf, inf}), cur(n, {inf, inf});
  for (const auto& d : steps) {
    if (d.x != s) continue;
    if (mode == OracleMode::terminal && d.a != Orientation::right) continue;
    auto& slot = cur[d.y][static_cast<int>(d.b)];
    slot = std::min(slot, d.w);
  }
  best = cur;
  for (std::size_t layer = 1; layer < len; ++layer) {
    auto next = cur;
    for (const auto& d : steps) {
      const double base = cur[d.x][static_cast<int>(d.a)];
      if (base == inf) continue;
      auto& slot = next[d.y][static_cast<int>(d.b)];
      slot = std::min(slot, base + d.w);
    }
    cur = std::move(next);
    for (std::size_t v = 0; v < n; ++v)
      for (int k = 0; k < 2; ++k) best[v][k] = std::min(best[v][k], cur[v][k]);
  }
  if (mode == OracleMode::terminal) return best[t][static_cast<int>(Orientation::right)];
  return std::min(best[t][0], best[t][1]);
}

// Minimum cost over all permutations avoiding absent entries.
inline std::optional<double> oracle_min_perfect_match(const CostMatrix& c, const EnumBudget& budget = {}) {
  if (c.rows() > budget.max_matrix || c.cols() > budget.max_matrix) {
    throw BudgetExceeded("oracle_min_perfect_match: matrix exceeds the enumeration budget");
  }
  if (!c.square()) return std::nullopt;
  std::vector<std::size_t> perm(c.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<double> best;
  do {
    double total = 0;
    bool ok = true;
    for (std::size_t r = 0; r < perm.size() && ok; ++r) {
      if (!c.finite(r, perm[r])) ok = false;
      else total += c(r, perm[r]);
    }
    if (ok && (!best || total < *best)) best = total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Cheapest matching of each cardinality: result[k] is the minimum cost over
// matchings with exactly k pairs, infinity if none.
inline std::vector<double> oracle_min_cost_by_size(const CostMatrix& c, const EnumBudget& budget = {}) {
  if (c.rows() > budget.max_matrix || c.cols() > budget.max_matrix) {
    throw BudgetExceeded("oracle_min_cost_by_size: matrix exceeds the enumeration budget");
  }
  const std::size_t cap = std::min(c.rows(), c.cols());
  std::vector<double> best(cap + 1, std::numeric_limits<double>::infinity());
  std::vector<char> col_used(c.cols(), 0);
  auto rec = [&](auto&& self, std::size_t r, std::size_t k, double cost) -> void {
    if (r == c.rows()) {
      best[k] = std::min(best[k], cost);
      return;
    }
    self(self, r + 1, k, cost);
    for (std::size_t q = 0; q < c.cols(); ++q) {
      if (col_used[q] || !c.finite(r, q)) continue;
      col_used[q] = 1;
      self(self, r + 1, k + 1, cost + c(r, q));
      col_used[q] = 0;
    }
  };
  rec(rec, 0, 0, 0.0);
  return best;
}

// Cheapest cyclic walk traversing every edge at least multiplicity times, or
// nullopt. Uniform-cost search over (vertex, symbol the next step must start
// with, per-edge coverage capped at multiplicity). A cyclic walk can be
// rotated to start with edge 0, so only its two directions are tried as the
// first step; the walk closes when it returns to the start vertex ready to
// repeat that first step.
inline std::optional<double> oracle_cpp(const BiGraph& g, const EnumBudget& budget = {}) {
  std::size_t copies = 0;
  for (const auto& e : g.edges()) copies += e.multiplicity;
  if (copies > budget.max_cpp_edges || g.vertex_count() > budget.max_vertices) {
    throw BudgetExceeded("oracle_cpp: graph exceeds the enumeration budget");
  }
  if (g.edge_count() == 0) {
    if (g.vertex_count() <= 1) return 0.0;
    return std::nullopt;
  }
  const auto steps = detail::both_directions(g);
  const std::size_t m = g.edge_count();
  // Mixed-radix coverage code.
  std::vector<std::uint64_t> radix(m, 1);
  std::uint64_t full = 0;
  for (std::size_t i = 1; i < m; ++i) radix[i] = radix[i - 1] * (g.edge(static_cast<EdgeId>(i - 1)).multiplicity + 1);
  for (std::size_t i = 0; i < m; ++i) full += radix[i] * g.edge(static_cast<EdgeId>(i)).multiplicity;
  auto bump = [&](std::uint64_t cov, EdgeId id) {
    const std::uint64_t have = (cov / radix[id]) % (g.edge(id).multiplicity + 1);
    return have < g.edge(id).multiplicity ? cov + radix[id] : cov;
  };

  std::optional<double> best;
  for (int dir = 0; dir < 2; ++dir) {
    const auto& first = steps[dir];
    using Key = std::tuple<Vertex, int, std::uint64_t>;
    using Item = std::pair<double, Key>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    std::map<Key, double> dist;
    const Key k0{first.y, static_cast<int>(first.b), bump(0, first.id)};
    dist[k0] = first.w;
    pq.emplace(first.w, k0);
    while (!pq.empty()) {
      auto [d, key] = pq.top();
      pq.pop();
      if (d > dist[key]) continue;
      if (best && d >= *best) break;
      const auto [x, sym, cov] = key;
      if (x == first.x && sym == static_cast<int>(first.a) && cov == full) {
        best = d;
        break;
      }
      for (const auto& st : steps) {
        if (st.x != x || static_cast<int>(st.a) != sym) continue;
        const Key nk{st.y, static_cast<int>(st.b), bump(cov, st.id)};
        const double nd = d + st.w;
        auto it = dist.find(nk);
        if (it == dist.end() || nd < it->second) {
          dist[nk] = nd;
          pq.emplace(nd, nk);
        }
      }
    }
  }
  return best;
}

}  // namespace bidir
