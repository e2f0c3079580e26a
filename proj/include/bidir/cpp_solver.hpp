#pragma once

// Cyclic Chinese Postman walks on bi-directed graphs.
//
// Balancing walks repair imbalance two units at a time. A walk leaving
// through OUT removes one unit of in-excess at its start (a V+ unit), one
// arriving through IN removes one unit of out-excess at its end (a V- unit).
// Pairing V+ with V- units uses terminal-oriented walks, which gives the
// balancing bipartite graph. Walks that leave and arrive through OUT pair two
// V+ units, and IN/IN walks pair two V- units; when such walks exist the
// exact solver matches units on a general graph instead.
//
// When no cyclic covering walk exists, contig mode joins every unmatched unit
// to a hypothetical vertex h, tours the result and cuts the tour at h.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "bidir/bigraph.hpp"
#include "bidir/blossom.hpp"
#include "bidir/euler.hpp"
#include "bidir/matching.hpp"
#include "bidir/shortest_walk.hpp"
#include "bidir/walk.hpp"

namespace bidir {

// Connected with every vertex balanced. Balanced graphs that are connected in
// the undirected sense are connected in the bi-directed sense too, since an
// Euler tour passes every vertex in both spins.
inline bool is_eulerian(const BiGraph& g) { return is_balanced(g) && components(g).size() <= 1; }

// One imbalance unit of a vertex; `group` indexes BalancingBipartiteGraph::plus
// or ::minus.
struct Replica {
  Vertex vertex = 0;
  std::size_t group = 0;
  std::uint64_t copy = 0;
};

struct BalancingBipartiteGraph {
  std::vector<Vertex> plus;                 // V+, ascending
  std::vector<Vertex> minus;                // V-, ascending
  std::vector<std::uint64_t> plus_excess;   // d_in - d_out
  std::vector<std::uint64_t> minus_excess;  // d_out - d_in
  std::vector<Replica> P;
  std::vector<Replica> Q;
  CostMatrix dist_t;  // |plus| x |minus|, terminal walk cost or kAbsent

  double cost(std::size_t row, std::size_t col) const { return dist_t(P.at(row).group, Q.at(col).group); }

  // Replica-level matrix; replicas of one vertex share its row or column.
  CostMatrix replica_costs() const {
    CostMatrix c(P.size(), Q.size());
    for (std::size_t r = 0; r < P.size(); ++r)
      for (std::size_t q = 0; q < Q.size(); ++q) {
        const double d = dist_t(P[r].group, Q[q].group);
        if (d != kAbsent) c.set(r, q, d);
      }
    return c;
  }
};

// Costs of same-sign balancing walks. plus_plus(i, j): leave plus[i] through
// OUT, arrive at plus[j] through OUT (i == j allowed). minus_minus(i, j):
// leave minus[i] through IN, arrive at minus[j] through IN.
struct SameSignTables {
  CostMatrix plus_plus;
  CostMatrix minus_minus;

  bool any_finite() const { return has_finite(plus_plus) || has_finite(minus_minus); }

 private:
  static bool has_finite(const CostMatrix& c) {
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t q = 0; q < c.cols(); ++q)
        if (c.finite(r, q)) return true;
    return false;
  }
};

namespace detail {

inline void fill_groups(const BiGraph& g, BalancingBipartiteGraph& b) {
  const auto sets = imbalance_sets(g);
  b.plus = sets.plus;
  b.minus = sets.minus;
  for (std::size_t i = 0; i < b.plus.size(); ++i) {
    const auto ex = static_cast<std::uint64_t>(degrees(g, b.plus[i]).imbalance());
    b.plus_excess.push_back(ex);
    for (std::uint64_t c = 0; c < ex; ++c) b.P.push_back(Replica{b.plus[i], i, c});
  }
  for (std::size_t i = 0; i < b.minus.size(); ++i) {
    const auto ex = static_cast<std::uint64_t>(-degrees(g, b.minus[i]).imbalance());
    b.minus_excess.push_back(ex);
    for (std::uint64_t c = 0; c < ex; ++c) b.Q.push_back(Replica{b.minus[i], i, c});
  }
}

inline unsigned resolve_threads(unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}

// Searches from (v, PLUS) for every v in V+ and, when `same_sign`, from
// (v, MINUS) for every v in V-.
inline void balancing_tables(const BiGraph& g, BalancingBipartiteGraph& b, SameSignTables* same, unsigned threads) {
  fill_groups(g, b);
  b.dist_t = CostMatrix(b.plus.size(), b.minus.size());
  std::vector<WalkState> starts;
  for (Vertex v : b.plus) starts.push_back({v, Sign::plus});
  if (same) {
    same->plus_plus = CostMatrix(b.plus.size(), b.plus.size());
    same->minus_minus = CostMatrix(b.minus.size(), b.minus.size());
    for (Vertex v : b.minus) starts.push_back({v, Sign::minus});
  }
  const std::size_t np = b.plus.size();
  for_each_search(g, starts, SearchMode::terminal, resolve_threads(threads), [&](std::size_t i, const DistLabels& d) {
    if (i < np) {
      for (std::size_t j = 0; j < b.minus.size(); ++j) {
        const double c = d.plus(b.minus[j]);
        if (c != kInfinity) b.dist_t.set(i, j, c);
      }
      if (same) {
        for (std::size_t j = 0; j < np; ++j) {
          const double c = d.minus(b.plus[j]);
          if (c != kInfinity) same->plus_plus.set(i, j, c);
        }
      }
    } else {
      const std::size_t row = i - np;
      for (std::size_t j = 0; j < b.minus.size(); ++j) {
        const double c = d.plus(b.minus[j]);
        if (c != kInfinity) same->minus_minus.set(row, j, c);
      }
    }
  });
}

}  // namespace detail

// Terminal-oriented shortest walk costs from every V+ vertex to every V-
// vertex. One search per V+ vertex, spread over `threads` workers (0: all
// hardware threads).
inline BalancingBipartiteGraph build_balancing_bipartite(const BiGraph& g, unsigned threads = 1) {
  BalancingBipartiteGraph b;
  detail::balancing_tables(g, b, nullptr, threads);
  return b;
}

enum class PairKind { plus_minus, plus_plus, minus_minus };

// One balancing walk: from `from` to `to` with the spins given by `kind`
// (plus_minus: OUT..IN, plus_plus: OUT..OUT, minus_minus: IN..IN).
struct BalancingPair {
  Vertex from = 0;
  Vertex to = 0;
  PairKind kind = PairKind::plus_minus;
  double cost = 0;
};

inline WalkState start_state(const BalancingPair& p) {
  return {p.from, p.kind == PairKind::minus_minus ? Sign::minus : Sign::plus};
}

inline WalkState target_state(const BalancingPair& p) {
  return {p.to, p.kind == PairKind::plus_plus ? Sign::minus : Sign::plus};
}

// Reconstructs one shortest walk per pair, running one search per distinct
// start state. Identical pairs get identical walks.
inline std::vector<BiWalk> balancing_walks(const BiGraph& g, std::span<const BalancingPair> pairs) {
  std::vector<BiWalk> out(pairs.size());
  std::map<std::pair<Vertex, int>, std::vector<std::size_t>> by_start;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto s = start_state(pairs[i]);
    by_start[{s.vertex, static_cast<int>(s.sign)}].push_back(i);
  }
  for (const auto& [key, idx] : by_start) {
    const auto labels = search_from(g, WalkState{key.first, static_cast<Sign>(key.second)}, SearchMode::terminal);
    for (std::size_t i : idx) {
      auto w = labels.walk_to(target_state(pairs[i]));
      if (!w || w->empty()) throw std::logic_error("balancing pair has no walk");
      out[i] = std::move(*w);
    }
  }
  return out;
}

inline MultiBiGraph overlay(const BiGraph& g, std::span<const BalancingPair> pairs) {
  MultiBiGraph mg(g);
  for (const auto& w : balancing_walks(g, pairs)) mg.add_walk(w);
  return mg;
}

inline std::vector<BalancingPair> pairs_from_matching(const BalancingBipartiteGraph& b, const Matching& m) {
  std::vector<BalancingPair> out;
  for (const auto& [r, c] : m.pairs) {
    out.push_back(BalancingPair{b.P.at(r).vertex, b.Q.at(c).vertex, PairKind::plus_minus, b.cost(r, c)});
  }
  return out;
}

enum class SolutionKind { cyclic_walk, contig_set };

struct CostBreakdown {
  double base = 0;      // sum of c(e) * multiplicity
  double matching = 0;  // sum of balancing walk costs
  double total() const noexcept { return base + matching; }
};

struct CppSolution {
  SolutionKind kind = SolutionKind::cyclic_walk;
  BiWalk walk;                        // cyclic_walk
  std::vector<BiWalk> contigs;        // contig_set
  double cost = 0;
  CostBreakdown breakdown;
  Matching matching;                  // replica-level bipartite matching, if one was used
  std::vector<BalancingPair> pairs;   // every overlaid balancing walk
  bool general_matching = false;      // same-sign walks took part
};

// Sum of edge weights over every reported walk.
inline double solution_walk_cost(const BiGraph& g, const CppSolution& s) {
  if (s.kind == SolutionKind::cyclic_walk) return walk_cost(g, s.walk);
  double c = 0;
  for (const auto& w : s.contigs) c += walk_cost(g, w);
  return c;
}

// Recomputes base cost and pair costs from the graph and the stored pairs and
// checks them against the reported cost and the walks themselves.
inline bool cost_identity_holds(const BiGraph& g, const CppSolution& s) {
  double pairs = 0;
  for (const auto& p : s.pairs) pairs += p.cost;
  const double expected = g.total_cost() + pairs;
  return s.breakdown.base == g.total_cost() && s.breakdown.matching == pairs && s.cost == expected &&
         solution_walk_cost(g, s) == expected;
}

// Per-edge traversal counts summed over the solution's walks.
inline std::vector<std::uint64_t> coverage(const BiGraph& g, const CppSolution& s) {
  if (s.kind == SolutionKind::cyclic_walk) return traversal_counts(g, s.walk);
  std::vector<std::uint64_t> total(g.edge_count(), 0);
  for (const auto& w : s.contigs) {
    const auto c = traversal_counts(g, w);
    for (std::size_t i = 0; i < c.size(); ++i) total[i] += c[i];
  }
  return total;
}

namespace detail {

inline void require_connected(const BiGraph& g) {
  const auto comps = components(g);
  if (comps.size() <= 1) return;
  std::vector<std::vector<Label>> labelled;
  for (const auto& comp : comps) {
    labelled.emplace_back();
    for (Vertex x : comp) labelled.back().push_back(g.label(x));
  }
  throw DisconnectedGraphError(std::move(labelled));
}

inline CppSolution tour_solution(const BiGraph& g, std::vector<BalancingPair> pairs, Matching m, bool general) {
  CppSolution s;
  s.kind = SolutionKind::cyclic_walk;
  const MultiBiGraph mg = overlay(g, pairs);
  if (!mg.balanced()) throw std::logic_error("overlay of a perfect balancing matching left a vertex imbalanced");
  s.walk = g.empty() ? BiWalk{} : euler_tour(mg);
  s.breakdown.base = g.total_cost();
  for (const auto& p : pairs) s.breakdown.matching += p.cost;
  s.cost = s.breakdown.total();
  s.matching = std::move(m);
  s.pairs = std::move(pairs);
  s.general_matching = general;
  return s;
}

// Minimum-cost pairing of all imbalance units allowing same-sign walks.
inline std::optional<std::vector<BalancingPair>> general_unit_matching(const BalancingBipartiteGraph& b,
                                                                       const SameSignTables& t) {
  struct Unit {
    bool plus;
    std::size_t group;
  };
  std::vector<Unit> units;
  for (const auto& r : b.P) units.push_back({true, r.group});
  for (const auto& r : b.Q) units.push_back({false, r.group});
  auto pair_cost = [&](const Unit& x, const Unit& y) -> double {
    if (x.plus && y.plus) return std::min(t.plus_plus(x.group, y.group), t.plus_plus(y.group, x.group));
    if (!x.plus && !y.plus) return std::min(t.minus_minus(x.group, y.group), t.minus_minus(y.group, x.group));
    return x.plus ? b.dist_t(x.group, y.group) : b.dist_t(y.group, x.group);
  };
  std::vector<GeneralEdge> edges;
  for (std::size_t i = 0; i < units.size(); ++i)
    for (std::size_t j = i + 1; j < units.size(); ++j) {
      const double c = pair_cost(units[i], units[j]);
      if (c != kAbsent) edges.push_back({i, j, c});
    }
  const auto m = min_cost_perfect_matching(units.size(), edges);
  if (!m) return std::nullopt;
  std::vector<BalancingPair> out;
  for (auto [i, j] : *m) {
    const Unit& x = units[i];
    const Unit& y = units[j];
    const double c = pair_cost(x, y);
    if (x.plus && y.plus) {
      const bool fwd = t.plus_plus(x.group, y.group) <= t.plus_plus(y.group, x.group);
      const Vertex a = b.plus[fwd ? x.group : y.group], z = b.plus[fwd ? y.group : x.group];
      out.push_back({a, z, PairKind::plus_plus, c});
    } else if (!x.plus && !y.plus) {
      const bool fwd = t.minus_minus(x.group, y.group) <= t.minus_minus(y.group, x.group);
      const Vertex a = b.minus[fwd ? x.group : y.group], z = b.minus[fwd ? y.group : x.group];
      out.push_back({a, z, PairKind::minus_minus, c});
    } else {
      const Unit& p = x.plus ? x : y;
      const Unit& q = x.plus ? y : x;
      out.push_back({b.plus[p.group], b.minus[q.group], PairKind::plus_minus, c});
    }
  }
  return out;
}

}  // namespace detail

// Minimum-cost cyclic walk covering every edge at least multiplicity times,
// or nullopt when none exists. Throws DisconnectedGraphError when the graph
// has more than one connected component.
inline std::optional<CppSolution> solve_cpp_exact(const BiGraph& g, unsigned threads = 1) {
  detail::require_connected(g);
  if (is_balanced(g)) return detail::tour_solution(g, {}, {}, false);
  BalancingBipartiteGraph b;
  SameSignTables same;
  detail::balancing_tables(g, b, &same, threads);
  if (!same.any_finite()) {
    const auto m = hungarian_min_perfect(b.replica_costs());
    if (!m) return std::nullopt;
    return detail::tour_solution(g, pairs_from_matching(b, *m), *m, false);
  }
  auto pairs = detail::general_unit_matching(b, same);
  if (!pairs) return std::nullopt;
  return detail::tour_solution(g, std::move(*pairs), {}, true);
}

// Contig mode. Overlays the matched walks, joins unmatched units to a
// hypothetical vertex h (P units by p -> h, Q units by h -> q, leftover
// imbalance at h absorbed by loops), tours every component and cuts tours at
// h. Components with no unmatched unit yield one cyclic contig; vertices
// without edges yield an empty contig.
inline CppSolution extract_contigs(const BiGraph& g, const Matching& m, const BalancingBipartiteGraph& b) {
  CppSolution s;
  s.kind = SolutionKind::contig_set;
  s.matching = m;
  s.pairs = pairs_from_matching(b, m);
  s.breakdown.base = g.total_cost();
  for (const auto& p : s.pairs) s.breakdown.matching += p.cost;
  s.cost = s.breakdown.total();

  std::vector<char> p_used(b.P.size(), 0), q_used(b.Q.size(), 0);
  for (const auto& [r, c] : m.pairs) p_used.at(r) = q_used.at(c) = 1;
  std::vector<Vertex> open_p, open_q;
  for (std::size_t r = 0; r < b.P.size(); ++r)
    if (!p_used[r]) open_p.push_back(b.P[r].vertex);
  for (std::size_t c = 0; c < b.Q.size(); ++c)
    if (!q_used[c]) open_q.push_back(b.Q[c].vertex);

  const MultiBiGraph mg = overlay(g, s.pairs);

  // Augmented graph: base edges keep their ids, h gets the largest label.
  Label h_label = 0;
  for (Label l : g.labels()) h_label = std::max(h_label, l + 1);
  const bool need_h = !open_p.empty() || !open_q.empty();
  GraphBuilder builder;
  for (Label l : g.labels()) builder.add_vertex(l);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& be = g.edge(e);
    builder.add_edge(g.label(be.u), g.label(be.v), be.o1, be.o2, be.weight,
                     static_cast<std::uint32_t>(mg.copies(e)));
  }
  constexpr auto R = Orientation::right;
  constexpr auto L = Orientation::left;
  if (need_h) {
    builder.add_vertex(h_label);
    for (Vertex p : open_p) builder.add_edge(g.label(p), h_label, R, R, 0.0);
    for (Vertex q : open_q) builder.add_edge(h_label, g.label(q), R, R, 0.0);
    if (open_p.size() > open_q.size()) {
      for (std::size_t i = 0; i < (open_p.size() - open_q.size()) / 2; ++i) builder.add_edge(h_label, h_label, R, L, 0.0);
    } else {
      for (std::size_t i = 0; i < (open_q.size() - open_p.size()) / 2; ++i) builder.add_edge(h_label, h_label, L, R, 0.0);
    }
  }
  const BiGraph aug = builder.build();
  const MultiBiGraph amg(aug);
  auto to_base = [&](BiWalk w) {
    w.start = g.vertex(aug.label(w.start));
    return w;
  };

  std::vector<Vertex> pref;
  if (need_h) pref.push_back(aug.vertex(h_label));
  for (auto& tour : euler_tours(amg, pref)) {
    if (!need_h || tour.start != pref.front()) {
      s.contigs.push_back(to_base(std::move(tour)));
      continue;
    }
    const Vertex h = pref.front();
    BiWalk cur;
    for (const auto& st : tour.steps) {
      const auto& e = aug.edge(st.edge);
      if (e.u == h || e.v == h) {
        if (!cur.steps.empty()) s.contigs.push_back(to_base(std::move(cur)));
        cur = BiWalk{};
        continue;
      }
      if (cur.steps.empty()) cur.start = departure_vertex(aug, st);
      cur.steps.push_back(st);
    }
    if (!cur.steps.empty()) s.contigs.push_back(to_base(std::move(cur)));
  }
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (g.incidences(x).empty()) {
      BiWalk w;
      w.start = x;
      s.contigs.push_back(w);
    }
  }
  return s;
}

enum class MatchStrategy { exact, greedy };

// Contig mode end to end over the bipartite balancing graph.
inline CppSolution solve_contigs(const BiGraph& g, MatchStrategy strategy = MatchStrategy::exact, unsigned threads = 1) {
  const auto b = build_balancing_bipartite(g, threads);
  const auto c = b.replica_costs();
  const Matching m = strategy == MatchStrategy::exact ? max_match_min_cost(c) : greedy_match(c);
  return extract_contigs(g, m, b);
}

// Greedy matching on the balancing bipartite graph. A perfect greedy matching
// yields a cyclic walk; otherwise the unmatched units go to contig mode.
inline CppSolution solve_cpp_greedy(const BiGraph& g, unsigned threads = 1) {
  detail::require_connected(g);
  if (is_balanced(g)) return detail::tour_solution(g, {}, {}, false);
  const auto b = build_balancing_bipartite(g, threads);
  const Matching m = greedy_match(b.replica_costs());
  if (b.P.size() == b.Q.size() && m.size() == b.P.size()) {
    return detail::tour_solution(g, pairs_from_matching(b, m), m, false);
  }
  return extract_contigs(g, m, b);
}

}  // namespace bidir
