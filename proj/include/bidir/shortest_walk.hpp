#pragma once

// Single-source shortest bi-directed walks. The search runs over doubled
// states (vertex, sign): PLUS means the walk must next leave through an
// OUT-spin incidence, MINUS through an IN-spin incidence. Arriving through an
// IN-spin incidence puts the walk in PLUS, through an OUT-spin incidence in
// MINUS. With non-negative weights this is plain Dijkstra on at most 2|V|
// states, and a BFS when every weight is 1.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <thread>
#include <tuple>
#include <vector>

#include "bidir/bigraph.hpp"
#include "bidir/walk.hpp"

namespace bidir {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sign : std::uint8_t { plus, minus };

constexpr Spin required_spin(Sign s) noexcept { return s == Sign::plus ? Spin::out : Spin::in; }
constexpr Sign sign_after_arrival(Spin arrival) noexcept {
  return arrival == Spin::in ? Sign::plus : Sign::minus;
}

struct WalkState {
  Vertex vertex = 0;
  Sign sign = Sign::plus;
  friend bool operator==(const WalkState&, const WalkState&) = default;
};

// general: the walk may leave the source through either spin.
// terminal: it must leave through OUT and arrive at the target through IN.
enum class SearchMode { general, terminal };

enum class Engine { automatic, heap, bfs };

namespace detail {

inline constexpr std::uint32_t kNoState = std::numeric_limits<std::uint32_t>::max();

constexpr std::size_t state_index(WalkState s) noexcept {
  return 2 * static_cast<std::size_t>(s.vertex) + (s.sign == Sign::minus ? 1 : 0);
}
constexpr WalkState state_at(std::size_t i) noexcept {
  return WalkState{static_cast<Vertex>(i / 2), (i & 1) ? Sign::minus : Sign::plus};
}

struct Parent {
  std::uint32_t prev = kNoState;
  EdgeId edge = 0;
  bool forward = true;
};

// Calls f(next_state, edge, forward, weight) for every move allowed from `st`.
template <typename F>
void for_each_move(const BiGraph& g, WalkState st, F&& f) {
  const Spin need = required_spin(st.sign);
  for (const auto& inc : g.incidences(st.vertex)) {
    if (inc.spin != need) continue;
    const auto& e = g.edge(inc.edge);
    const End to = other(inc.end);
    f(WalkState{e.endpoint(to), sign_after_arrival(spin_at(e, to))}, inc.edge, inc.end == End::u, e.weight);
  }
}

}  // namespace detail

// Labels produced by one search: dist+ and dist- for every vertex, one parent
// per state for walk reconstruction, and for each start state the cheapest
// non-empty walk that returns to it.
class DistLabels {
 public:
  std::span<const WalkState> starts() const noexcept { return starts_; }
  Vertex source() const noexcept { return starts_.front().vertex; }
  SearchMode mode() const noexcept { return mode_; }

  double at(WalkState s) const { return dist_.at(detail::state_index(s)); }
  double plus(Vertex x) const { return at({x, Sign::plus}); }
  double minus(Vertex x) const { return at({x, Sign::minus}); }

  // Distance to `t` under the search mode. In terminal mode the target must
  // be reached in PLUS; for t == source that is a closed non-empty walk.
  double distance(Vertex t) const {
    if (mode_ == SearchMode::general) {
      if (t == source()) return 0.0;
      return std::min(plus(t), minus(t));
    }
    if (t == source()) return returning(WalkState{t, Sign::plus});
    return plus(t);
  }

  // Cheapest non-empty walk from the starts back into start state `s`.
  double returning(WalkState s) const {
    for (std::size_t i = 0; i < starts_.size(); ++i) {
      if (starts_[i] == s) return return_cost_[i];
    }
    return kInfinity;
  }

  // Walk from a start state to `s`; empty for a start state itself.
  std::optional<BiWalk> walk_to(WalkState s) const {
    const auto idx = detail::state_index(s);
    if (idx >= dist_.size() || dist_[idx] == kInfinity) return std::nullopt;
    BiWalk w;
    std::size_t cur = idx;
    while (parent_[cur].prev != detail::kNoState) {
      w.steps.push_back(Step{parent_[cur].edge, parent_[cur].forward});
      cur = parent_[cur].prev;
    }
    std::reverse(w.steps.begin(), w.steps.end());
    const WalkState root = detail::state_at(cur);
    w.start = root.vertex;
    w.start_spin = required_spin(root.sign);
    return w;
  }

  std::optional<BiWalk> returning_walk(WalkState s) const {
    for (std::size_t i = 0; i < starts_.size(); ++i) {
      if (!(starts_[i] == s) || return_cost_[i] == kInfinity) continue;
      auto w = walk_to(detail::state_at(return_parent_[i].prev));
      w->steps.push_back(Step{return_parent_[i].edge, return_parent_[i].forward});
      return w;
    }
    return std::nullopt;
  }

  // Walk realising distance(t). Ties between the two signs prefer PLUS.
  std::optional<BiWalk> walk_to(Vertex t) const {
    if (mode_ == SearchMode::general) {
      if (t == source()) return walk_to(starts_.front());
      const Sign best = plus(t) <= minus(t) ? Sign::plus : Sign::minus;
      return walk_to(WalkState{t, best});
    }
    if (t == source()) return returning_walk(WalkState{t, Sign::plus});
    return walk_to(WalkState{t, Sign::plus});
  }

  // Label values in the order states became permanent.
  std::span<const double> settle_sequence() const noexcept { return settled_; }
  std::size_t relaxations() const noexcept { return relaxations_; }

 private:
  friend DistLabels search(const BiGraph&, std::span<const WalkState>, SearchMode, Engine);

  std::vector<WalkState> starts_;
  SearchMode mode_ = SearchMode::general;
  std::vector<double> dist_;
  std::vector<detail::Parent> parent_;
  std::vector<double> return_cost_;
  std::vector<detail::Parent> return_parent_;
  std::vector<double> settled_;
  std::size_t relaxations_ = 0;
};

// Core search from an explicit set of start states (all at cost 0). `mode`
// only affects how DistLabels::distance interprets the result.
inline DistLabels search(const BiGraph& g, std::span<const WalkState> starts, SearchMode mode,
                         Engine engine = Engine::automatic) {
  if (starts.empty()) throw DomainError("search needs at least one start state");
  for (const auto& s : starts) g.check_vertex(s.vertex);
  if (engine == Engine::automatic) engine = g.unit_weights() ? Engine::bfs : Engine::heap;
  if (engine == Engine::bfs && !g.unit_weights()) {
    throw PreconditionError("BFS search requires unit edge weights; use the heap-based search");
  }

  DistLabels out;
  out.starts_.assign(starts.begin(), starts.end());
  out.mode_ = mode;
  const std::size_t n_states = 2 * g.vertex_count();
  out.dist_.assign(n_states, kInfinity);
  out.parent_.assign(n_states, detail::Parent{});
  std::vector<char> settled(n_states, 0);

  if (engine == Engine::heap) {
    // (dist, sign, vertex): equal distances pop PLUS before MINUS.
    using Entry = std::tuple<double, std::uint8_t, Vertex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (const auto& s : starts) {
      out.dist_[detail::state_index(s)] = 0.0;
      heap.emplace(0.0, static_cast<std::uint8_t>(s.sign), s.vertex);
    }
    while (!heap.empty()) {
      auto [d, sign, x] = heap.top();
      heap.pop();
      const WalkState st{x, static_cast<Sign>(sign)};
      const auto si = detail::state_index(st);
      if (settled[si] || d > out.dist_[si]) continue;
      settled[si] = 1;
      out.settled_.push_back(d);
      detail::for_each_move(g, st, [&](WalkState next, EdgeId e, bool fwd, double w) {
        ++out.relaxations_;
        const auto ni = detail::state_index(next);
        if (settled[ni] || d + w >= out.dist_[ni]) return;
        out.dist_[ni] = d + w;
        out.parent_[ni] = detail::Parent{static_cast<std::uint32_t>(si), e, fwd};
        heap.emplace(d + w, static_cast<std::uint8_t>(next.sign), next.vertex);
      });
    }
  } else {
    std::deque<std::size_t> queue;
    for (const auto& s : starts) {
      const auto si = detail::state_index(s);
      if (out.dist_[si] == 0.0) continue;
      out.dist_[si] = 0.0;
      queue.push_back(si);
    }
    while (!queue.empty()) {
      const auto si = queue.front();
      queue.pop_front();
      settled[si] = 1;
      const double d = out.dist_[si];
      out.settled_.push_back(d);
      detail::for_each_move(g, detail::state_at(si), [&](WalkState next, EdgeId e, bool fwd, double) {
        ++out.relaxations_;
        const auto ni = detail::state_index(next);
        if (out.dist_[ni] != kInfinity) return;
        out.dist_[ni] = d + 1.0;
        out.parent_[ni] = detail::Parent{static_cast<std::uint32_t>(si), e, fwd};
        queue.push_back(ni);
      });
    }
  }

  // Closing moves back into each start state.
  out.return_cost_.assign(starts.size(), kInfinity);
  out.return_parent_.assign(starts.size(), detail::Parent{});
  for (std::size_t si = 0; si < n_states; ++si) {
    if (out.dist_[si] == kInfinity) continue;
    const double d = out.dist_[si];
    detail::for_each_move(g, detail::state_at(si), [&](WalkState next, EdgeId e, bool fwd, double w) {
      for (std::size_t k = 0; k < starts.size(); ++k) {
        if (next == starts[k] && d + w < out.return_cost_[k]) {
          out.return_cost_[k] = d + w;
          out.return_parent_[k] = detail::Parent{static_cast<std::uint32_t>(si), e, fwd};
        }
      }
    });
  }
  return out;
}

inline DistLabels search_from(const BiGraph& g, WalkState start, SearchMode mode, Engine engine = Engine::automatic) {
  return search(g, std::span<const WalkState>(&start, 1), mode, engine);
}

// Shortest bi-directed walks from `s` leaving through either spin.
inline DistLabels shortest_bidirected(const BiGraph& g, Vertex s, Engine engine = Engine::heap) {
  const WalkState starts[] = {{s, Sign::plus}, {s, Sign::minus}};
  return search(g, starts, SearchMode::general, engine);
}

inline double shortest_bidirected(const BiGraph& g, Vertex s, Vertex t) {
  g.check_vertex(t);
  return shortest_bidirected(g, s).distance(t);
}

// Terminal-oriented walks: leave `s` through OUT, reach targets through IN.
inline DistLabels terminal_shortest(const BiGraph& g, Vertex s, Engine engine = Engine::heap) {
  return search_from(g, WalkState{s, Sign::plus}, SearchMode::terminal, engine);
}

inline double terminal_shortest(const BiGraph& g, Vertex s, Vertex t) {
  g.check_vertex(t);
  return terminal_shortest(g, s).distance(t);
}

// Unit-weight specialisation; throws PreconditionError on other weights.
inline DistLabels bfs_unit_weights(const BiGraph& g, Vertex s, SearchMode mode) {
  if (mode == SearchMode::general) return shortest_bidirected(g, s, Engine::bfs);
  return terminal_shortest(g, s, Engine::bfs);
}

// Runs one single-start search per entry of `starts` and hands each result to
// `consume(index, labels)`. Searches are spread over `threads` workers; each
// worker owns its labels, and `consume` is called from the worker thread, so
// it must only touch per-index state.
template <typename Consume>
void for_each_search(const BiGraph& g, std::span<const WalkState> starts, SearchMode mode, unsigned threads,
                     Consume&& consume) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(starts.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) consume(i, search_from(g, starts[i], mode));
    return;
  }
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t i = t; i < starts.size(); i += threads) consume(i, search_from(g, starts[i], mode));
    });
  }
}

}  // namespace bidir
