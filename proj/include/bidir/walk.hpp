#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "bidir/bigraph.hpp"

namespace bidir {

// One traversed edge. `forward` runs from the u end to the v end.
struct Step {
  EdgeId edge = 0;
  bool forward = true;

  constexpr End from() const noexcept { return forward ? End::u : End::v; }
  constexpr End to() const noexcept { return forward ? End::v : End::u; }
  friend bool operator==(const Step&, const Step&) = default;
};

// A walk is a start vertex plus a sequence of steps. For a non-empty walk the
// terminal spins follow from the steps; `start_spin` only carries meaning for
// the empty walk, where it selects which strand a spelled vertex reads.
struct BiWalk {
  Vertex start = 0;
  std::vector<Step> steps;
  bool cyclic = false;
  Spin start_spin = Spin::out;

  bool empty() const noexcept { return steps.empty(); }
  std::size_t size() const noexcept { return steps.size(); }
  friend bool operator==(const BiWalk&, const BiWalk&) = default;
};

inline Spin departure_spin(const BiGraph& g, const Step& s) { return spin_at(g.edge(s.edge), s.from()); }
inline Spin arrival_spin(const BiGraph& g, const Step& s) { return spin_at(g.edge(s.edge), s.to()); }
inline Vertex departure_vertex(const BiGraph& g, const Step& s) { return g.edge(s.edge).endpoint(s.from()); }
inline Vertex arrival_vertex(const BiGraph& g, const Step& s) { return g.edge(s.edge).endpoint(s.to()); }

inline Vertex end_vertex(const BiGraph& g, const BiWalk& w) {
  return w.empty() ? w.start : arrival_vertex(g, w.steps.back());
}

inline Spin start_spin(const BiGraph& g, const BiWalk& w) {
  return w.empty() ? w.start_spin : departure_spin(g, w.steps.front());
}

// Arrival spin of the last step; for an empty walk, the spin an arrival would
// need so that the walk could leave with `start_spin`.
inline Spin end_spin(const BiGraph& g, const BiWalk& w) {
  return w.empty() ? opposite(w.start_spin) : arrival_spin(g, w.steps.back());
}

// Checks that consecutive steps share their junction vertex and meet with
// opposite spins there, and for cyclic walks that the walk closes at its
// start with the closing arrival opposite the opening departure. A step that
// names a missing edge throws StructuralError instead of returning false.
inline bool validate_walk(const BiGraph& g, const BiWalk& w) {
  for (const auto& s : w.steps) {
    if (!g.has_edge(s.edge)) {
      throw StructuralError("walk references missing edge " + std::to_string(s.edge));
    }
  }
  if (!g.has_vertex(w.start)) throw StructuralError("walk starts at missing vertex");
  if (w.empty()) return true;
  if (departure_vertex(g, w.steps.front()) != w.start) return false;
  for (std::size_t i = 1; i < w.steps.size(); ++i) {
    const auto& prev = w.steps[i - 1];
    const auto& next = w.steps[i];
    if (arrival_vertex(g, prev) != departure_vertex(g, next)) return false;
    if (arrival_spin(g, prev) == departure_spin(g, next)) return false;
  }
  if (w.cyclic) {
    if (end_vertex(g, w) != w.start) return false;
    if (arrival_spin(g, w.steps.back()) == departure_spin(g, w.steps.front())) return false;
  }
  return true;
}

// The same walk traversed backwards; every spin is preserved.
inline BiWalk reversed(const BiGraph& g, const BiWalk& w) {
  BiWalk r;
  r.cyclic = w.cyclic;
  r.start = end_vertex(g, w);
  if (w.empty()) r.start_spin = opposite(w.start_spin);
  r.steps.reserve(w.steps.size());
  for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) r.steps.push_back(Step{it->edge, !it->forward});
  return r;
}

inline double walk_cost(const BiGraph& g, const BiWalk& w) {
  double total = 0;
  for (const auto& s : w.steps) total += g.edge(s.edge).weight;
  return total;
}

// Number of times each edge is traversed.
inline std::vector<std::uint64_t> traversal_counts(const BiGraph& g, const BiWalk& w) {
  std::vector<std::uint64_t> counts(g.edge_count(), 0);
  for (const auto& s : w.steps) {
    if (!g.has_edge(s.edge)) throw StructuralError("walk references missing edge " + std::to_string(s.edge));
    ++counts[s.edge];
  }
  return counts;
}

// Renders "1 >-> 2 >-< 3": vertex labels separated by the traversed edge's
// arrowheads, written in the direction of travel.
inline std::string format_walk(const BiGraph& g, const BiWalk& w) {
  std::string out = std::to_string(g.label(w.start));
  for (const auto& s : w.steps) {
    const auto& e = g.edge(s.edge);
    const BiEdge t = s.forward ? e : e.reversed();
    out += ' ';
    out += symbol(t.o1);
    out += '-';
    out += symbol(t.o2);
    out += ' ';
    out += std::to_string(g.label(t.v));
  }
  return out;
}

}  // namespace bidir
