#pragma once

// Multi-bi-directed graphs (a base graph with extra copies of its edges, same
// orientations) and Euler tours over them.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bidir/bigraph.hpp"
#include "bidir/walk.hpp"

namespace bidir {

// Holds a reference to its base graph, which must outlive it.
class MultiBiGraph {
 public:
  explicit MultiBiGraph(const BiGraph& base) : base_(&base), extra_(base.edge_count(), 0) {}

  const BiGraph& base() const noexcept { return *base_; }

  std::uint64_t extra(EdgeId e) const { return extra_.at(e); }
  std::uint64_t copies(EdgeId e) const { return base_->edge(e).multiplicity + extra_.at(e); }

  void add_copies(EdgeId e, std::uint64_t n = 1) {
    if (!base_->has_edge(e)) throw StructuralError("overlay references missing edge " + std::to_string(e));
    extra_[e] += n;
  }

  void add_walk(const BiWalk& w) {
    for (const auto& s : w.steps) add_copies(s.edge);
  }

  std::uint64_t total_copies() const {
    std::uint64_t t = 0;
    for (EdgeId e = 0; e < extra_.size(); ++e) t += copies(e);
    return t;
  }

  Degrees degrees(Vertex x) const {
    Degrees d;
    for (const auto& inc : base_->incidences(x)) (inc.spin == Spin::in ? d.in : d.out) += copies(inc.edge);
    return d;
  }

  bool balanced() const {
    for (Vertex x = 0; x < base_->vertex_count(); ++x)
      if (!degrees(x).balanced()) return false;
    return true;
  }

 private:
  const BiGraph* base_;
  std::vector<std::uint64_t> extra_;
};

namespace detail {

// Tours every component that has edge copies left, one cyclic walk each.
// Spin-constrained Hierholzer: from (vertex, needed spin) always take the
// unused incidence of that spin with the lowest edge id; dead ends are
// spliced in on backtrack. Balance guarantees a walk can only get stuck in
// the state it started from.
inline std::vector<BiWalk> hierholzer(const MultiBiGraph& mg, std::span<const Vertex> preferred) {
  const BiGraph& g = mg.base();
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (!mg.degrees(x).balanced()) {
      throw PreconditionError("euler tour needs balanced vertices; vertex " + std::to_string(g.label(x)) +
                              " is imbalanced");
    }
  }
  std::vector<std::uint64_t> remaining(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) remaining[e] = mg.copies(e);

  const std::size_t n = g.vertex_count();
  std::vector<std::array<std::vector<Incidence>, 2>> lists(n);
  for (Vertex x = 0; x < n; ++x)
    for (const auto& inc : g.incidences(x)) lists[x][static_cast<int>(inc.spin)].push_back(inc);
  std::vector<std::array<std::size_t, 2>> cursor(n, {0, 0});
  auto next_incidence = [&](Vertex x, Spin need) -> const Incidence* {
    auto& list = lists[x][static_cast<int>(need)];
    auto& c = cursor[x][static_cast<int>(need)];
    while (c < list.size() && remaining[list[c].edge] == 0) ++c;
    return c < list.size() ? &list[c] : nullptr;
  };

  struct Frame {
    Vertex vertex;
    Spin need;
    std::optional<Step> via;
  };
  std::vector<BiWalk> tours;
  auto tour_from = [&](Vertex s) {
    Spin first_need = Spin::out;
    if (!next_incidence(s, Spin::out)) {
      if (!next_incidence(s, Spin::in)) return;
      first_need = Spin::in;
    }
    std::vector<Frame> stack{{s, first_need, std::nullopt}};
    std::vector<Step> circuit;
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (const Incidence* inc = next_incidence(top.vertex, top.need)) {
        --remaining[inc->edge];
        const auto& e = g.edge(inc->edge);
        const End to = other(inc->end);
        stack.push_back(Frame{e.endpoint(to), opposite(spin_at(e, to)), Step{inc->edge, inc->end == End::u}});
      } else {
        if (top.via) circuit.push_back(*top.via);
        stack.pop_back();
      }
    }
    std::reverse(circuit.begin(), circuit.end());
    BiWalk w;
    w.start = s;
    w.steps = std::move(circuit);
    w.cyclic = true;
    tours.push_back(std::move(w));
  };
  for (Vertex s : preferred) {
    g.check_vertex(s);
    tour_from(s);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (remaining[e]) tour_from(g.edge(e).u);
  return tours;
}

}  // namespace detail

// One cyclic tour per connected component that has edges, each using every
// edge of its component exactly copies(e) times. Tours from `preferred`
// starts come first, the rest follow in order of their lowest edge id.
// Throws PreconditionError if a vertex is imbalanced.
inline std::vector<BiWalk> euler_tours(const MultiBiGraph& mg, std::span<const Vertex> preferred = {}) {
  return detail::hierholzer(mg, preferred);
}

// Cyclic walk using every edge exactly copies(e) times, starting at `start`
// (default: the u end of the first edge). Throws PreconditionError on
// imbalanced or disconnected input.
inline BiWalk euler_tour(const MultiBiGraph& mg, std::optional<Vertex> start = std::nullopt) {
  const BiGraph& g = mg.base();
  if (g.empty()) throw PreconditionError("euler tour of an empty graph");
  std::vector<Vertex> pref;
  if (start) pref.push_back(*start);
  auto tours = detail::hierholzer(mg, pref);
  if (tours.empty()) {
    BiWalk w;
    w.start = start.value_or(0);
    g.check_vertex(w.start);
    w.cyclic = true;
    return w;
  }
  if (tours.size() > 1 || (start && tours.front().start != *start)) {
    throw PreconditionError("euler tour needs a connected edge set containing the start vertex");
  }
  return std::move(tours.front());
}

}  // namespace bidir
