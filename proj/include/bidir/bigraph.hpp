#pragma once

// Bi-directed graphs: edges carry an arrowhead at each endpoint. All
// algorithms work with the per-incidence Spin (arrowhead pointing into the
// vertex or away from it); Orientation symbols only appear at I/O boundaries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "bidir/error.hpp"

namespace bidir {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Label = std::uint64_t;

// RIGHT is drawn '>' and LEFT '<'.
enum class Orientation : std::uint8_t { right, left };

constexpr Orientation mirror(Orientation o) noexcept {
  return o == Orientation::right ? Orientation::left : Orientation::right;
}

constexpr char symbol(Orientation o) noexcept { return o == Orientation::right ? '>' : '<'; }

inline Orientation parse_orientation(std::string_view token) {
  if (token == ">") return Orientation::right;
  if (token == "<") return Orientation::left;
  throw InputError("orientation must be '>' or '<', got '" + std::string(token) + "'");
}

enum class Spin : std::uint8_t { in, out };

constexpr Spin opposite(Spin s) noexcept { return s == Spin::in ? Spin::out : Spin::in; }

constexpr std::string_view to_string(Spin s) noexcept { return s == Spin::in ? "IN" : "OUT"; }

// Which slot of the (u, v, o1, o2) tuple an incidence belongs to. Needed to
// tell the two incidences of a self-loop apart.
enum class End : std::uint8_t { u, v };

constexpr End other(End e) noexcept { return e == End::u ? End::v : End::u; }

struct BiEdge {
  Vertex u = 0;
  Vertex v = 0;
  Orientation o1 = Orientation::right;
  Orientation o2 = Orientation::right;
  double weight = 1.0;
  std::uint32_t multiplicity = 1;

  constexpr Vertex endpoint(End e) const noexcept { return e == End::u ? u : v; }
  constexpr Orientation orientation(End e) const noexcept { return e == End::u ? o1 : o2; }
  constexpr bool is_loop() const noexcept { return u == v; }

  // The same physical edge written from the other end.
  constexpr BiEdge reversed() const noexcept {
    return BiEdge{v, u, mirror(o2), mirror(o1), weight, multiplicity};
  }

  friend bool operator==(const BiEdge&, const BiEdge&) = default;
};

// OUT at u iff o1 is RIGHT; IN at v iff o2 is RIGHT. Invariant under reversal.
constexpr Spin spin_at(const BiEdge& e, End end) noexcept {
  if (end == End::u) return e.o1 == Orientation::right ? Spin::out : Spin::in;
  return e.o2 == Orientation::right ? Spin::in : Spin::out;
}

// Spin of `e` at vertex `x`. For self-loops `occurrence` picks the incidence.
inline Spin spin_at(const BiEdge& e, Vertex x, End occurrence = End::u) {
  if (e.is_loop() && x == e.u) return spin_at(e, occurrence);
  if (x == e.u) return spin_at(e, End::u);
  if (x == e.v) return spin_at(e, End::v);
  throw DomainError("vertex " + std::to_string(x) + " is not an endpoint of the edge");
}

struct Incidence {
  EdgeId edge = 0;
  End end = End::u;
  Spin spin = Spin::in;
};

struct Degrees {
  std::uint64_t in = 0;
  std::uint64_t out = 0;

  constexpr std::int64_t imbalance() const noexcept {
    return static_cast<std::int64_t>(in) - static_cast<std::int64_t>(out);
  }
  constexpr bool balanced() const noexcept { return in == out; }
  friend bool operator==(const Degrees&, const Degrees&) = default;
};

class GraphBuilder;

// Immutable once built. Vertices are dense indices 0..n-1 ordered by their
// external label; edges keep first-insertion order.
class BiGraph {
 public:
  BiGraph() = default;

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  bool has_vertex(Vertex x) const noexcept { return x < labels_.size(); }
  bool has_edge(EdgeId e) const noexcept { return e < edges_.size(); }

  const BiEdge& edge(EdgeId e) const {
    if (!has_edge(e)) throw StructuralError("edge " + std::to_string(e) + " does not exist");
    return edges_[e];
  }
  std::span<const BiEdge> edges() const noexcept { return edges_; }

  // Incidences at `x`, ordered by edge id then end. A self-loop contributes two.
  std::span<const Incidence> incidences(Vertex x) const {
    check_vertex(x);
    return std::span<const Incidence>(incidences_).subspan(offsets_[x], offsets_[x + 1] - offsets_[x]);
  }

  Label label(Vertex x) const {
    check_vertex(x);
    return labels_[x];
  }
  std::span<const Label> labels() const noexcept { return labels_; }

  std::optional<Vertex> find(Label l) const noexcept {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || *it != l) return std::nullopt;
    return static_cast<Vertex>(it - labels_.begin());
  }

  Vertex vertex(Label l) const {
    if (auto x = find(l)) return *x;
    throw DomainError("unknown vertex " + std::to_string(l));
  }

  bool unit_weights() const noexcept {
    return std::all_of(edges_.begin(), edges_.end(), [](const BiEdge& e) { return e.weight == 1.0; });
  }

  // Sum of weight * multiplicity: the cost of covering every edge once.
  double total_cost() const noexcept {
    double total = 0;
    for (const auto& e : edges_) total += e.weight * e.multiplicity;
    return total;
  }

  std::uint64_t total_multiplicity() const noexcept {
    std::uint64_t total = 0;
    for (const auto& e : edges_) total += e.multiplicity;
    return total;
  }

  void check_vertex(Vertex x) const {
    if (!has_vertex(x)) throw DomainError("unknown vertex index " + std::to_string(x));
  }

 private:
  friend class GraphBuilder;

  std::vector<Label> labels_;
  std::vector<BiEdge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidences_;
};

// Collects vertices and edges keyed by external labels. Re-adding the same
// physical edge (same endpoints, orientations and weight, in either tuple
// direction) bumps its multiplicity instead of creating a parallel edge.
class GraphBuilder {
 public:
  void add_vertex(Label l) { vertices_.push_back(l); }

  void add_edge(Label u, Label v, Orientation o1, Orientation o2, double weight = 1.0,
                std::uint32_t multiplicity = 1) {
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
      throw InputError("edge weight must be finite and non-negative, got " + std::to_string(weight));
    }
    if (multiplicity == 0) throw InputError("edge multiplicity must be at least 1");
    vertices_.push_back(u);
    vertices_.push_back(v);
    Key key{u, v, o1, o2, weight};
    Key rev{v, u, mirror(o2), mirror(o1), weight};
    if (rev < key) key = rev;
    auto [it, inserted] = index_.try_emplace(key, pending_.size());
    if (inserted) {
      pending_.push_back(Pending{u, v, o1, o2, weight, multiplicity});
    } else {
      pending_[it->second].multiplicity += multiplicity;
    }
  }

  BiGraph build() const {
    BiGraph g;
    g.labels_ = vertices_;
    std::sort(g.labels_.begin(), g.labels_.end());
    g.labels_.erase(std::unique(g.labels_.begin(), g.labels_.end()), g.labels_.end());
    g.edges_.reserve(pending_.size());
    for (const auto& p : pending_) {
      g.edges_.push_back(BiEdge{*g.find(p.u), *g.find(p.v), p.o1, p.o2, p.weight, p.multiplicity});
    }
    const std::size_t n = g.labels_.size();
    std::vector<std::size_t> count(n + 1, 0);
    for (const auto& e : g.edges_) {
      ++count[e.u + 1];
      ++count[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) count[i + 1] += count[i];
    g.offsets_ = count;
    g.incidences_.resize(count[n]);
    for (EdgeId id = 0; id < g.edges_.size(); ++id) {
      const auto& e = g.edges_[id];
      g.incidences_[count[e.u]++] = Incidence{id, End::u, spin_at(e, End::u)};
      g.incidences_[count[e.v]++] = Incidence{id, End::v, spin_at(e, End::v)};
    }
    return g;
  }

 private:
  using Key = std::tuple<Label, Label, Orientation, Orientation, double>;
  struct Pending {
    Label u, v;
    Orientation o1, o2;
    double weight;
    std::uint32_t multiplicity;
  };

  std::vector<Label> vertices_;
  std::vector<Pending> pending_;
  std::map<Key, std::size_t> index_;
};

// Counts incidences by spin, weighted by multiplicity.
inline Degrees degrees(const BiGraph& g, Vertex x) {
  Degrees d;
  for (const auto& inc : g.incidences(x)) {
    const auto m = g.edge(inc.edge).multiplicity;
    (inc.spin == Spin::in ? d.in : d.out) += m;
  }
  return d;
}

struct ImbalanceSets {
  std::vector<Vertex> plus;   // d_in - d_out > 0
  std::vector<Vertex> minus;  // d_in - d_out < 0
  std::size_t p = 0;          // max(|plus|, |minus|)
  std::uint64_t d_max = 0;    // max |d_in - d_out|
};

inline ImbalanceSets imbalance_sets(const BiGraph& g) {
  ImbalanceSets s;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    const auto imb = degrees(g, x).imbalance();
    if (imb > 0) s.plus.push_back(x);
    if (imb < 0) s.minus.push_back(x);
    s.d_max = std::max<std::uint64_t>(s.d_max, static_cast<std::uint64_t>(imb < 0 ? -imb : imb));
  }
  s.p = std::max(s.plus.size(), s.minus.size());
  return s;
}

inline bool is_balanced(const BiGraph& g) {
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (!degrees(g, x).balanced()) return false;
  }
  return true;
}

// Connected components of the underlying undirected graph, each sorted,
// ordered by their smallest vertex. Isolated vertices form singletons.
inline std::vector<std::vector<Vertex>> components(const BiGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::int64_t> comp(n, -1);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  for (Vertex root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    const auto id = static_cast<std::int64_t>(out.size());
    out.emplace_back();
    comp[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      out.back().push_back(x);
      for (const auto& inc : g.incidences(x)) {
        const Vertex y = g.edge(inc.edge).endpoint(other(inc.end));
        if (comp[y] < 0) {
          comp[y] = id;
          stack.push_back(y);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

// True iff every ordered pair of vertices is joined by a valid bi-directed
// walk. Runs a reachability sweep over (vertex, required departure spin)
// states from every vertex, so it is quadratic; callers that only need the
// balanced case can rely on undirected connectivity instead.
inline bool is_connected(const BiGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return true;
  if (components(g).size() != 1) return false;
  auto index = [](Vertex x, Spin need) { return 2 * static_cast<std::size_t>(x) + (need == Spin::out ? 0 : 1); };
  std::vector<char> seen(2 * n);
  std::vector<char> vertex_seen(n);
  std::deque<std::pair<Vertex, Spin>> queue;
  for (Vertex s = 0; s < n; ++s) {
    std::fill(seen.begin(), seen.end(), 0);
    std::fill(vertex_seen.begin(), vertex_seen.end(), 0);
    std::size_t reached = 1;
    vertex_seen[s] = 1;
    for (Spin need : {Spin::out, Spin::in}) {
      seen[index(s, need)] = 1;
      queue.emplace_back(s, need);
    }
    while (!queue.empty()) {
      auto [x, need] = queue.front();
      queue.pop_front();
      for (const auto& inc : g.incidences(x)) {
        if (inc.spin != need) continue;
        const auto& e = g.edge(inc.edge);
        const End arrive = other(inc.end);
        const Vertex y = e.endpoint(arrive);
        const Spin next = opposite(spin_at(e, arrive));
        if (!seen[index(y, next)]) {
          seen[index(y, next)] = 1;
          queue.emplace_back(y, next);
          if (!vertex_seen[y]) {
            vertex_seen[y] = 1;
            ++reached;
          }
        }
      }
    }
    if (reached != n) return false;
  }
  return true;
}

}  // namespace bidir
