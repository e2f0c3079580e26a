#pragma once

// Weighted matching on general (non-bipartite) graphs: Edmonds' blossom
// algorithm with dual variables, in the O(n^3) formulation of Galil. The
// structure follows the well-known reference implementation by J. van
// Rantwijk (as shipped in NetworkX); vertices are 0..n-1, blossoms n..2n-1.
//
// Used by the exact postman solver when balancing walks may pair two
// imbalance units of the same sign, which no bipartite formulation covers.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bidir/error.hpp"

namespace bidir {

struct GeneralEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double cost = 0;
};

namespace detail {

class BlossomMatcher {
 public:
  using EdgePair = std::pair<int, int>;
  static constexpr EdgePair kNoEdge{-1, -1};

  BlossomMatcher(std::size_t n, std::span<const GeneralEdge> edges, std::span<const double> weights,
                 bool max_cardinality)
      : n_(static_cast<int>(n)), max_cardinality_(max_cardinality) {
    weight_.assign(n * n, 0.0);
    has_.assign(n * n, 0);
    neighbors_.resize(n);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const int i = static_cast<int>(edges[k].a), j = static_cast<int>(edges[k].b);
      if (i == j) continue;
      const double w = weights[k];
      if (has_[idx(i, j)]) {
        weight_[idx(i, j)] = weight_[idx(j, i)] = std::max(weight_[idx(i, j)], w);
        continue;
      }
      has_[idx(i, j)] = has_[idx(j, i)] = 1;
      weight_[idx(i, j)] = weight_[idx(j, i)] = w;
      neighbors_[i].push_back(j);
      neighbors_[j].push_back(i);
    }
    for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
  }

  // mate[v] or -1.
  std::vector<int> solve() {
    const int n = n_;
    if (n == 0) return {};
    double max_weight = 0;
    for (int i = 0; i < n; ++i)
      for (int j : neighbors_[i]) max_weight = std::max(max_weight, weight_[idx(i, j)]);

    mate_.assign(n, -1);
    label_.assign(2 * n, 0);
    labeledge_.assign(2 * n, kNoEdge);
    inblossom_.resize(n);
    for (int v = 0; v < n; ++v) inblossom_[v] = v;
    blossomparent_.assign(2 * n, -1);
    blossombase_.assign(2 * n, -1);
    for (int v = 0; v < n; ++v) blossombase_[v] = v;
    alive_.assign(2 * n, 0);
    childs_.assign(2 * n, {});
    bedges_.assign(2 * n, {});
    mybestedges_.assign(2 * n, {});
    has_mybest_.assign(2 * n, 0);
    bestedge_.assign(2 * n, kNoEdge);
    dualvar_.assign(n, max_weight);
    blossomdual_.assign(2 * n, 0.0);
    allowed_.assign(static_cast<std::size_t>(n) * n, 0);
    free_ids_.clear();
    for (int b = 2 * n - 1; b >= n; --b) free_ids_.push_back(b);

    while (true) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(labeledge_.begin(), labeledge_.end(), kNoEdge);
      std::fill(bestedge_.begin(), bestedge_.end(), kNoEdge);
      for (int b = n; b < 2 * n; ++b) {
        mybestedges_[b].clear();
        has_mybest_[b] = 0;
      }
      std::fill(allowed_.begin(), allowed_.end(), 0);
      queue_.clear();

      for (int v = 0; v < n; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
      }

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          for (int w : neighbors_[v]) {
            const int bv = inblossom_[v];
            const int bw = inblossom_[w];
            if (bv == bw) continue;
            double kslack = 0;
            if (!allowed_[idx(v, w)]) {
              kslack = slack(v, w);
              if (kslack <= 0) allowed_[idx(v, w)] = allowed_[idx(w, v)] = 1;
            }
            if (allowed_[idx(v, w)]) {
              if (label_[bw] == 0) {
                assign_label(w, 2, v);
              } else if (label_[bw] == 1) {
                const int base = scan_blossom(v, w);
                if (base != -1) {
                  add_blossom(base, v, w);
                } else {
                  augment_matching(v, w);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labeledge_[w] = {v, w};
              }
            } else if (label_[bw] == 1) {
              if (bestedge_[bv] == kNoEdge || kslack < slack(bestedge_[bv])) bestedge_[bv] = {v, w};
            } else if (label_[w] == 0) {
              if (bestedge_[w] == kNoEdge || kslack < slack(bestedge_[w])) bestedge_[w] = {v, w};
            }
          }
        }
        if (augmented) break;

        int deltatype = -1;
        double delta = 0;
        EdgePair deltaedge = kNoEdge;
        int deltablossom = -1;

        if (!max_cardinality_) {
          deltatype = 1;
          delta = *std::min_element(dualvar_.begin(), dualvar_.end());
        }
        for (int v = 0; v < n; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != kNoEdge) {
            const double d = slack(bestedge_[v]);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * n; ++b) {
          if (!exists(b)) continue;
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != kNoEdge) {
            const double d = slack(bestedge_[b]) / 2.0;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = n; b < 2 * n; ++b) {
          if (!alive_[b]) continue;
          if (blossomparent_[b] == -1 && label_[b] == 2 && (deltatype == -1 || blossomdual_[b] < delta)) {
            delta = blossomdual_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }
        if (deltatype == -1) {
          deltatype = 1;
          delta = std::max(0.0, *std::min_element(dualvar_.begin(), dualvar_.end()));
        }

        for (int v = 0; v < n; ++v) {
          if (label_[inblossom_[v]] == 1)
            dualvar_[v] -= delta;
          else if (label_[inblossom_[v]] == 2)
            dualvar_[v] += delta;
        }
        for (int b = n; b < 2 * n; ++b) {
          if (!alive_[b] || blossomparent_[b] != -1) continue;
          if (label_[b] == 1)
            blossomdual_[b] += delta;
          else if (label_[b] == 2)
            blossomdual_[b] -= delta;
        }

        if (deltatype == 1) break;
        if (deltatype == 2 || deltatype == 3) {
          const auto [v, w] = deltaedge;
          allowed_[idx(v, w)] = allowed_[idx(w, v)] = 1;
          queue_.push_back(v);
        } else if (deltatype == 4) {
          expand_blossom(deltablossom, false);
        }
      }

      if (!augmented) break;
      for (int b = n; b < 2 * n; ++b) {
        if (alive_[b] && blossomparent_[b] == -1 && label_[b] == 1 && blossomdual_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }
    return mate_;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  bool exists(int b) const { return b < n_ || alive_[b]; }

  double slack(int v, int w) const { return dualvar_[v] + dualvar_[w] - 2 * weight_[idx(v, w)]; }
  double slack(EdgePair e) const { return slack(e.first, e.second); }

  template <typename F>
  void for_each_leaf(int b, F&& f) const {
    if (b < n_) {
      f(b);
      return;
    }
    for (int c : childs_[b]) for_each_leaf(c, f);
  }

  static int wrap(int j, std::size_t len) { return j < 0 ? j + static_cast<int>(len) : j; }

  void assign_label(int w, int t, int v) {
    const int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labeledge_[w] = labeledge_[b] = (v != -1) ? EdgePair{v, w} : kNoEdge;
    bestedge_[w] = bestedge_[b] = kNoEdge;
    if (t == 1) {
      for_each_leaf(b, [&](int leaf) { queue_.push_back(leaf); });
    } else if (t == 2) {
      const int base = blossombase_[b];
      assign_label(mate_[base], 1, base);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labeledge_[b] == kNoEdge) {
        v = -1;
      } else {
        v = labeledge_[b].first;
        b = inblossom_[v];
        v = labeledge_[b].first;
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int v, int w) {
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = free_ids_.back();
    free_ids_.pop_back();
    alive_[b] = 1;
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    auto& path = childs_[b];
    auto& edgs = bedges_[b];
    path.clear();
    edgs.clear();
    edgs.push_back({v, w});
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      edgs.push_back(labeledge_[bv]);
      v = labeledge_[bv].first;
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(edgs.begin(), edgs.end());
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      edgs.push_back({labeledge_[bw].second, labeledge_[bw].first});
      w = labeledge_[bw].first;
      bw = inblossom_[w];
    }
    label_[b] = 1;
    labeledge_[b] = labeledge_[bb];
    blossomdual_[b] = 0;
    for_each_leaf(b, [&](int leaf) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    });

    std::vector<EdgePair> bestedgeto(2 * n_, kNoEdge);
    std::vector<int> order;
    for (int sub : path) {
      std::vector<EdgePair> nblist;
      if (sub >= n_ && has_mybest_[sub]) {
        nblist = std::move(mybestedges_[sub]);
        mybestedges_[sub].clear();
        has_mybest_[sub] = 0;
      } else {
        for_each_leaf(sub, [&](int leaf) {
          for (int nb : neighbors_[leaf])
            if (nb != leaf) nblist.push_back({leaf, nb});
        });
      }
      for (const auto& k : nblist) {
        int i = k.first, j = k.second;
        if (inblossom_[j] == b) std::swap(i, j);
        const int bj = inblossom_[j];
        if (bj != b && label_[bj] == 1 &&
            (bestedgeto[bj] == kNoEdge || slack(i, j) < slack(bestedgeto[bj]))) {
          if (bestedgeto[bj] == kNoEdge) order.push_back(bj);
          bestedgeto[bj] = k;
        }
      }
      bestedge_[sub] = kNoEdge;
    }
    mybestedges_[b].clear();
    for (int bj : order) mybestedges_[b].push_back(bestedgeto[bj]);
    has_mybest_[b] = 1;
    EdgePair best = kNoEdge;
    double best_slack = 0;
    for (const auto& k : mybestedges_[b]) {
      const double ks = slack(k);
      if (best == kNoEdge || ks < best_slack) {
        best = k;
        best_slack = ks;
      }
    }
    bestedge_[b] = best;
  }

  void expand_blossom(int b, bool endstage) {
    for (int s : childs_[b]) {
      blossomparent_[s] = -1;
      if (s >= n_) {
        if (endstage && blossomdual_[s] == 0) {
          expand_blossom(s, endstage);
        } else {
          for_each_leaf(s, [&](int leaf) { inblossom_[leaf] = s; });
        }
      } else {
        inblossom_[s] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const auto& ch = childs_[b];
      const auto& ed = bedges_[b];
      const std::size_t len = ch.size();
      const int entrychild = inblossom_[labeledge_[b].second];
      int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
      int jstep;
      if (j & 1) {
        j -= static_cast<int>(len);
        jstep = 1;
      } else {
        jstep = -1;
      }
      auto [v, w] = labeledge_[b];
      while (j != 0) {
        int p, q;
        if (jstep == 1) {
          std::tie(p, q) = ed[wrap(j, len)];
        } else {
          std::tie(q, p) = ed[wrap(j - 1, len)];
        }
        label_[w] = 0;
        label_[q] = 0;
        assign_label(w, 2, v);
        allowed_[idx(p, q)] = allowed_[idx(q, p)] = 1;
        j += jstep;
        if (jstep == 1) {
          std::tie(v, w) = ed[wrap(j, len)];
        } else {
          std::tie(w, v) = ed[wrap(j - 1, len)];
        }
        allowed_[idx(v, w)] = allowed_[idx(w, v)] = 1;
        j += jstep;
      }
      const int bw = ch[wrap(j, len)];
      label_[w] = label_[bw] = 2;
      labeledge_[w] = labeledge_[bw] = {v, w};
      bestedge_[bw] = kNoEdge;
      j += jstep;
      while (ch[wrap(j, len)] != entrychild) {
        const int bv = ch[wrap(j, len)];
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        int labelled = -1;
        if (bv >= n_) {
          for_each_leaf(bv, [&](int leaf) {
            if (labelled == -1 && label_[leaf] != 0) labelled = leaf;
          });
        } else if (label_[bv] != 0) {
          labelled = bv;
        }
        if (labelled != -1) {
          label_[labelled] = 0;
          label_[mate_[blossombase_[bv]]] = 0;
          assign_label(labelled, 2, labeledge_[labelled].first);
        }
        j += jstep;
      }
    }
    label_[b] = 0;
    labeledge_[b] = kNoEdge;
    bestedge_[b] = kNoEdge;
    blossomparent_[b] = -1;
    blossombase_[b] = -1;
    blossomdual_[b] = 0;
    alive_[b] = 0;
    childs_[b].clear();
    bedges_[b].clear();
    mybestedges_[b].clear();
    has_mybest_[b] = 0;
    free_ids_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= n_) augment_blossom(t, v);
    auto& ch = childs_[b];
    auto& ed = bedges_[b];
    const std::size_t len = ch.size();
    const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int j = i;
    int jstep;
    if (i & 1) {
      j -= static_cast<int>(len);
      jstep = 1;
    } else {
      jstep = -1;
    }
    while (j != 0) {
      j += jstep;
      t = ch[wrap(j, len)];
      int w, x;
      if (jstep == 1) {
        std::tie(w, x) = ed[wrap(j, len)];
      } else {
        std::tie(x, w) = ed[wrap(j - 1, len)];
      }
      if (t >= n_) augment_blossom(t, w);
      j += jstep;
      t = ch[wrap(j, len)];
      if (t >= n_) augment_blossom(t, x);
      mate_[w] = x;
      mate_[x] = w;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ed.begin(), ed.begin() + i, ed.end());
    blossombase_[b] = blossombase_[ch[0]];
  }

  void augment_matching(int v, int w) {
    for (auto [s, j] : {std::pair{v, w}, std::pair{w, v}}) {
      while (true) {
        const int bs = inblossom_[s];
        if (bs >= n_) augment_blossom(bs, s);
        mate_[s] = j;
        if (labeledge_[bs] == kNoEdge) break;
        const int t = labeledge_[bs].first;
        const int bt = inblossom_[t];
        std::tie(s, j) = labeledge_[bt];
        if (bt >= n_) augment_blossom(bt, j);
        mate_[j] = s;
      }
    }
  }

  int n_;
  bool max_cardinality_;
  std::vector<double> weight_;
  std::vector<char> has_;
  std::vector<std::vector<int>> neighbors_;

  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<EdgePair> labeledge_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<int> blossombase_;
  std::vector<char> alive_;
  std::vector<std::vector<int>> childs_;
  std::vector<std::vector<EdgePair>> bedges_;
  std::vector<std::vector<EdgePair>> mybestedges_;
  std::vector<char> has_mybest_;
  std::vector<EdgePair> bestedge_;
  std::vector<double> dualvar_;
  std::vector<double> blossomdual_;
  std::vector<char> allowed_;
  std::vector<int> queue_;
  std::vector<int> free_ids_;
};

}  // namespace detail

// Maximum-weight matching; with `max_cardinality` the maximum weight among
// maximum-cardinality matchings. Returns mate[v] or -1.
inline std::vector<int> max_weight_matching(std::size_t n, std::span<const GeneralEdge> edges,
                                            bool max_cardinality = false) {
  std::vector<double> w;
  w.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.a >= n || e.b >= n) throw DomainError("matching edge endpoint out of range");
    w.push_back(e.cost);
  }
  return detail::BlossomMatcher(n, edges, w, max_cardinality).solve();
}

// Minimum-cost perfect matching on a general graph whose edges carry
// non-negative costs. Returns (a, b) pairs with a < b sorted, or nullopt when
// no perfect matching exists.
inline std::optional<std::vector<std::pair<std::size_t, std::size_t>>> min_cost_perfect_matching(
    std::size_t n, std::span<const GeneralEdge> edges) {
  if (n % 2) return std::nullopt;
  if (n == 0) return std::vector<std::pair<std::size_t, std::size_t>>{};
  double max_cost = 0;
  for (const auto& e : edges) {
    if (e.a >= n || e.b >= n) throw DomainError("matching edge endpoint out of range");
    if (!(e.cost >= 0)) throw InputError("matching costs must be non-negative");
    max_cost = std::max(max_cost, e.cost);
  }
  // Maximising sum(K - c) over maximum-cardinality matchings minimises sum(c).
  std::vector<double> w;
  w.reserve(edges.size());
  for (const auto& e : edges) w.push_back(max_cost + 1.0 - e.cost);
  const auto mate = detail::BlossomMatcher(n, edges, w, true).solve();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t v = 0; v < n; ++v) {
    if (mate[v] < 0) return std::nullopt;
    if (v < static_cast<std::size_t>(mate[v])) pairs.emplace_back(v, static_cast<std::size_t>(mate[v]));
  }
  return pairs;
}

}  // namespace bidir
