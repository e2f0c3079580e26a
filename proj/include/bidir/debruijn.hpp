#pragma once

// Bi-directed de Bruijn graphs over k-molecules. Every (k+1)-mer of the reads
// and of their reverse complements yields one edge between the molecules of
// its prefix and suffix k-mers; z and rc(z) are the same physical edge, so
// only canonical (k+1)-mers are processed.

#include <algorithm>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bidir/bigraph.hpp"
#include "bidir/dna.hpp"
#include "bidir/walk.hpp"

namespace bidir {

inline constexpr unsigned kMinK = 2;
inline constexpr unsigned kMaxK = 31;

struct BuildReport {
  std::size_t reads = 0;
  std::size_t short_reads = 0;     // shorter than k, skipped
  std::size_t rejected_reads = 0;  // non-ACGT characters
};

// Vertex labels are ranks of the positive strands in lexicographic order, so
// label i names strands[i].
struct DeBruijnGraph {
  BiGraph graph;
  unsigned k = 0;
  std::vector<std::string> strands;
  BuildReport report;

  const std::string& positive(Vertex x) const { return strands.at(graph.label(x)); }
};

inline void check_k(unsigned k) {
  if (k < kMinK || k > kMaxK) {
    throw DomainError("k must lie in [" + std::to_string(kMinK) + ", " + std::to_string(kMaxK) + "], got " +
                      std::to_string(k));
  }
}

inline DeBruijnGraph build_graph(std::span<const std::string> reads, unsigned k) {
  check_k(k);
  DeBruijnGraph out;
  out.k = k;
  std::vector<PackedKmer> nodes;
  std::vector<PackedKmer> links;
  const PackedKmer mask = kmer_mask(k);
  const PackedKmer link_mask = kmer_mask(k + 1);
  for (const auto& read : reads) {
    ++out.report.reads;
    if (!is_dna(read)) {
      ++out.report.rejected_reads;
      continue;
    }
    if (read.size() < k) {
      ++out.report.short_reads;
      continue;
    }
    PackedKmer code = 0;
    for (std::size_t i = 0; i < read.size(); ++i) {
      code = ((code << 2) | detail::kBaseCode[static_cast<unsigned char>(read[i])]) & link_mask;
      if (i + 1 >= k) nodes.push_back(canonical(code & mask, k));
      if (i + 1 >= k + 1) links.push_back(canonical(code, k + 1));
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());

  auto rank = [&](PackedKmer canon) {
    return static_cast<Label>(std::lower_bound(nodes.begin(), nodes.end(), canon) - nodes.begin());
  };

  GraphBuilder b;
  out.strands.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    b.add_vertex(i);
    out.strands.push_back(unpack(nodes[i], k));
  }
  constexpr auto R = Orientation::right;
  constexpr auto L = Orientation::left;
  for (const PackedKmer z : links) {
    const PackedKmer x = z >> 2;
    const PackedKmer y = z & mask;
    const PackedKmer cx = canonical(x, k);
    const PackedKmer cy = canonical(y, k);
    const bool x_pos = x == cx;
    const bool y_pos = y == cy;
    if (x_pos && y_pos) {
      b.add_edge(rank(cx), rank(cy), R, R);
    } else if (x_pos) {
      b.add_edge(rank(cx), rank(cy), R, L);
    } else if (y_pos) {
      b.add_edge(rank(cx), rank(cy), L, R);
    } else {
      b.add_edge(rank(cy), rank(cx), R, R);
    }
  }
  out.graph = b.build();
  return out;
}

inline DeBruijnGraph build_graph(std::initializer_list<std::string> reads, unsigned k) {
  const std::vector<std::string> v(reads);
  return build_graph(std::span<const std::string>(v), k);
}

// Spells a valid walk: k bases for the first vertex (positive strand when it
// is left through OUT), then one base per step (last base of the positive
// strand when entered through IN, of the negative strand otherwise).
inline std::string spell_walk(const DeBruijnGraph& dbg, const BiWalk& w) {
  const BiGraph& g = dbg.graph;
  if (!validate_walk(g, w)) throw DomainError("cannot spell an invalid bi-directed walk");
  const std::string& first = dbg.positive(w.start);
  std::string out = start_spin(g, w) == Spin::out ? first : reverse_complement(first);
  out.reserve(dbg.k + w.size());
  for (const auto& s : w.steps) {
    const std::string& pos = dbg.positive(arrival_vertex(g, s));
    out.push_back(arrival_spin(g, s) == Spin::in ? pos.back() : complement(pos.front()));
  }
  return out;
}

}  // namespace bidir
