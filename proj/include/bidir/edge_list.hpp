#pragma once

// Text interchange format. One edge per line:
//
//   u v o1 o2 weight multiplicity      o1, o2 in {">", "<"}
//
// A line holding a single id declares a vertex without edges. '#' starts a
// comment; a leading "# reads=N k=K" comment carries build metadata. The
// companion vertex table has lines "id<TAB>positive-strand".

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "bidir/bigraph.hpp"
#include "bidir/debruijn.hpp"
#include "bidir/dna.hpp"

namespace bidir {

struct EdgeListMeta {
  std::optional<std::uint64_t> reads;
  std::optional<unsigned> k;
};

struct EdgeListFile {
  BiGraph graph;
  EdgeListMeta meta;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line_no, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw InputError("line " + std::to_string(line_no) + ": bad " + what + " '" + std::string(tok) + "'");
  }
  return value;
}

inline std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

inline void parse_meta(std::string_view comment, EdgeListMeta& meta, std::size_t line_no) {
  for (auto tok : split_ws(comment)) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) continue;
    const auto key = tok.substr(0, eq);
    const auto val = tok.substr(eq + 1);
    if (key == "reads") meta.reads = parse_number<std::uint64_t>(val, line_no, "read count");
    if (key == "k") meta.k = parse_number<unsigned>(val, line_no, "k");
  }
}

}  // namespace detail

inline EdgeListFile read_edge_list(std::istream& in) {
  EdgeListFile out;
  GraphBuilder b;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      detail::parse_meta(view.substr(hash + 1), out.meta, line_no);
      view = view.substr(0, hash);
    }
    const auto tok = detail::split_ws(view);
    if (tok.empty()) continue;
    if (tok.size() == 1) {
      b.add_vertex(detail::parse_number<Label>(tok[0], line_no, "vertex id"));
      continue;
    }
    if (tok.size() != 6) {
      throw InputError("line " + std::to_string(line_no) + ": expected 'u v o1 o2 weight multiplicity', got " +
                       std::to_string(tok.size()) + " fields");
    }
    const auto u = detail::parse_number<Label>(tok[0], line_no, "vertex id");
    const auto v = detail::parse_number<Label>(tok[1], line_no, "vertex id");
    const auto weight = detail::parse_number<double>(tok[4], line_no, "weight");
    const auto mult = detail::parse_number<std::uint32_t>(tok[5], line_no, "multiplicity");
    try {
      b.add_edge(u, v, parse_orientation(tok[2]), parse_orientation(tok[3]), weight, mult);
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  out.graph = b.build();
  return out;
}

inline EdgeListFile parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const BiGraph& g, const EdgeListMeta& meta = {}) {
  if (meta.reads || meta.k) {
    out << '#';
    if (meta.reads) out << " reads=" << *meta.reads;
    if (meta.k) out << " k=" << *meta.k;
    out << '\n';
  }
  std::vector<char> touched(g.vertex_count(), 0);
  for (const auto& e : g.edges()) touched[e.u] = touched[e.v] = 1;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (!touched[x]) out << g.label(x) << '\n';
  }
  for (const auto& e : g.edges()) {
    out << g.label(e.u) << ' ' << g.label(e.v) << ' ' << symbol(e.o1) << ' ' << symbol(e.o2) << ' '
        << detail::format_double(e.weight) << ' ' << e.multiplicity << '\n';
  }
}

inline void write_vertex_table(std::ostream& out, const DeBruijnGraph& dbg) {
  for (Vertex x = 0; x < dbg.graph.vertex_count(); ++x) {
    out << dbg.graph.label(x) << '\t' << dbg.positive(x) << '\n';
  }
}

// Attaches a vertex table to a loaded graph. Every graph vertex needs a row,
// all strands must share one length k, and each must be canonical.
inline DeBruijnGraph attach_vertex_table(BiGraph g, std::istream& in) {
  std::map<Label, std::string> rows;
  std::string line;
  std::size_t line_no = 0;
  unsigned k = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (tok.size() != 2) throw InputError("vertex table line " + std::to_string(line_no) + ": expected 'id strand'");
    const auto id = detail::parse_number<Label>(tok[0], line_no, "vertex id");
    const std::string strand(tok[1]);
    if (!is_dna(strand) || canonical(strand).positive != strand) {
      throw InputError("vertex table line " + std::to_string(line_no) + ": '" + strand +
                       "' is not a canonical k-mer");
    }
    if (k == 0) k = static_cast<unsigned>(strand.size());
    if (strand.size() != k) throw InputError("vertex table line " + std::to_string(line_no) + ": k-mer length differs");
    rows[id] = strand;
  }
  DeBruijnGraph dbg;
  dbg.k = k;
  Label max_label = 0;
  for (Label l : g.labels()) max_label = std::max(max_label, l);
  dbg.strands.assign(g.empty() ? 0 : max_label + 1, std::string());
  for (Label l : g.labels()) {
    auto it = rows.find(l);
    if (it == rows.end()) throw InputError("vertex table has no row for vertex " + std::to_string(l));
    dbg.strands[l] = it->second;
  }
  dbg.graph = std::move(g);
  return dbg;
}

}  // namespace bidir
