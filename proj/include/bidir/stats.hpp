#pragma once

// Imbalance statistics and the greedy-versus-optimal matching comparison,
// written as TSV rows.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include "bidir/bigraph.hpp"
#include "bidir/cpp_solver.hpp"
#include "bidir/matching.hpp"

namespace bidir {

struct StatsRow {
  std::optional<std::uint64_t> reads;
  std::optional<unsigned> k;
  std::size_t nodes = 0;
  std::size_t v_plus = 0;
  std::size_t v_minus = 0;
  std::uint64_t P = 0;  // sum of positive imbalances
  std::uint64_t Q = 0;  // sum of negative imbalances, as a magnitude
  std::uint64_t p = 0;  // max(P, Q)

  double percent() const noexcept { return nodes ? static_cast<double>(p) * 100.0 / static_cast<double>(nodes) : 0.0; }
};

inline StatsRow compute_stats(const BiGraph& g, std::optional<std::uint64_t> reads = {}, std::optional<unsigned> k = {}) {
  StatsRow r;
  r.reads = reads;
  r.k = k;
  r.nodes = g.vertex_count();
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    const auto imb = degrees(g, x).imbalance();
    if (imb > 0) {
      ++r.v_plus;
      r.P += static_cast<std::uint64_t>(imb);
    } else if (imb < 0) {
      ++r.v_minus;
      r.Q += static_cast<std::uint64_t>(-imb);
    }
  }
  r.p = std::max(r.P, r.Q);
  return r;
}

namespace detail {

inline std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

template <typename T>
std::string or_na(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string("NA");
}

}  // namespace detail

inline void write_stats_header(std::ostream& out) {
  out << "reads\tk\tnodes\tV+\tV-\tP\tQ\tp\tp_percent\n";
}

inline void write_stats_row(std::ostream& out, const StatsRow& r) {
  out << detail::or_na(r.reads) << '\t' << detail::or_na(r.k) << '\t' << r.nodes << '\t' << r.v_plus << '\t'
      << r.v_minus << '\t' << r.P << '\t' << r.Q << '\t' << r.p << '\t' << detail::fixed(r.percent(), 3) << '\n';
}

// Size-based proxies: a matching of size m leaves p - m units for
// hypothetical edges. The ratio is 1 when the optimal proxy is 0.
struct ApproxRow {
  std::uint64_t p = 0;
  std::uint64_t m_opt = 0;
  std::uint64_t m_gdy = 0;
  double opt_cost = 0;
  double gdy_cost = 0;

  std::uint64_t opt_proxy() const noexcept { return p - m_opt; }
  std::uint64_t gdy_proxy() const noexcept { return p - m_gdy; }
  double ratio() const noexcept {
    return opt_proxy() == 0 ? 1.0 : static_cast<double>(gdy_proxy()) / static_cast<double>(opt_proxy());
  }
};

inline ApproxRow compare_matchings(const BalancingBipartiteGraph& b) {
  const CostMatrix c = b.replica_costs();
  const Matching opt = max_match_min_cost(c);
  const Matching gdy = greedy_match(c);
  ApproxRow r;
  r.p = std::max<std::uint64_t>(b.P.size(), b.Q.size());
  r.m_opt = opt.size();
  r.m_gdy = gdy.size();
  r.opt_cost = opt.total_cost;
  r.gdy_cost = gdy.total_cost;
  return r;
}

inline void write_approx_header(std::ostream& out) {
  out << "p\tM_opt\topt_proxy\tM_gdy\tgdy_proxy\tratio\n";
}

inline void write_approx_row(std::ostream& out, const ApproxRow& r) {
  out << r.p << '\t' << r.m_opt << '\t' << r.opt_proxy() << '\t' << r.m_gdy << '\t' << r.gdy_proxy() << '\t'
      << detail::fixed(r.ratio(), 4) << '\n';
}

}  // namespace bidir
