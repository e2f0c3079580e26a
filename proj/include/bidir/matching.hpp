#pragma once

// Bipartite matching over a cost matrix whose +inf entries mark absent edges:
// O(n^3) Hungarian method for minimum-cost perfect matchings, a maximum
// cardinality / minimum cost variant, and the sort-based greedy heuristic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <ostream>
#include <tuple>
#include <utility>
#include <vector>

#include "bidir/error.hpp"

namespace bidir {

inline constexpr double kAbsent = std::numeric_limits<double>::infinity();

class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = kAbsent)
      : rows_(rows), cols_(cols), cost_(rows * cols, fill) {
    check_value(fill);
  }
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DomainError("ragged cost matrix");
      for (double c : r) {
        check_value(c);
        cost_.push_back(c);
      }
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const noexcept { return cost_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw DomainError("cost matrix index out of range");
    return (*this)(r, c);
  }
  void set(std::size_t r, std::size_t c, double v) {
    if (r >= rows_ || c >= cols_) throw DomainError("cost matrix index out of range");
    check_value(v);
    cost_[r * cols_ + c] = v;
  }
  bool finite(std::size_t r, std::size_t c) const noexcept { return (*this)(r, c) != kAbsent; }

  double finite_sum() const noexcept {
    double s = 0;
    for (double c : cost_)
      if (c != kAbsent) s += c;
    return s;
  }

 private:
  static void check_value(double v) {
    if (std::isnan(v) || v < 0) throw InputError("matching costs must be non-negative");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> cost_;
};

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (row, col), sorted by row
  double total_cost = 0;

  std::size_t size() const noexcept { return pairs.size(); }
};

namespace detail {

// Absent entries are treated as a sentinel larger than any sum of finite
// costs. Rather than picking a numeric sentinel, costs are compared
// lexicographically as (number of sentinels, finite cost); the Hungarian
// method only needs an ordered abelian group.
struct LexCost {
  std::int64_t sentinels = 0;
  double cost = 0;

  friend LexCost operator+(LexCost a, LexCost b) { return {a.sentinels + b.sentinels, a.cost + b.cost}; }
  friend LexCost operator-(LexCost a, LexCost b) { return {a.sentinels - b.sentinels, a.cost - b.cost}; }
  LexCost& operator+=(LexCost b) { return *this = *this + b; }
  LexCost& operator-=(LexCost b) { return *this = *this - b; }
  friend bool operator<(LexCost a, LexCost b) {
    return std::tie(a.sentinels, a.cost) < std::tie(b.sentinels, b.cost);
  }
};

// Minimum-cost assignment of every row of an n x n matrix (n = max(rows,
// cols); missing cells are sentinels). Returns the column assigned to each
// row.
inline std::vector<std::size_t> hungarian_assign(const CostMatrix& c) {
  const std::size_t n = std::max(c.rows(), c.cols());
  auto cell = [&](std::size_t r, std::size_t col) {
    if (r < c.rows() && col < c.cols() && c.finite(r, col)) return LexCost{0, c(r, col)};
    return LexCost{1, 0};
  };
  const LexCost inf{std::numeric_limits<std::int64_t>::max() / 4, 0};
  // 1-based potentials; column 0 is the virtual start column.
  std::vector<LexCost> u(n + 1), v(n + 1), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      LexCost delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const LexCost cur = cell(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

inline Matching finite_pairs(const CostMatrix& c, const std::vector<std::size_t>& row_to_col) {
  Matching m;
  for (std::size_t r = 0; r < c.rows(); ++r) {
    const std::size_t col = row_to_col[r];
    if (col < c.cols() && c.finite(r, col)) {
      m.pairs.emplace_back(r, col);
      m.total_cost += c(r, col);
    }
  }
  return m;
}

}  // namespace detail

// Minimum-cost perfect matching over finite entries, or nullopt when none
// exists (including every non-square matrix).
inline std::optional<Matching> hungarian_min_perfect(const CostMatrix& c) {
  if (!c.square()) return std::nullopt;
  Matching m = detail::finite_pairs(c, detail::hungarian_assign(c));
  if (m.size() != c.rows()) return std::nullopt;
  return m;
}

// Among maximum-cardinality matchings over finite entries, one of minimum
// total cost.
inline Matching max_match_min_cost(const CostMatrix& c) {
  return detail::finite_pairs(c, detail::hungarian_assign(c));
}

// Scans finite entries by (cost, row, col) and keeps each pair whose row and
// column are still free. The result is maximal but not necessarily maximum.
inline Matching greedy_match(const CostMatrix& c) {
  std::vector<std::tuple<double, std::size_t, std::size_t>> entries;
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t col = 0; col < c.cols(); ++col)
      if (c.finite(r, col)) entries.emplace_back(c(r, col), r, col);
  std::sort(entries.begin(), entries.end());
  std::vector<char> row_used(c.rows()), col_used(c.cols());
  Matching m;
  for (const auto& [cost, r, col] : entries) {
    if (row_used[r] || col_used[col]) continue;
    row_used[r] = col_used[col] = 1;
    m.pairs.emplace_back(r, col);
    m.total_cost += cost;
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

// Debug dump: one row per line, tab separated, "inf" for absent entries.
inline void write_tsv(std::ostream& os, const CostMatrix& c) {
  for (std::size_t r = 0; r < c.rows(); ++r) {
    for (std::size_t col = 0; col < c.cols(); ++col) {
      if (col) os << '\t';
      if (c.finite(r, col))
        os << c(r, col);
      else
        os << "inf";
    }
    os << '\n';
  }
}

}  // namespace bidir
