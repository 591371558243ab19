#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// into the library's solvers: distances come from Floyd-Warshall, transport
// from enumerating spanning-tree bases of the transportation polytope, aperiodicity from
// matrix powers.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "ricci/distribution.hpp"
#include "ricci/graph.hpp"

namespace oracle {

using ricci::Rational;
using ricci::StateGraph;
using ricci::StateIndex;

inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

inline std::vector<std::vector<int>> floyd_warshall(const StateGraph& g) {
  const std::size_t n = g.state_count();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (std::size_t x = 0; x < n; ++x) {
    d[x][x] = 0;
    for (StateIndex y : g.neighbors(static_cast<StateIndex>(x))) d[x][y] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

// The optimum of a transportation problem is attained at a vertex, and every
// vertex is the unique solution supported on some spanning tree of the
// row/column bipartite graph. Enumerate all (rows + cols - 1)-cell subsets,
// solve each by peeling leaves, keep the feasible ones. Fine for supports up
// to 4 x 4.
inline Rational transport_by_vertices(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                      const std::vector<std::vector<int>>& cost) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  const std::size_t cells = m * n;
  const int basis = static_cast<int>(m + n - 1);
  std::optional<Rational> best;
  for (std::uint32_t subset = 0; subset < (std::uint32_t{1} << cells); ++subset) {
    if (std::popcount(subset) != basis) continue;
    std::vector<Rational> ra = a;
    std::vector<Rational> rb = b;
    std::uint32_t left = subset;
    Rational total(0);
    bool ok = true;
    while (left != 0 && ok) {
      bool peeled = false;
      for (std::size_t i = 0; i < m && !peeled; ++i) {
        int count = 0;
        std::size_t only = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (left >> (i * n + j) & 1) ++count, only = j;
        if (count != 1) continue;
        const Rational flow = ra[i];
        ok = sgn(flow) >= 0;
        rb[only] -= flow;
        ra[i] = 0;
        total += flow * cost[i][only];
        left &= ~(std::uint32_t{1} << (i * n + only));
        peeled = true;
      }
      for (std::size_t j = 0; j < n && !peeled; ++j) {
        int count = 0;
        std::size_t only = 0;
        for (std::size_t i = 0; i < m; ++i)
          if (left >> (i * n + j) & 1) ++count, only = i;
        if (count != 1) continue;
        const Rational flow = rb[j];
        ok = sgn(flow) >= 0;
        ra[only] -= flow;
        rb[j] = 0;
        total += flow * cost[only][j];
        left &= ~(std::uint32_t{1} << (only * n + j));
        peeled = true;
      }
      if (!peeled) ok = false;  // a cycle: not a tree
    }
    for (const auto& r : ra) ok = ok && sgn(r) == 0;
    for (const auto& r : rb) ok = ok && sgn(r) == 0;
    if (ok && (!best || total < *best)) best = total;
  }
  return *best;
}

inline Rational wasserstein(const ricci::SparseDistribution<Rational>& m1, const ricci::SparseDistribution<Rational>& m2,
                            const StateGraph& g) {
  const auto d = floyd_warshall(g);
  std::vector<Rational> a;
  std::vector<Rational> b;
  for (const auto& [x, w] : m1.entries()) a.push_back(w);
  for (const auto& [y, w] : m2.entries()) b.push_back(w);
  std::vector<std::vector<int>> cost(a.size(), std::vector<int>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) cost[i][j] = d[m1.entries()[i].first][m2.entries()[j].first];
  return transport_by_vertices(a, b, cost);
}

// A nonnegative matrix is primitive (irreducible and aperiodic) iff its
// ((n-1)^2 + 1)-th power is entrywise positive (Wielandt).
inline bool primitive(const std::vector<std::vector<bool>>& support) {
  const std::size_t n = support.size();
  std::vector<std::vector<bool>> power = support;
  const std::size_t steps = (n - 1) * (n - 1) + 1;
  for (std::size_t s = 1; s < steps; ++s) {
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (power[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (support[k][j]) next[i][j] = true;
    power = std::move(next);
  }
  for (const auto& row : power)
    for (bool v : row)
      if (!v) return false;
  return true;
}

}  // namespace oracle
