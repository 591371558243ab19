#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ricci {

using StateIndex = std::uint32_t;
inline constexpr int kUnreachable = -1;

class DistanceTable;

/// Finite undirected graph on states 0..n-1 with unit edge lengths. Loops are
/// recorded separately from the neighbor lists: they matter for the
/// closed-neighborhood support rule but never for distances.
class StateGraph {
 public:
  StateGraph() = default;
  explicit StateGraph(std::size_t state_count);

  std::size_t state_count() const noexcept { return adjacency_.size(); }

  /// Adds the unordered edge {u, v}; u == v records a loop. Duplicate edges
  /// are ignored.
  void add_edge(StateIndex u, StateIndex v);

  /// Open neighborhood Γ(x), sorted.
  std::span<const StateIndex> neighbors(StateIndex x) const;
  std::size_t degree(StateIndex x) const { return neighbors(x).size(); }
  bool has_loop(StateIndex x) const;
  bool adjacent(StateIndex x, StateIndex y) const;
  /// y ∈ N(x) = Γ(x) ∪ {x}.
  bool in_closed_neighborhood(StateIndex x, StateIndex y) const;

  std::size_t edge_count() const noexcept { return edge_count_; }
  /// Non-loop edges as (x, y) with x < y, lexicographically sorted.
  std::vector<std::pair<StateIndex, StateIndex>> edges() const;

  void set_labels(std::vector<std::string> labels);
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Hop distances from source (kUnreachable where no path exists).
  std::vector<int> bfs_distances(StateIndex source) const;

  bool connected() const;
  bool bipartite() const;

  /// Builds the all-pairs table (allowed up to kMaxCachedStates states) so
  /// later distance lookups are O(1). The table is immutable once built.
  void build_distance_cache();
  const DistanceTable* distance_cache() const noexcept { return cache_.get(); }

  static constexpr std::size_t kMaxCachedStates = 5000;

 private:
  void check_index(StateIndex x) const;

  std::vector<std::vector<StateIndex>> adjacency_;
  std::vector<bool> loops_;
  std::vector<std::string> labels_;
  std::size_t edge_count_ = 0;
  std::shared_ptr<const DistanceTable> cache_;
};

class DistanceTable {
 public:
  explicit DistanceTable(const StateGraph& g);
  int operator()(StateIndex x, StateIndex y) const { return table_[x * n_ + y]; }
  std::span<const int> row(StateIndex x) const { return {table_.data() + x * n_, n_}; }

 private:
  std::size_t n_;
  std::vector<int> table_;
};

/// Distance between x and y; throws Disconnected when no path exists.
int shortest_path_distance(const StateGraph& g, StateIndex x, StateIndex y);

/// Max shortest-path distance over all pairs; throws Disconnected.
int diameter(const StateGraph& g);

/// Common graphs used by tests, benchmarks and the CLI.
StateGraph path_graph(std::size_t n);
StateGraph cycle_graph(std::size_t n);
StateGraph complete_graph(std::size_t n);
StateGraph petersen_graph();

}  // namespace ricci
