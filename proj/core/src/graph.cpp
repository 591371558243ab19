#include "ricci/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "ricci/error.hpp"

namespace ricci {

StateGraph::StateGraph(std::size_t state_count)
    : adjacency_(state_count), loops_(state_count, false) {}

void StateGraph::check_index(StateIndex x) const {
  if (x >= adjacency_.size()) {
    throw Error(ErrorKind::InvalidInput,
                "state " + std::to_string(x) + " out of range (n=" + std::to_string(adjacency_.size()) + ")");
  }
}

void StateGraph::add_edge(StateIndex u, StateIndex v) {
  check_index(u);
  check_index(v);
  cache_.reset();
  if (u == v) {
    loops_[u] = true;
    return;
  }
  auto& nu = adjacency_[u];
  const auto at = std::lower_bound(nu.begin(), nu.end(), v);
  if (at != nu.end() && *at == v) return;
  nu.insert(at, v);
  auto& nv = adjacency_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++edge_count_;
}

std::span<const StateIndex> StateGraph::neighbors(StateIndex x) const {
  check_index(x);
  return adjacency_[x];
}

bool StateGraph::has_loop(StateIndex x) const {
  check_index(x);
  return loops_[x];
}

bool StateGraph::adjacent(StateIndex x, StateIndex y) const {
  const auto nx = neighbors(x);
  return std::binary_search(nx.begin(), nx.end(), y);
}

bool StateGraph::in_closed_neighborhood(StateIndex x, StateIndex y) const {
  return x == y || adjacent(x, y);
}

std::vector<std::pair<StateIndex, StateIndex>> StateGraph::edges() const {
  std::vector<std::pair<StateIndex, StateIndex>> out;
  out.reserve(edge_count_);
  for (StateIndex x = 0; x < adjacency_.size(); ++x) {
    for (StateIndex y : neighbors(x)) {
      if (x < y) out.emplace_back(x, y);
    }
  }
  return out;
}

void StateGraph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != adjacency_.size()) {
    throw Error(ErrorKind::InvalidInput, "label count does not match state count");
  }
  labels_ = std::move(labels);
}

std::vector<int> StateGraph::bfs_distances(StateIndex source) const {
  check_index(source);
  std::vector<int> dist(adjacency_.size(), kUnreachable);
  std::deque<StateIndex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const StateIndex u = queue.front();
    queue.pop_front();
    for (StateIndex v : neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

bool StateGraph::connected() const {
  if (adjacency_.empty()) return true;
  const auto dist = bfs_distances(0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d == kUnreachable; });
}

bool StateGraph::bipartite() const {
  if (std::any_of(loops_.begin(), loops_.end(), [](bool b) { return b; })) return false;
  std::vector<int> side(adjacency_.size(), -1);
  for (StateIndex root = 0; root < adjacency_.size(); ++root) {
    if (side[root] != -1) continue;
    side[root] = 0;
    std::deque<StateIndex> queue{root};
    while (!queue.empty()) {
      const StateIndex u = queue.front();
      queue.pop_front();
      for (StateIndex v : neighbors(u)) {
        if (side[v] == -1) {
          side[v] = 1 - side[u];
          queue.push_back(v);
        } else if (side[v] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

void StateGraph::build_distance_cache() {
  if (cache_) return;
  if (adjacency_.size() > kMaxCachedStates) {
    throw Error(ErrorKind::TooLarge, "distance cache limited to " + std::to_string(kMaxCachedStates) + " states");
  }
  cache_ = std::make_shared<const DistanceTable>(*this);
}

DistanceTable::DistanceTable(const StateGraph& g) : n_(g.state_count()), table_(n_ * n_) {
  for (StateIndex x = 0; x < n_; ++x) {
    const auto row = g.bfs_distances(x);
    std::copy(row.begin(), row.end(), table_.begin() + static_cast<std::ptrdiff_t>(x * n_));
  }
}

int shortest_path_distance(const StateGraph& g, StateIndex x, StateIndex y) {
  int d;
  if (const auto* table = g.distance_cache()) {
    if (x >= g.state_count() || y >= g.state_count()) {
      throw Error(ErrorKind::InvalidInput, "state out of range");
    }
    d = (*table)(x, y);
  } else {
    d = g.bfs_distances(x).at(y);
  }
  if (d == kUnreachable) {
    throw Error(ErrorKind::Disconnected, "no path between " + std::to_string(x) + " and " + std::to_string(y));
  }
  return d;
}

int diameter(const StateGraph& g) {
  int best = 0;
  for (StateIndex x = 0; x < g.state_count(); ++x) {
    const auto row = g.distance_cache() ? std::vector<int>(g.distance_cache()->row(x).begin(),
                                                           g.distance_cache()->row(x).end())
                                        : g.bfs_distances(x);
    for (StateIndex y = 0; y < row.size(); ++y) {
      if (row[y] == kUnreachable) {
        throw Error(ErrorKind::Disconnected,
                    "graph is disconnected (" + std::to_string(x) + " cannot reach " + std::to_string(y) + ")");
      }
      best = std::max(best, row[y]);
    }
  }
  return best;
}

StateGraph path_graph(std::size_t n) {
  StateGraph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(static_cast<StateIndex>(i), static_cast<StateIndex>(i + 1));
  return g;
}

StateGraph cycle_graph(std::size_t n) {
  StateGraph g = path_graph(n);
  if (n >= 3) g.add_edge(static_cast<StateIndex>(n - 1), 0);
  return g;
}

StateGraph complete_graph(std::size_t n) {
  StateGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(static_cast<StateIndex>(i), static_cast<StateIndex>(j));
  }
  return g;
}

StateGraph petersen_graph() {
  StateGraph g(10);
  for (StateIndex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(i + 5, (i + 2) % 5 + 5);
  }
  return g;
}

}  // namespace ricci
