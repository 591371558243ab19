#pragma once

#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "ricci/error.hpp"
#include "ricci/scalar.hpp"

namespace ricci {

/// Successive-shortest-paths min-cost flow with integer arc costs and
/// capacities/flows in T. Shortest paths use queue-based Bellman-Ford since
/// residual arcs carry negative costs; networks here are tiny.
template <Scalar T>
class MinCostFlow {
 public:
  struct Arc {
    std::size_t to;
    long cost;
    std::optional<T> capacity;  // nullopt = uncapacitated
    T flow{0};
  };

  explicit MinCostFlow(std::size_t node_count) : out_(node_count), supply_(node_count, T(0)) {}

  std::size_t node_count() const noexcept { return out_.size(); }

  /// Returns the arc id; its reverse residual arc is id ^ 1.
  std::size_t add_arc(std::size_t from, std::size_t to, long cost, std::optional<T> capacity = std::nullopt) {
    const std::size_t id = arcs_.size();
    arcs_.push_back({to, cost, capacity, T(0)});
    arcs_.push_back({from, -cost, T(0), T(0)});
    out_[from].push_back(id);
    out_[to].push_back(id + 1);
    return id;
  }

  void set_supply(std::size_t node, const T& supply) { supply_.at(node) = supply; }

  const Arc& arc(std::size_t id) const { return arcs_.at(id); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }

  /// Routes all supply (positive) to demand (negative). Throws Disconnected
  /// when some supply cannot reach any remaining demand.
  T solve() {
    const std::size_t n = out_.size();
    const std::size_t source = n;
    const std::size_t sink = n + 1;
    out_.resize(n + 2);
    std::vector<std::size_t> feeder;
    for (std::size_t v = 0; v < n; ++v) {
      if (is_positive(supply_[v])) {
        feeder.push_back(add_arc(source, v, 0, supply_[v]));
      } else if (is_positive(T(-supply_[v]))) {
        feeder.push_back(add_arc(v, sink, 0, T(-supply_[v])));
      }
    }

    T cost(0);
    std::vector<long> dist;
    std::vector<std::size_t> via;
    while (shortest_path(source, sink, dist, via)) {
      T bottleneck(0);
      bool unbounded = true;
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        const std::optional<T> r = residual(via[v]);
        if (!r) continue;  // uncapacitated arc
        if (unbounded || *r < bottleneck) bottleneck = *r;
        unbounded = false;
      }
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].flow += bottleneck;
        arcs_[via[v] ^ 1].flow -= bottleneck;
      }
      cost += bottleneck * T(dist[sink]);
    }
    for (std::size_t id : feeder) {
      if (residual(id) && is_positive(*residual(id))) {
        // Float mode: leftovers at rounding level are accepted.
        if constexpr (ScalarTraits<T>::exact) {
          throw Error(ErrorKind::Disconnected, "supply cannot reach demand");
        } else if (*residual(id) > 1e-9) {
          throw Error(ErrorKind::Disconnected, "supply cannot reach demand");
        }
      }
    }
    // Drop the super source/sink so potentials refer to the real network.
    for (std::size_t v = 0; v < n; ++v) {
      std::erase_if(out_[v], [&](std::size_t id) { return arcs_[id].to >= n; });
    }
    out_.resize(n);
    return cost;
  }

  /// Node potentials π with reduced costs cost(a) + π(from) - π(to) >= 0 on
  /// every residual arc (Bellman-Ford from a virtual root joined to all
  /// nodes at cost 0). Integer-valued since arc costs are.
  std::vector<long> potentials() const {
    const std::size_t n = out_.size();
    std::vector<long> pi(n, 0);
    for (std::size_t round = 0; round <= n; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t id : out_[u]) {
          const auto r = residual(id);
          if (r && !is_positive(*r)) continue;
          const std::size_t v = arcs_[id].to;
          if (pi[u] + arcs_[id].cost < pi[v]) {
            pi[v] = pi[u] + arcs_[id].cost;
            changed = true;
          }
        }
      }
      if (!changed) return pi;
    }
    throw Error(ErrorKind::InvalidInput, "negative residual cycle: flow is not optimal");
  }

 private:
  // nullopt means unlimited.
  std::optional<T> residual(std::size_t id) const {
    const Arc& a = arcs_[id];
    if (!a.capacity) return std::nullopt;
    return T(*a.capacity - a.flow);
  }

  bool shortest_path(std::size_t source, std::size_t sink, std::vector<long>& dist, std::vector<std::size_t>& via) {
    constexpr long kInf = std::numeric_limits<long>::max();
    const std::size_t n = out_.size();
    dist.assign(n, kInf);
    via.assign(n, 0);
    std::vector<bool> queued(n, false);
    std::deque<std::size_t> queue{source};
    dist[source] = 0;
    queued[source] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      queued[u] = false;
      for (std::size_t id : out_[u]) {
        const auto r = residual(id);
        if (r && !is_positive(*r)) continue;
        const std::size_t v = arcs_[id].to;
        const long candidate = dist[u] + arcs_[id].cost;
        if (candidate < dist[v]) {
          dist[v] = candidate;
          via[v] = id;
          if (!queued[v]) {
            queued[v] = true;
            queue.push_back(v);
          }
        }
      }
    }
    return dist[sink] != kInf;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<T> supply_;
};

}  // namespace ricci
