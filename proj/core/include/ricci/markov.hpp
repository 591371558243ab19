#pragma once

#include <string>
#include <vector>

#include "ricci/distribution.hpp"
#include "ricci/graph.hpp"

namespace ricci {

struct ErgodicityVerdict {
  bool ergodic = false;
  bool strongly_connected = false;
  /// gcd of cycle lengths in the support digraph; 1 means aperiodic.
  /// Zero when the support graph is not strongly connected.
  long period = 0;
  /// The sufficient condition quoted for walks on graphs: the underlying
  /// graph is connected and non-bipartite (a loop counts as an odd cycle).
  bool graph_connected_nonbipartite = false;
  /// Every row charges every open neighbor of its state.
  bool full_neighbor_support = false;
  std::string reason;
};

/// Ergodicity of the actual kernel: its directed support graph must be
/// strongly connected and aperiodic.
template <Scalar T>
ErgodicityVerdict check_ergodic(const StateGraph& g, const WalkKernel<T>& m);

/// Unique invariant distribution. Dense elimination on (P^T - I) with a
/// normalization row up to kDenseStationaryLimit states, power iteration
/// above it (float mode only). Throws NotErgodic.
template <Scalar T>
SparseDistribution<T> stationary_distribution(const WalkKernel<T>& m);

inline constexpr std::size_t kDenseStationaryLimit = 5000;

/// max_x |(νP)(x) - ν(x)|.
template <Scalar T>
double stationary_residual(const WalkKernel<T>& m, const SparseDistribution<T>& nu);

/// (Mf)(x) = Σ_y f(y) m_x(y).
template <Scalar T>
StateFunction apply_averaging(const WalkKernel<T>& m, const StateFunction& f);

/// E_ν[f].
template <Scalar T>
double expectation(const SparseDistribution<T>& nu, const StateFunction& f);

}  // namespace ricci
