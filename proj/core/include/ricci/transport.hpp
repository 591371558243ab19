#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ricci/distribution.hpp"
#include "ricci/graph.hpp"

namespace ricci {

/// Sparse joint measure A(x, y).
template <Scalar T>
struct Coupling {
  struct Cell {
    StateIndex x;
    StateIndex y;
    T weight;
  };
  std::vector<Cell> cells;

  /// Sums duplicate (x, y) cells, drops zeros and sorts by (x, y).
  void normalize();

  Coupling<double> to_double_coupling() const;
};

struct CouplingVerdict {
  bool valid = true;
  /// Human-readable description of the first violated constraint.
  std::string violation;
  /// |row or column sum - marginal| for that constraint (or the offending
  /// weight for a non-positive cell).
  double residual = 0.0;
};

/// Checks positivity and both marginal constraints, exactly in rational mode
/// and within 1e-12 per constraint in float mode.
template <Scalar T>
CouplingVerdict validate_coupling(const Coupling<T>& a, const SparseDistribution<T>& m1,
                                  const SparseDistribution<T>& m2);

/// Σ A(x,y) d(x,y). Throws Disconnected for a pair without a path.
template <Scalar T>
T coupling_cost(const Coupling<T>& a, const StateGraph& g);

template <Scalar T>
struct TransportResult {
  T distance{0};
  Coupling<T> optimal_coupling;
  /// 1-Lipschitz potential over all states attaining Σ f (m1 - m2) = distance;
  /// integer-valued and normalized to 0 at the smallest support state.
  StateFunction dual_potential;
};

/// Exact W1 between m1 and m2 over the shortest-path metric of g, solved as
/// min-cost flow on the bipartite support network (distances by BFS from the
/// support of m1, or from the graph's distance cache when built).
template <Scalar T>
TransportResult<T> wasserstein(const SparseDistribution<T>& m1, const SparseDistribution<T>& m2,
                               const StateGraph& g);

template <Scalar T>
struct DualResult {
  T value{0};
  StateFunction potential;
};

/// Kantorovich dual sup Σ f (m1 - m2) over 1-Lipschitz f, computed through
/// the edge-flow (transshipment) formulation on g itself: the optimal node
/// potentials are 1-Lipschitz on every edge by reduced-cost optimality. This
/// route shares no distance computations with `wasserstein`.
template <Scalar T>
DualResult<T> kantorovich_dual(const SparseDistribution<T>& m1, const SparseDistribution<T>& m2,
                               const StateGraph& g);

}  // namespace ricci
