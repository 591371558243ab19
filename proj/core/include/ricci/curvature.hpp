#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ricci/distribution.hpp"
#include "ricci/graph.hpp"
#include "ricci/transport.hpp"

namespace ricci {

/// κ(x, y) = 1 - W(m_x, m_y) for an edge xy. Throws NotAnEdge.
template <Scalar T>
T ricci_edge(const StateGraph& g, const WalkKernel<T>& m, StateIndex x, StateIndex y);

/// κ(x, y) = 1 - W(m_x, m_y) / d(x, y). Throws NotDistinct, Disconnected.
template <Scalar T>
T ricci_pair(const StateGraph& g, const WalkKernel<T>& m, StateIndex x, StateIndex y);

template <Scalar T>
struct EdgeCurvature {
  StateIndex x;
  StateIndex y;
  T kappa;
};

template <Scalar T>
struct CurvatureReport {
  std::vector<EdgeCurvature<T>> per_edge;
  T global_lb{0};
  std::pair<StateIndex, StateIndex> argmin_edge{0, 0};
  /// Optimal coupling and dual potential for the arg-min edge.
  TransportResult<T> argmin_certificate;
  /// One entry per edge (same order as per_edge) when requested.
  std::vector<TransportResult<T>> certificates;
  std::optional<T> alpha;
  std::size_t pairs_checked = 0;
  /// Smallest κ among the validated non-adjacent pairs.
  std::optional<T> min_pair_kappa;
};

struct CurvatureOptions {
  std::size_t sample_pairs = 100;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  bool keep_certificates = false;
};

/// Minimum edge curvature, certified, plus validation that sampled
/// non-adjacent pairs are no less curved (LemmaViolation otherwise). When
/// the graph has at most `sample_pairs` non-adjacent pairs all are checked.
template <Scalar T>
CurvatureReport<T> ricci_lower_bound(const StateGraph& g, const WalkKernel<T>& m,
                                     const CurvatureOptions& options = {});

/// α-lazy simple random walk: mass α on x, (1-α)/deg(x) on each neighbor.
/// α = 1 is accepted and yields the identity kernel. Throws IsolatedState
/// when α < 1 and some state has no neighbors, OutOfRange outside [0, 1].
template <Scalar T>
WalkKernel<T> lazy_kernel(const StateGraph& g, const T& alpha);

/// κ_α(x, y) of the α-lazy simple random walk.
template <Scalar T>
T ricci_alpha(const StateGraph& g, const T& alpha, StateIndex x, StateIndex y);

template <Scalar T>
struct LlyEstimate {
  /// κ_α / (1 - α) at the largest grid α. An estimate, not the limit.
  T estimate{0};
  std::vector<T> kappas;
  std::vector<T> ratios;
  /// Slopes of α ↦ κ_α (with κ_1 = 0 appended) are non-increasing within 1e-9.
  bool concave = false;
};

/// Throws BadGrid unless alphas is strictly increasing in [0, 1), has at
/// least three points and reaches 0.9.
template <Scalar T>
LlyEstimate<T> lly_curvature_estimate(const StateGraph& g, StateIndex x, StateIndex y, const std::vector<T>& alphas);

struct DiameterVerdict {
  bool applicable = false;
  int diameter = 0;
  double bound = 0.0;
  /// (1 - α) 2 / diam when every row has self-mass α.
  std::optional<double> lazy_bound;
};

/// κ_lb <= 2/diam, and <= (1-α) 2/diam under uniform self-mass α. Not
/// applicable for κ_lb <= 0. Throws BoundViolation.
template <Scalar T>
DiameterVerdict check_diameter_bound(const StateGraph& g, const WalkKernel<T>& m, double kappa_lb);

struct ContractionVerdict {
  /// Largest |Mf(u) - Mf(v)| over edges, and the allowance k (1 - κ_lb).
  double max_difference = 0.0;
  double allowed = 0.0;
};

/// Verifies f is k-Lipschitz (InputNotLipschitz) and that Mf is
/// k(1-κ_lb)-Lipschitz within 1e-12 (ContractionViolation).
template <Scalar T>
ContractionVerdict check_lipschitz_contraction(const StateGraph& g, const WalkKernel<T>& m, const StateFunction& f,
                                               double k, double kappa_lb);

}  // namespace ricci
