#pragma once

#include <string_view>

#include "ricci/distribution.hpp"
#include "ricci/graph.hpp"

namespace ricci {

enum class BoundVariant { Exact, Seven, Five };

std::string_view to_string(BoundVariant v) noexcept;
/// "exact" | "seven" | "five"; throws InvalidInput otherwise.
BoundVariant parse_bound_variant(std::string_view name);

/// Unique positive root of x e^{2x} = 2(2 - κ) for κ in [0, 1], by bisection
/// on [0, 1]. Throws OutOfRange.
double solve_lambda0(double kappa);

struct TailBoundSpec {
  double kappa = 0.0;
  double t = 0.0;
  BoundVariant variant = BoundVariant::Seven;
  bool two_sided = false;
};

struct TailBound {
  double value = 1.0;
  /// λ₀(κ); NaN when κ > 1 (only the constant variants are defined there).
  double lambda0 = 0.0;
  /// t < 1: the formula is evaluated but the theorem does not cover it.
  bool outside_theorem_hypothesis = false;
  /// t > 2/κ: no 1-Lipschitz function deviates that far, the bound is 0.
  bool beyond_cutoff = false;
};

/// exp(-t²κλ₀/4), exp(-t²κ/7) or exp(-t²κ/5); doubled and capped at 1 when
/// two-sided; 0 beyond t = 2/κ. Throws OutOfRange for κ <= 0, t < 0, or the
/// exact variant with κ > 1.
TailBound tail_bound(const TailBoundSpec& spec);

struct MgfVerdict {
  /// max over states of LHS / RHS (<= 1 when the inequality holds).
  double worst_ratio = 0.0;
};

/// (M e^{λφ})(x) <= exp(λ Mφ(x) + ½ λ² α² e^{2λα}) at every state, within
/// 1e-12 relative. Throws InputNotLipschitz, InequalityViolation.
template <Scalar T>
MgfVerdict mgf_inequality_check(const StateGraph& g, const WalkKernel<T>& m, const StateFunction& phi, double lambda,
                                double alpha);

struct VarianceVerdict {
  double worst_variance = 0.0;
};

/// Var_{m_x} f <= E_{m_x}[(f - f(x))²] <= α² at every state. The Lipschitz
/// precondition is checked on the kernel's support arcs.
template <Scalar T>
VarianceVerdict variance_bound_check(const WalkKernel<T>& m, const StateFunction& f, double alpha);

struct MgfChainVerdict {
  /// Steps of M^i e^{λf} <= exp(λ M^i f + ½λ²e^{2λ} Σ_{j<i}(1-κ)^{2j}) checked.
  std::size_t iterations = 0;
  double lhs = 0.0;  // E_ν e^{λf}
  double rhs = 0.0;  // exp(λ E_ν f + λ²e^{2λ} / (2κ(2-κ)))
};

/// End-to-end moment-generating-function chain for a 1-Lipschitz f under a
/// walk with curvature at least κ > 0: the iterated bound for i = 1..steps
/// pointwise, then the stationary limit. Tolerance 1e-9 relative.
template <Scalar T>
MgfChainVerdict mgf_chain_check(const StateGraph& g, const WalkKernel<T>& m, const StateFunction& f, double lambda,
                                double kappa, std::size_t steps = 30);

}  // namespace ricci
