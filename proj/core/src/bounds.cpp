#include "ricci/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ricci/markov.hpp"

namespace ricci {

std::string_view to_string(BoundVariant v) noexcept {
  switch (v) {
    case BoundVariant::Exact: return "exact";
    case BoundVariant::Seven: return "seven";
    case BoundVariant::Five: return "five";
  }
  return "seven";
}

BoundVariant parse_bound_variant(std::string_view name) {
  if (name == "exact") return BoundVariant::Exact;
  if (name == "seven") return BoundVariant::Seven;
  if (name == "five") return BoundVariant::Five;
  throw Error(ErrorKind::InvalidInput, "unknown bound variant '" + std::string(name) + "'");
}

double solve_lambda0(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw Error(ErrorKind::OutOfRange, "λ₀ needs κ in [0, 1]");
  const double target = 2.0 * (2.0 - kappa);
  auto g = [](double x) { return x * std::exp(2.0 * x); };
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (g(mid) < target ? lo : hi) = mid;
  }
  return std::abs(g(lo) - target) <= std::abs(g(hi) - target) ? lo : hi;
}

TailBound tail_bound(const TailBoundSpec& spec) {
  if (!(spec.kappa > 0.0) || !std::isfinite(spec.kappa)) throw Error(ErrorKind::OutOfRange, "κ must be positive");
  if (!(spec.t >= 0.0) || !std::isfinite(spec.t)) throw Error(ErrorKind::OutOfRange, "t must be non-negative");
  if (spec.variant == BoundVariant::Exact && spec.kappa > 1.0) {
    throw Error(ErrorKind::OutOfRange, "exact variant needs κ <= 1");
  }
  TailBound out;
  out.lambda0 = spec.kappa <= 1.0 ? solve_lambda0(spec.kappa) : std::numeric_limits<double>::quiet_NaN();
  out.outside_theorem_hypothesis = spec.t < 1.0;
  if (spec.t > 2.0 / spec.kappa) {
    out.beyond_cutoff = true;
    out.value = 0.0;
    return out;
  }
  const double exponent_constant = spec.variant == BoundVariant::Exact   ? out.lambda0 / 4.0
                                   : spec.variant == BoundVariant::Seven ? 1.0 / 7.0
                                                                         : 1.0 / 5.0;
  double value = std::exp(-spec.t * spec.t * spec.kappa * exponent_constant);
  if (spec.two_sided) value = std::min(1.0, 2.0 * value);
  out.value = value;
  return out;
}

template <Scalar T>
MgfVerdict mgf_inequality_check(const StateGraph& g, const WalkKernel<T>& m, const StateFunction& phi, double lambda,
                                double alpha) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::OutOfRange, "λ must be positive");
  if (!(alpha <= 1.0) || alpha < 0.0) throw Error(ErrorKind::OutOfRange, "α must lie in [0, 1]");
  require_compatible(m, g);
  require_lipschitz(g, phi, alpha);

  StateFunction exp_phi;
  exp_phi.values.reserve(phi.size());
  for (double v : phi.values) exp_phi.values.push_back(std::exp(lambda * v));
  const StateFunction lhs = apply_averaging(m, exp_phi);
  const StateFunction mean = apply_averaging(m, phi);
  const double slack = 0.5 * lambda * lambda * alpha * alpha * std::exp(2.0 * lambda * alpha);

  MgfVerdict verdict;
  for (StateIndex x = 0; x < phi.size(); ++x) {
    const double rhs = std::exp(lambda * mean(x) + slack);
    const double ratio = lhs(x) / rhs;
    verdict.worst_ratio = std::max(verdict.worst_ratio, ratio);
    if (ratio > 1.0 + 1e-12) {
      throw Error(ErrorKind::InequalityViolation, "MGF inequality fails at state " + std::to_string(x) +
                                                      " (ratio " + format_double(ratio) + ")");
    }
  }
  return verdict;
}

template <Scalar T>
VarianceVerdict variance_bound_check(const WalkKernel<T>& m, const StateFunction& f, double alpha) {
  if (f.size() != m.state_count()) throw Error(ErrorKind::InvalidInput, "function size does not match kernel");
  VarianceVerdict verdict;
  for (StateIndex x = 0; x < m.state_count(); ++x) {
    double mean = 0.0;
    double spread = 0.0;  // E[(f - f(x))²]
    for (const auto& [y, w] : m.row(x).entries()) {
      const double diff = f(y) - f(x);
      if (std::abs(diff) > alpha + 1e-12) {
        throw Error(ErrorKind::InputNotLipschitz, "|f(" + std::to_string(y) + ") - f(" + std::to_string(x) +
                                                      ")| exceeds " + format_double(alpha));
      }
      const double p = to_double(w);
      mean += p * f(y);
      spread += p * diff * diff;
    }
    double variance = 0.0;
    for (const auto& [y, w] : m.row(x).entries()) variance += to_double(w) * (f(y) - mean) * (f(y) - mean);
    verdict.worst_variance = std::max(verdict.worst_variance, variance);
    if (variance > spread + 1e-12 || spread > alpha * alpha + 1e-12) {
      throw Error(ErrorKind::InequalityViolation, "variance chain fails at state " + std::to_string(x));
    }
  }
  return verdict;
}

template <Scalar T>
MgfChainVerdict mgf_chain_check(const StateGraph& g, const WalkKernel<T>& m, const StateFunction& f, double lambda,
                                double kappa, std::size_t steps) {
  if (!(kappa > 0.0)) throw Error(ErrorKind::OutOfRange, "κ must be positive");
  if (!(lambda > 0.0)) throw Error(ErrorKind::OutOfRange, "λ must be positive");
  require_lipschitz(g, f, 1.0);
  constexpr double kTolerance = 1e-9;

  StateFunction exp_f;
  for (double v : f.values) exp_f.values.push_back(std::exp(lambda * v));
  StateFunction iterated_exp = exp_f;
  StateFunction iterated_f = f;
  const double base = 0.5 * lambda * lambda * std::exp(2.0 * lambda);
  double geometric = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    iterated_exp = apply_averaging(m, iterated_exp);
    iterated_f = apply_averaging(m, iterated_f);
    geometric += std::pow(1.0 - kappa, 2.0 * static_cast<double>(i - 1));
    for (StateIndex x = 0; x < f.size(); ++x) {
      const double rhs = std::exp(lambda * iterated_f(x) + base * geometric);
      if (iterated_exp(x) > rhs * (1.0 + kTolerance)) {
        throw Error(ErrorKind::InequalityViolation, "iterated MGF bound fails at step " + std::to_string(i) +
                                                        ", state " + std::to_string(x));
      }
    }
  }

  const auto nu = stationary_distribution(m);
  MgfChainVerdict verdict;
  verdict.iterations = steps;
  verdict.lhs = expectation(nu, exp_f);
  verdict.rhs = std::exp(lambda * expectation(nu, f) + lambda * lambda * std::exp(2.0 * lambda) /
                                                           (2.0 * kappa * (2.0 - kappa)));
  if (verdict.lhs > verdict.rhs * (1.0 + kTolerance)) {
    throw Error(ErrorKind::InequalityViolation, "stationary MGF bound fails: " + format_double(verdict.lhs) + " > " +
                                                    format_double(verdict.rhs));
  }
  return verdict;
}

#define RICCI_INSTANTIATE(T)                                                                                   \
  template MgfVerdict mgf_inequality_check<T>(const StateGraph&, const WalkKernel<T>&, const StateFunction&,   \
                                              double, double);                                                 \
  template VarianceVerdict variance_bound_check<T>(const WalkKernel<T>&, const StateFunction&, double);        \
  template MgfChainVerdict mgf_chain_check<T>(const StateGraph&, const WalkKernel<T>&, const StateFunction&,   \
                                              double, double, std::size_t);

RICCI_INSTANTIATE(double)
RICCI_INSTANTIATE(Rational)
#undef RICCI_INSTANTIATE

}  // namespace ricci
