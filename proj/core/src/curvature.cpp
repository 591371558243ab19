#include "ricci/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "ricci/markov.hpp"
#include "ricci/parallel.hpp"
#include "ricci/random.hpp"

namespace ricci {

template <Scalar T>
T ricci_edge(const StateGraph& g, const WalkKernel<T>& m, StateIndex x, StateIndex y) {
  if (x == y || !g.adjacent(x, y)) {
    throw Error(ErrorKind::NotAnEdge, std::to_string(x) + "-" + std::to_string(y) + " is not an edge");
  }
  const T w = wasserstein(m.row(x), m.row(y), g).distance;
  return T(1) - w;
}

template <Scalar T>
T ricci_pair(const StateGraph& g, const WalkKernel<T>& m, StateIndex x, StateIndex y) {
  if (x == y) throw Error(ErrorKind::NotDistinct, "curvature needs two distinct states");
  const int d = shortest_path_distance(g, x, y);
  const T w = wasserstein(m.row(x), m.row(y), g).distance;
  return T(1) - w / T(d);
}

template <Scalar T>
CurvatureReport<T> ricci_lower_bound(const StateGraph& g, const WalkKernel<T>& m, const CurvatureOptions& options) {
  require_compatible(m, g);
  if (!g.connected()) throw Error(ErrorKind::Disconnected, "curvature lower bound needs a connected graph");

  const auto edges = g.edges();
  std::vector<TransportResult<T>> results(edges.size());
  parallel_for(edges.size(), options.threads, [&](std::size_t i) {
    results[i] = wasserstein(m.row(edges[i].first), m.row(edges[i].second), g);
  });

  CurvatureReport<T> report;
  report.per_edge.reserve(edges.size());
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const T kappa = T(1) - results[i].distance;
    report.per_edge.push_back({edges[i].first, edges[i].second, kappa});
    if (i == 0 || kappa < report.per_edge[argmin].kappa) argmin = i;
  }
  if (edges.empty()) {
    // A single state has no edges; the bound is vacuous.
    report.global_lb = T(1);
  } else {
    report.global_lb = report.per_edge[argmin].kappa;
    report.argmin_edge = edges[argmin];
    report.argmin_certificate = results[argmin];
  }
  if (options.keep_certificates) report.certificates = std::move(results);

  // Non-adjacent pairs: exhaustive when few, else seeded sample.
  const std::size_t n = g.state_count();
  const std::size_t total_pairs = n * (n - 1) / 2;
  const std::size_t non_adjacent = total_pairs - edges.size();
  std::vector<std::pair<StateIndex, StateIndex>> pairs;
  if (non_adjacent <= options.sample_pairs) {
    for (StateIndex x = 0; x < n; ++x) {
      for (StateIndex y = x + 1; y < n; ++y) {
        if (!g.adjacent(x, y)) pairs.emplace_back(x, y);
      }
    }
  } else {
    Rng rng(options.seed);
    while (pairs.size() < options.sample_pairs) {
      const auto x = static_cast<StateIndex>(uniform_below(rng, n));
      const auto y = static_cast<StateIndex>(uniform_below(rng, n));
      if (x != y && !g.adjacent(x, y)) pairs.emplace_back(x, y);
    }
  }
  std::vector<T> pair_kappa(pairs.size());
  parallel_for(pairs.size(), options.threads,
               [&](std::size_t i) { pair_kappa[i] = ricci_pair(g, m, pairs[i].first, pairs[i].second); });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double slack = to_double(T(pair_kappa[i] - report.global_lb));
    if (slack < -1e-9) {
      throw Error(ErrorKind::LemmaViolation,
                  "pair (" + std::to_string(pairs[i].first) + ", " + std::to_string(pairs[i].second) +
                      ") has curvature " + format_double(to_double(pair_kappa[i])) + " below the edge minimum " +
                      format_double(to_double(report.global_lb)));
    }
    if (!report.min_pair_kappa || pair_kappa[i] < *report.min_pair_kappa) report.min_pair_kappa = pair_kappa[i];
  }
  report.pairs_checked = pairs.size();
  return report;
}

template <Scalar T>
WalkKernel<T> lazy_kernel(const StateGraph& g, const T& alpha) {
  if (alpha < T(0) || alpha > T(1)) throw Error(ErrorKind::OutOfRange, "laziness must lie in [0, 1]");
  std::vector<SparseDistribution<T>> rows;
  rows.reserve(g.state_count());
  for (StateIndex x = 0; x < g.state_count(); ++x) {
    const auto nbrs = g.neighbors(x);
    if (alpha == T(1)) {
      rows.push_back(SparseDistribution<T>::dirac(x));
      continue;
    }
    if (nbrs.empty()) throw Error(ErrorKind::IsolatedState, "state " + std::to_string(x) + " has no neighbors");
    std::vector<typename SparseDistribution<T>::Entry> entries;
    entries.reserve(nbrs.size() + 1);
    if (alpha > T(0)) entries.emplace_back(x, alpha);
    const T share = (T(1) - alpha) / T(static_cast<long>(nbrs.size()));
    for (StateIndex v : nbrs) entries.emplace_back(v, share);
    rows.emplace_back(std::move(entries));
  }
  return WalkKernel<T>(std::move(rows));
}

template <Scalar T>
T ricci_alpha(const StateGraph& g, const T& alpha, StateIndex x, StateIndex y) {
  if (x == y) throw Error(ErrorKind::NotDistinct, "curvature needs two distinct states");
  const auto m = lazy_kernel(g, alpha);
  return ricci_pair(g, m, x, y);
}

template <Scalar T>
LlyEstimate<T> lly_curvature_estimate(const StateGraph& g, StateIndex x, StateIndex y, const std::vector<T>& alphas) {
  if (alphas.size() < 3) throw Error(ErrorKind::BadGrid, "need at least three laziness values");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] < T(0) || !(alphas[i] < T(1))) throw Error(ErrorKind::BadGrid, "laziness outside [0, 1)");
    if (i > 0 && !(alphas[i - 1] < alphas[i])) throw Error(ErrorKind::BadGrid, "grid not strictly increasing");
  }
  if (to_double(alphas.back()) < 0.9) throw Error(ErrorKind::BadGrid, "largest laziness must be at least 0.9");

  LlyEstimate<T> out;
  for (const T& a : alphas) {
    const T kappa = ricci_alpha(g, a, x, y);
    out.kappas.push_back(kappa);
    out.ratios.push_back(T(kappa / (T(1) - a)));
  }
  out.estimate = out.ratios.back();

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    xs.push_back(to_double(alphas[i]));
    ys.push_back(to_double(out.kappas[i]));
  }
  xs.push_back(1.0);
  ys.push_back(0.0);
  out.concave = true;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double left = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
    const double right = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    if (right > left + 1e-9) out.concave = false;
  }
  return out;
}

template <Scalar T>
DiameterVerdict check_diameter_bound(const StateGraph& g, const WalkKernel<T>& m, double kappa_lb) {
  DiameterVerdict verdict;
  if (!(kappa_lb > 0.0)) return verdict;
  verdict.applicable = true;
  verdict.diameter = diameter(g);
  if (verdict.diameter == 0) {
    verdict.bound = std::numeric_limits<double>::infinity();
    return verdict;
  }
  verdict.bound = 2.0 / verdict.diameter;
  constexpr double kTolerance = 1e-12;
  if (kappa_lb > verdict.bound + kTolerance) {
    throw Error(ErrorKind::BoundViolation, "curvature " + format_double(kappa_lb) + " exceeds 2/diam = " +
                                               format_double(verdict.bound));
  }
  if (const auto alpha = m.uniform_self_mass()) {
    verdict.lazy_bound = (1.0 - to_double(*alpha)) * verdict.bound;
    if (kappa_lb > *verdict.lazy_bound + kTolerance) {
      throw Error(ErrorKind::BoundViolation, "curvature " + format_double(kappa_lb) + " exceeds (1-α)2/diam = " +
                                                 format_double(*verdict.lazy_bound));
    }
  }
  return verdict;
}

template <Scalar T>
ContractionVerdict check_lipschitz_contraction(const StateGraph& g, const WalkKernel<T>& m, const StateFunction& f,
                                               double k, double kappa_lb) {
  require_lipschitz(g, f, k);
  const StateFunction mf = apply_averaging(m, f);
  ContractionVerdict verdict;
  verdict.allowed = k * (1.0 - kappa_lb);
  verdict.max_difference = lipschitz_constant(g, mf);
  if (verdict.max_difference > verdict.allowed + 1e-12) {
    throw Error(ErrorKind::ContractionViolation, "Mf has edge difference " + format_double(verdict.max_difference) +
                                                     " > k(1-κ) = " + format_double(verdict.allowed));
  }
  return verdict;
}

#define RICCI_INSTANTIATE(T)                                                                                   \
  template T ricci_edge<T>(const StateGraph&, const WalkKernel<T>&, StateIndex, StateIndex);                  \
  template T ricci_pair<T>(const StateGraph&, const WalkKernel<T>&, StateIndex, StateIndex);                  \
  template CurvatureReport<T> ricci_lower_bound<T>(const StateGraph&, const WalkKernel<T>&,                   \
                                                   const CurvatureOptions&);                                  \
  template WalkKernel<T> lazy_kernel<T>(const StateGraph&, const T&);                                         \
  template T ricci_alpha<T>(const StateGraph&, const T&, StateIndex, StateIndex);                             \
  template LlyEstimate<T> lly_curvature_estimate<T>(const StateGraph&, StateIndex, StateIndex,                \
                                                    const std::vector<T>&);                                   \
  template DiameterVerdict check_diameter_bound<T>(const StateGraph&, const WalkKernel<T>&, double);          \
  template ContractionVerdict check_lipschitz_contraction<T>(const StateGraph&, const WalkKernel<T>&,         \
                                                             const StateFunction&, double, double);

RICCI_INSTANTIATE(double)
RICCI_INSTANTIATE(Rational)
#undef RICCI_INSTANTIATE

}  // namespace ricci
