#include "ricci/markov.hpp"

#include <cmath>
#include <deque>
#include <numeric>

namespace ricci {

namespace {

template <Scalar T>
std::vector<std::vector<StateIndex>> support_digraph(const WalkKernel<T>& m) {
  std::vector<std::vector<StateIndex>> out(m.state_count());
  for (StateIndex x = 0; x < m.state_count(); ++x) {
    for (const auto& [y, w] : m.row(x).entries()) out[x].push_back(y);
  }
  return out;
}

std::vector<long> bfs_levels(const std::vector<std::vector<StateIndex>>& adj, StateIndex root) {
  std::vector<long> level(adj.size(), -1);
  std::deque<StateIndex> queue{root};
  level[root] = 0;
  while (!queue.empty()) {
    const StateIndex u = queue.front();
    queue.pop_front();
    for (StateIndex v : adj[u]) {
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return level;
}

// Dense Gaussian elimination; partial pivoting by magnitude in float mode,
// first non-zero pivot in exact mode.
template <Scalar T>
std::vector<T> solve_dense(std::vector<std::vector<T>> a, std::vector<T> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    if constexpr (ScalarTraits<T>::exact) {
      for (std::size_t r = col; r < n; ++r) {
        if (sgn(a[r][col]) != 0) {
          pivot = r;
          break;
        }
      }
    } else {
      double best = 0.0;
      for (std::size_t r = col; r < n; ++r) {
        if (std::abs(a[r][col]) > best) {
          best = std::abs(a[r][col]);
          pivot = r;
        }
      }
    }
    if (pivot == n) throw Error(ErrorKind::NotErgodic, "singular stationary system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == T(0)) continue;
      const T factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) {
        if (a[col][c] != T(0)) a[r][c] -= factor * a[col][c];
      }
      b[r] -= factor * b[col];
    }
  }
  std::vector<T> x(n, T(0));
  for (std::size_t i = n; i-- > 0;) {
    T acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) {
      if (a[i][c] != T(0)) acc -= a[i][c] * x[c];
    }
    x[i] = acc / a[i][i];
  }
  return x;
}

template <Scalar T>
std::vector<T> step(const WalkKernel<T>& m, const std::vector<T>& nu) {
  std::vector<T> next(nu.size(), T(0));
  for (StateIndex x = 0; x < m.state_count(); ++x) {
    if (nu[x] == T(0)) continue;
    for (const auto& [y, w] : m.row(x).entries()) next[y] += nu[x] * w;
  }
  return next;
}

}  // namespace

template <Scalar T>
ErgodicityVerdict check_ergodic(const StateGraph& g, const WalkKernel<T>& m) {
  require_compatible(m, g);
  ErgodicityVerdict verdict;
  verdict.graph_connected_nonbipartite = g.connected() && !g.bipartite();
  verdict.full_neighbor_support = true;
  for (StateIndex x = 0; x < g.state_count() && verdict.full_neighbor_support; ++x) {
    for (StateIndex y : g.neighbors(x)) {
      if (m(x, y) == T(0)) {
        verdict.full_neighbor_support = false;
        break;
      }
    }
  }
  if (m.state_count() == 0) {
    verdict.reason = "empty state space";
    return verdict;
  }

  const auto forward = support_digraph(m);
  std::vector<std::vector<StateIndex>> backward(forward.size());
  for (StateIndex x = 0; x < forward.size(); ++x) {
    for (StateIndex y : forward[x]) backward[y].push_back(x);
  }
  const auto level = bfs_levels(forward, 0);
  const auto back_level = bfs_levels(backward, 0);
  for (StateIndex x = 0; x < forward.size(); ++x) {
    if (level[x] < 0 || back_level[x] < 0) {
      verdict.reason = "support digraph is not strongly connected (state " + std::to_string(x) +
                       (level[x] < 0 ? " unreachable from 0)" : " cannot return to 0)");
      return verdict;
    }
  }
  verdict.strongly_connected = true;

  // The period of an irreducible chain is the gcd of level(u) + 1 - level(v)
  // over all support arcs u -> v.
  long period = 0;
  for (StateIndex u = 0; u < forward.size(); ++u) {
    for (StateIndex v : forward[u]) period = std::gcd(period, std::labs(level[u] + 1 - level[v]));
  }
  verdict.period = period;
  verdict.ergodic = period == 1;
  verdict.reason = verdict.ergodic ? "strongly connected and aperiodic"
                                   : "periodic with period " + std::to_string(period);
  return verdict;
}

template <Scalar T>
SparseDistribution<T> stationary_distribution(const WalkKernel<T>& m) {
  const std::size_t n = m.state_count();
  StateGraph g(n);
  for (StateIndex x = 0; x < n; ++x) {
    for (const auto& [y, w] : m.row(x).entries()) g.add_edge(x, y);
  }
  const auto verdict = check_ergodic(g, m);
  if (!verdict.ergodic) throw Error(ErrorKind::NotErgodic, verdict.reason);

  std::vector<T> nu;
  if (n <= kDenseStationaryLimit) {
    // Rows of (P^T - I); the last equation is replaced by Σν = 1.
    std::vector<std::vector<T>> a(n, std::vector<T>(n, T(0)));
    for (StateIndex x = 0; x < n; ++x) {
      for (const auto& [y, w] : m.row(x).entries()) a[y][x] += w;
      a[x][x] -= T(1);
    }
    std::vector<T> b(n, T(0));
    for (std::size_t c = 0; c < n; ++c) a[n - 1][c] = T(1);
    b[n - 1] = T(1);
    nu = solve_dense(std::move(a), std::move(b));
    if constexpr (!ScalarTraits<T>::exact) {
      // One polishing step keeps the residual at rounding level.
      for (auto& v : nu) v = std::max(v, 0.0);
      nu = step(m, nu);
      const double total = std::accumulate(nu.begin(), nu.end(), 0.0);
      for (auto& v : nu) v /= total;
    }
  } else {
    if constexpr (ScalarTraits<T>::exact) {
      throw Error(ErrorKind::TooLarge, "exact stationary solve limited to " +
                                           std::to_string(kDenseStationaryLimit) + " states");
    } else {
      nu.assign(n, 1.0 / static_cast<double>(n));
      constexpr long kMaxIterations = 1'000'000;
      constexpr double kTolerance = 1e-13;
      long it = 0;
      for (; it < kMaxIterations; ++it) {
        auto next = step(m, nu);
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(next[i] - nu[i]));
        nu = std::move(next);
        if (change <= kTolerance) break;
      }
      if (it == kMaxIterations) throw Error(ErrorKind::NotErgodic, "power iteration did not converge");
    }
  }

  std::vector<typename SparseDistribution<T>::Entry> entries;
  for (StateIndex x = 0; x < n; ++x) {
    if (nu[x] > T(0)) entries.emplace_back(x, nu[x]);
  }
  if constexpr (ScalarTraits<T>::exact) {
    return SparseDistribution<T>(std::move(entries));
  } else {
    return SparseDistribution<T>(std::move(entries), SparseDistribution<T>::kTrusted);
  }
}

template <Scalar T>
double stationary_residual(const WalkKernel<T>& m, const SparseDistribution<T>& nu) {
  std::vector<T> dense(m.state_count(), T(0));
  for (const auto& [x, w] : nu.entries()) dense.at(x) = w;
  const auto next = step(m, dense);
  double worst = 0.0;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    const T diff = next[i] - dense[i];
    worst = std::max(worst, std::abs(ricci::to_double(diff)));
  }
  return worst;
}

template <Scalar T>
StateFunction apply_averaging(const WalkKernel<T>& m, const StateFunction& f) {
  if (f.size() != m.state_count()) throw Error(ErrorKind::InvalidInput, "function size does not match kernel");
  StateFunction out;
  out.values.resize(m.state_count());
  for (StateIndex x = 0; x < m.state_count(); ++x) {
    double acc = 0.0;
    for (const auto& [y, w] : m.row(x).entries()) acc += f(y) * ricci::to_double(w);
    out.values[x] = acc;
  }
  return out;
}

template <Scalar T>
double expectation(const SparseDistribution<T>& nu, const StateFunction& f) {
  double acc = 0.0;
  for (const auto& [x, w] : nu.entries()) acc += f(x) * ricci::to_double(w);
  return acc;
}

double lipschitz_constant(const StateGraph& g, const StateFunction& f) {
  if (f.size() != g.state_count()) throw Error(ErrorKind::InvalidInput, "function size does not match graph");
  double worst = 0.0;
  for (const auto& [u, v] : g.edges()) worst = std::max(worst, std::abs(f(u) - f(v)));
  return worst;
}

void require_lipschitz(const StateGraph& g, const StateFunction& f, double c, double tolerance) {
  if (f.size() != g.state_count()) throw Error(ErrorKind::InvalidInput, "function size does not match graph");
  for (const auto& [u, v] : g.edges()) {
    const double diff = std::abs(f(u) - f(v));
    if (diff > c + tolerance) {
      throw Error(ErrorKind::InputNotLipschitz, "|f(" + std::to_string(u) + ") - f(" + std::to_string(v) +
                                                    ")| = " + format_double(diff) + " exceeds " + format_double(c));
    }
  }
}

#define RICCI_INSTANTIATE(T)                                                                 \
  template ErgodicityVerdict check_ergodic<T>(const StateGraph&, const WalkKernel<T>&);     \
  template SparseDistribution<T> stationary_distribution<T>(const WalkKernel<T>&);         \
  template double stationary_residual<T>(const WalkKernel<T>&, const SparseDistribution<T>&); \
  template StateFunction apply_averaging<T>(const WalkKernel<T>&, const StateFunction&);   \
  template double expectation<T>(const SparseDistribution<T>&, const StateFunction&);

RICCI_INSTANTIATE(double)
RICCI_INSTANTIATE(Rational)
#undef RICCI_INSTANTIATE

}  // namespace ricci
