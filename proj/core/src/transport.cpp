#include "ricci/transport.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ricci/min_cost_flow.hpp"

namespace ricci {

namespace {

template <Scalar T>
bool marginal_matches(const T& got, const T& want, double& residual) {
  const T diff = got - want;
  residual = std::abs(ricci::to_double(diff));
  if constexpr (ScalarTraits<T>::exact) {
    return diff == T(0);
  } else {
    return residual <= ScalarTraits<double>::tolerance;
  }
}

// Distances from every point of `sources` to all states.
std::vector<std::vector<int>> distance_rows(const StateGraph& g, const std::vector<StateIndex>& sources) {
  std::vector<std::vector<int>> rows;
  rows.reserve(sources.size());
  for (StateIndex s : sources) {
    if (const auto* table = g.distance_cache()) {
      const auto row = table->row(s);
      rows.emplace_back(row.begin(), row.end());
    } else {
      rows.push_back(g.bfs_distances(s));
    }
  }
  return rows;
}

void check_support(const StateGraph& g, const std::vector<StateIndex>& support) {
  for (StateIndex s : support) {
    if (s >= g.state_count()) {
      throw Error(ErrorKind::InvalidInput, "support state " + std::to_string(s) + " outside graph");
    }
  }
}

}  // namespace

template <Scalar T>
void Coupling<T>::normalize() {
  std::map<std::pair<StateIndex, StateIndex>, T> merged;
  for (const auto& c : cells) merged[{c.x, c.y}] += c.weight;
  cells.clear();
  for (auto& [key, w] : merged) {
    if (w != T(0)) cells.push_back({key.first, key.second, w});
  }
}

template <Scalar T>
Coupling<double> Coupling<T>::to_double_coupling() const {
  Coupling<double> out;
  out.cells.reserve(cells.size());
  for (const auto& c : cells) out.cells.push_back({c.x, c.y, ricci::to_double(c.weight)});
  return out;
}

template <Scalar T>
CouplingVerdict validate_coupling(const Coupling<T>& a, const SparseDistribution<T>& m1,
                                  const SparseDistribution<T>& m2) {
  CouplingVerdict verdict;
  std::map<StateIndex, T> rows;
  std::map<StateIndex, T> cols;
  for (const auto& c : a.cells) {
    if (!(c.weight > T(0))) {
      verdict.valid = false;
      verdict.violation = "non-positive weight at (" + std::to_string(c.x) + ", " + std::to_string(c.y) + ")";
      verdict.residual = std::abs(ricci::to_double(c.weight));
      return verdict;
    }
    rows[c.x] += c.weight;
    cols[c.y] += c.weight;
  }
  auto check_side = [&](const std::map<StateIndex, T>& sums, const SparseDistribution<T>& m, const char* side) {
    std::vector<StateIndex> states = m.support();
    for (const auto& [s, w] : sums) states.push_back(s);
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    for (StateIndex s : states) {
      const auto it = sums.find(s);
      const T got = it == sums.end() ? T(0) : it->second;
      double residual = 0.0;
      if (!marginal_matches(got, m.mass(s), residual)) {
        verdict.valid = false;
        verdict.violation = std::string(side) + " marginal mismatch at state " + std::to_string(s);
        verdict.residual = residual;
        return false;
      }
    }
    return true;
  };
  if (check_side(rows, m1, "first")) check_side(cols, m2, "second");
  return verdict;
}

template <Scalar T>
T coupling_cost(const Coupling<T>& a, const StateGraph& g) {
  T cost(0);
  std::map<StateIndex, std::vector<int>> rows;
  for (const auto& c : a.cells) {
    if (c.x == c.y) continue;
    int d;
    if (const auto* table = g.distance_cache()) {
      d = (*table)(c.x, c.y);
    } else {
      auto it = rows.find(c.x);
      if (it == rows.end()) it = rows.emplace(c.x, g.bfs_distances(c.x)).first;
      d = it->second.at(c.y);
    }
    if (d == kUnreachable) {
      throw Error(ErrorKind::Disconnected, "coupling moves mass between " + std::to_string(c.x) + " and " +
                                               std::to_string(c.y) + " which are not connected");
    }
    cost += c.weight * T(d);
  }
  return cost;
}

template <Scalar T>
TransportResult<T> wasserstein(const SparseDistribution<T>& m1, const SparseDistribution<T>& m2,
                               const StateGraph& g) {
  const auto s1 = m1.support();
  const auto s2 = m2.support();
  check_support(g, s1);
  check_support(g, s2);
  const auto dist = distance_rows(g, s1);

  // Nodes: sources 0..a-1, sinks a..a+b-1.
  const std::size_t a = s1.size();
  const std::size_t b = s2.size();
  MinCostFlow<T> network(a + b);
  std::vector<std::size_t> arc_ids(a * b);
  for (std::size_t i = 0; i < a; ++i) {
    network.set_supply(i, m1.entries()[i].second);
    for (std::size_t j = 0; j < b; ++j) {
      const int d = dist[i][s2[j]];
      if (d == kUnreachable) continue;
      arc_ids[i * b + j] = network.add_arc(i, a + j, d);
    }
  }
  for (std::size_t j = 0; j < b; ++j) network.set_supply(a + j, T(-m2.entries()[j].second));

  TransportResult<T> result;
  result.distance = network.solve();
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      if (dist[i][s2[j]] == kUnreachable) continue;
      const T& flow = network.arc(arc_ids[i * b + j]).flow;
      if (is_positive(flow)) result.optimal_coupling.cells.push_back({s1[i], s2[j], flow});
    }
  }

  // Flow potentials give f on supp m1; the extension
  // ψ(z) = max_i (f(x_i) - d(x_i, z)) is 1-Lipschitz everywhere, agrees with
  // f on supp m1 and stays below the sink potentials on supp m2, so it
  // attains the primal value.
  const auto pi = network.potentials();
  const std::size_t n = g.state_count();
  std::vector<long> psi(n, std::numeric_limits<long>::min());
  for (std::size_t i = 0; i < a; ++i) {
    const long fi = -pi[i];
    for (StateIndex z = 0; z < n; ++z) {
      if (dist[i][z] == kUnreachable) continue;
      psi[z] = std::max(psi[z], fi - dist[i][z]);
    }
  }
  StateIndex anchor = std::min(s1.empty() ? StateIndex(0) : s1.front(), s2.empty() ? StateIndex(0) : s2.front());
  const long shift = psi[anchor] == std::numeric_limits<long>::min() ? 0 : psi[anchor];
  result.dual_potential.values.assign(n, 0.0);
  for (StateIndex z = 0; z < n; ++z) {
    // States unreachable from supp m1 play no role; park them at the anchor level.
    result.dual_potential.values[z] =
        psi[z] == std::numeric_limits<long>::min() ? 0.0 : static_cast<double>(psi[z] - shift);
  }
  result.dual_potential.lipschitz = 1.0;
  return result;
}

template <Scalar T>
DualResult<T> kantorovich_dual(const SparseDistribution<T>& m1, const SparseDistribution<T>& m2,
                               const StateGraph& g) {
  const std::size_t n = g.state_count();
  check_support(g, m1.support());
  check_support(g, m2.support());
  MinCostFlow<T> network(n);
  for (const auto& [u, v] : g.edges()) {
    network.add_arc(u, v, 1);
    network.add_arc(v, u, 1);
  }
  std::vector<T> net(n, T(0));
  for (const auto& [x, w] : m1.entries()) net[x] += w;
  for (const auto& [y, w] : m2.entries()) net[y] -= w;
  for (StateIndex v = 0; v < n; ++v) network.set_supply(v, net[v]);
  network.solve();

  // Reduced-cost optimality on the uncapacitated unit arcs gives
  // |π(u) - π(v)| <= 1 on every edge; f = -π is the optimal potential.
  const auto pi = network.potentials();
  std::vector<StateIndex> support = m1.support();
  for (StateIndex y : m2.support()) support.push_back(y);
  const StateIndex anchor = support.empty() ? 0 : *std::min_element(support.begin(), support.end());
  const long shift = n == 0 ? 0 : -pi[anchor];

  DualResult<T> result;
  result.potential.values.assign(n, 0.0);
  for (StateIndex v = 0; v < n; ++v) result.potential.values[v] = static_cast<double>(-pi[v] - shift);
  result.potential.lipschitz = 1.0;
  for (StateIndex v = 0; v < n; ++v) {
    if (net[v] != T(0)) result.value += T(static_cast<long>(result.potential.values[v])) * net[v];
  }
  return result;
}

#define RICCI_INSTANTIATE(T)                                                                              \
  template struct Coupling<T>;                                                                           \
  template CouplingVerdict validate_coupling<T>(const Coupling<T>&, const SparseDistribution<T>&,       \
                                                const SparseDistribution<T>&);                          \
  template T coupling_cost<T>(const Coupling<T>&, const StateGraph&);                                   \
  template TransportResult<T> wasserstein<T>(const SparseDistribution<T>&, const SparseDistribution<T>&, \
                                             const StateGraph&);                                        \
  template DualResult<T> kantorovich_dual<T>(const SparseDistribution<T>&, const SparseDistribution<T>&, \
                                             const StateGraph&);

RICCI_INSTANTIATE(double)
RICCI_INSTANTIATE(Rational)
#undef RICCI_INSTANTIATE

}  // namespace ricci
