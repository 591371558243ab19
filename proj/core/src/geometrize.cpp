#include "ricci/geometrize.hpp"

#include <cstdlib>
#include <string>

#include "ricci/error.hpp"

namespace ricci {

std::uint64_t enumeration_cap() {
  if (const char* env = std::getenv("RICCI_CONC_CAP")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return value;
  }
  return kDefaultEnumerationCap;
}

GeometrizedSpace::GeometrizedSpace(std::shared_ptr<const ConfigurationModel> model, std::uint64_t cap)
    : model_(std::move(model)) {
  const auto count = model_->state_count();
  if (!count || *count > cap) {
    throw Error(ErrorKind::TooLarge, model_->describe() + " has " + format_double(model_->state_count_real()) +
                                         " states, above the enumeration cap " + std::to_string(cap));
  }
  const auto n = static_cast<std::size_t>(*count);
  graph_ = StateGraph(n);
  std::vector<SparseDistribution<Rational>> rows;
  rows.reserve(n);
  for (StateIndex x = 0; x < n; ++x) {
    const Configuration c = model_->unrank(x);
    std::vector<std::pair<StateIndex, Rational>> entries;
    for (auto& [next, w] : model_->kernel_row(c)) entries.emplace_back(index_of(next), std::move(w));
    for (const auto& nb : model_->neighbors(c)) {
      const StateIndex y = index_of(nb);
      if (x < y) graph_.add_edge(x, y);
    }
    rows.emplace_back(std::move(entries));
    if (sgn(rows.back().mass(x)) > 0) graph_.add_edge(x, x);
  }
  kernel_ = WalkKernel<Rational>(std::move(rows));
  require_compatible(kernel_, graph_);
  kernel_double_ = kernel_.to_double_kernel();
  if (n <= StateGraph::kMaxCachedStates) graph_.build_distance_cache();
}

StateIndex GeometrizedSpace::index_of(const Configuration& c) const {
  const std::uint64_t r = model_->rank(c);
  if (r >= state_count()) throw Error(ErrorKind::OutOfRange, "configuration rank outside the enumerated space");
  return static_cast<StateIndex>(r);
}

SparseDistribution<Rational> GeometrizedSpace::claimed_nu_distribution() const {
  std::vector<std::pair<StateIndex, Rational>> entries;
  entries.reserve(state_count());
  for (StateIndex x = 0; x < state_count(); ++x) entries.emplace_back(x, claimed_nu(x));
  return SparseDistribution<Rational>(std::move(entries));
}

Coupling<Rational> GeometrizedSpace::proof_coupling(StateIndex x, StateIndex y) const {
  if (x == y || !graph_.adjacent(x, y)) {
    throw Error(ErrorKind::NotAnEdge, std::to_string(x) + "-" + std::to_string(y) + " is not an edge");
  }
  Coupling<Rational> out;
  for (auto& cell : model_->proof_coupling(configuration(x), configuration(y))) {
    out.cells.push_back({index_of(cell.from), index_of(cell.to), std::move(cell.weight)});
  }
  out.normalize();
  return out;
}

GeometrizedSpace build_gnp(unsigned n, const Rational& p, std::uint64_t cap) {
  return GeometrizedSpace(make_gnp_model(n, p), cap);
}
GeometrizedSpace build_gnm(unsigned n, std::uint64_t M, std::uint64_t cap) {
  return GeometrizedSpace(make_gnm_model(n, M), cap);
}
GeometrizedSpace build_hypergraph(unsigned n, unsigned k, std::uint64_t M, std::uint64_t cap) {
  return GeometrizedSpace(make_hypergraph_model(n, k, M), cap);
}
GeometrizedSpace build_doutregular(unsigned n, unsigned d, std::uint64_t cap) {
  return GeometrizedSpace(make_doutregular_model(n, d), cap);
}
GeometrizedSpace build_permutation_insertion(unsigned n, std::uint64_t cap) {
  return GeometrizedSpace(make_permutation_insertion_model(n), cap);
}
GeometrizedSpace build_permutation_transposition(unsigned n, const Rational& lazy, std::uint64_t cap) {
  return GeometrizedSpace(make_permutation_transposition_model(n, lazy), cap);
}

}  // namespace ricci
