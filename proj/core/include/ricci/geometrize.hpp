#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ricci/distribution.hpp"
#include "ricci/graph.hpp"
#include "ricci/models.hpp"
#include "ricci/random.hpp"
#include "ricci/transport.hpp"

namespace ricci {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

/// The cap from RICCI_CONC_CAP when set to a positive integer, else 2^20.
std::uint64_t enumeration_cap();

/// A configuration model with its state space enumerated: the graph H (with
/// a loop wherever the walk has self-mass), the walk kernel in exact and
/// float form, and the index <-> configuration codec. State i is the
/// configuration of rank i.
class GeometrizedSpace {
 public:
  /// Throws TooLarge when the model has more than `cap` states.
  GeometrizedSpace(std::shared_ptr<const ConfigurationModel> model, std::uint64_t cap = enumeration_cap());

  const ConfigurationModel& model() const noexcept { return *model_; }
  std::shared_ptr<const ConfigurationModel> model_ptr() const noexcept { return model_; }
  std::size_t state_count() const noexcept { return graph_.state_count(); }

  const StateGraph& graph() const noexcept { return graph_; }
  const WalkKernel<Rational>& kernel() const noexcept { return kernel_; }
  const WalkKernel<double>& kernel_double() const noexcept { return kernel_double_; }

  Configuration configuration(StateIndex x) const { return model_->unrank(x); }
  StateIndex index_of(const Configuration& c) const;

  Rational claimed_nu(StateIndex x) const { return model_->claimed_nu(configuration(x)); }
  /// claimed_nu over all states as a distribution (validated to sum to 1).
  SparseDistribution<Rational> claimed_nu_distribution() const;
  std::optional<Rational> claimed_kappa_lb() const { return model_->claimed_kappa_lb(); }

  /// The explicit matching coupling of m_x and m_y for an edge xy.
  /// Throws NotAnEdge, UnsupportedModel.
  Coupling<Rational> proof_coupling(StateIndex x, StateIndex y) const;

  /// Exact draw from claimed_nu.
  StateIndex direct_sample(Rng& rng) const { return index_of(model_->sample(rng)); }

 private:
  std::shared_ptr<const ConfigurationModel> model_;
  StateGraph graph_;
  WalkKernel<Rational> kernel_;
  WalkKernel<double> kernel_double_;
};

GeometrizedSpace build_gnp(unsigned n, const Rational& p, std::uint64_t cap = enumeration_cap());
GeometrizedSpace build_gnm(unsigned n, std::uint64_t M, std::uint64_t cap = enumeration_cap());
GeometrizedSpace build_hypergraph(unsigned n, unsigned k, std::uint64_t M, std::uint64_t cap = enumeration_cap());
GeometrizedSpace build_doutregular(unsigned n, unsigned d, std::uint64_t cap = enumeration_cap());
GeometrizedSpace build_permutation_insertion(unsigned n, std::uint64_t cap = enumeration_cap());
GeometrizedSpace build_permutation_transposition(unsigned n, const Rational& lazy = Rational(0),
                                                 std::uint64_t cap = enumeration_cap());

}  // namespace ricci
