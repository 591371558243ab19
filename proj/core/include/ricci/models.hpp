#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ricci/random.hpp"
#include "ricci/scalar.hpp"

namespace ricci {

enum class ModelKind { Gnp, GnM, Hypergraph, DOutRegular, PermInsertion, PermTransposition };

std::string_view to_string(ModelKind kind) noexcept;
/// CLI names: gnp, gnm, hyper, doutreg, perm-ins, perm-trans.
ModelKind parse_model_kind(std::string_view name);

/// Canonical configuration encoding:
///   Gnp, GnM: one word, bitset over the C(n,2) vertex pairs (pair_index order)
///   Hypergraph: one word, bitset over the C(n,k) k-sets (colex order)
///   DOutRegular: n words, word v is the out-neighborhood bitmask of v
///   permutations: n words, the one-line notation over {1..n}
using Configuration = std::vector<std::uint64_t>;

struct ModelParams {
  unsigned n = 0;
  Rational p{1, 2};
  std::uint64_t M = 0;
  unsigned k = 2;
  unsigned d = 1;
  /// Self-mass of the transposition walk (0 reproduces the plain model).
  Rational lazy{0};
};

struct ConfigurationCell {
  Configuration from;
  Configuration to;
  Rational weight;
};

/// One random configuration space together with its walk. Everything here
/// works on configurations directly, so sampling-only use never enumerates.
class ConfigurationModel {
 public:
  virtual ~ConfigurationModel() = default;

  virtual ModelKind kind() const noexcept = 0;
  const ModelParams& params() const noexcept { return params_; }
  /// e.g. "gnm(n=4,M=2)".
  virtual std::string describe() const = 0;

  /// Number of configurations; nullopt when it exceeds 64 bits.
  virtual std::optional<std::uint64_t> state_count() const = 0;
  /// Closed-form count as a real number, always available.
  virtual double state_count_real() const = 0;

  virtual std::uint64_t rank(const Configuration& c) const = 0;
  virtual Configuration unrank(std::uint64_t index) const = 0;

  /// m_c as (configuration, probability) pairs, each configuration once.
  virtual std::vector<std::pair<Configuration, Rational>> kernel_row(const Configuration& c) const = 0;
  /// Open neighborhood of c in H.
  virtual std::vector<Configuration> neighbors(const Configuration& c) const = 0;

  virtual Rational claimed_nu(const Configuration& c) const = 0;
  virtual std::optional<Rational> claimed_kappa_lb() const = 0;

  /// Exact draw from claimed_nu.
  virtual Configuration sample(Rng& rng) const = 0;

  /// The explicit matching coupling of m_x and m_y from the curvature
  /// argument for adjacent x, y. Throws NotAnEdge, UnsupportedModel.
  virtual std::vector<ConfigurationCell> proof_coupling(const Configuration& x, const Configuration& y) const;

  virtual std::string format(const Configuration& c) const = 0;

 protected:
  explicit ConfigurationModel(ModelParams params) : params_(std::move(params)) {}

 private:
  ModelParams params_;
};

std::unique_ptr<ConfigurationModel> make_gnp_model(unsigned n, const Rational& p);
std::unique_ptr<ConfigurationModel> make_gnm_model(unsigned n, std::uint64_t M);
std::unique_ptr<ConfigurationModel> make_hypergraph_model(unsigned n, unsigned k, std::uint64_t M);
std::unique_ptr<ConfigurationModel> make_doutregular_model(unsigned n, unsigned d);
std::unique_ptr<ConfigurationModel> make_permutation_insertion_model(unsigned n);
std::unique_ptr<ConfigurationModel> make_permutation_transposition_model(unsigned n, const Rational& lazy = Rational(0));

std::unique_ptr<ConfigurationModel> make_model(ModelKind kind, const ModelParams& params);

/// Insertion-alike move: remove `element` and reinsert it right after
/// `after` (0 = front). Returns the resulting one-line permutation.
Configuration insertion_move(const Configuration& perm, std::uint64_t element, std::uint64_t after);

/// True when b is obtained from a by moving `element` after `after`.
bool is_alike(const Configuration& a, const Configuration& b, std::uint64_t element, std::uint64_t after);

}  // namespace ricci
