#include "ricci/models.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "ricci/combinatorics.hpp"
#include "ricci/error.hpp"

namespace ricci {

namespace {

constexpr std::uint64_t bit(unsigned i) { return std::uint64_t{1} << i; }

Rational power(const Rational& base, unsigned exponent) {
  Rational out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

Rational exact_binomial(unsigned long n, unsigned long k) {
  mpz_class value;
  mpz_bin_uiui(value.get_mpz_t(), n, k);
  return Rational(value);
}

// Exact Bernoulli(p) draw for rational p = a/b.
bool coin(Rng& rng, const Rational& p) {
  const std::uint64_t den = p.get_den().get_ui();
  const std::uint64_t num = p.get_num().get_ui();
  return uniform_below(rng, den) < num;
}

// Uniformly random k-subset of {0..n-1} as a bitmask (partial Fisher-Yates).
std::uint64_t random_subset(Rng& rng, unsigned n, unsigned k) {
  std::vector<unsigned> items(n);
  for (unsigned i = 0; i < n; ++i) items[i] = i;
  std::uint64_t mask = 0;
  for (unsigned i = 0; i < k; ++i) {
    const auto j = i + static_cast<unsigned>(uniform_below(rng, n - i));
    std::swap(items[i], items[j]);
    mask |= bit(items[i]);
  }
  return mask;
}

void require_neighbors(const ConfigurationModel& model, const Configuration& x, const Configuration& y) {
  if (x == y) throw Error(ErrorKind::NotAnEdge, "coupling needs two distinct adjacent configurations");
  const auto nbrs = model.neighbors(x);
  if (std::find(nbrs.begin(), nbrs.end(), y) == nbrs.end()) {
    throw Error(ErrorKind::NotAnEdge, model.format(x) + " and " + model.format(y) + " are not adjacent");
  }
}

std::string vertex_set_string(std::uint64_t mask) {
  std::string out;
  for (unsigned v : bit_positions(mask)) out += std::to_string(v);
  return out;
}

// ---------------------------------------------------------------------------
// G(n,p): H joins graphs that agree after deleting one vertex; the walk picks
// a vertex uniformly and resamples its incident pairs with independent coins.

class GnpModel final : public ConfigurationModel {
 public:
  GnpModel(unsigned n, const Rational& p) : ConfigurationModel(ModelParams{.n = n, .p = p}) {
    if (n < 2) throw Error(ErrorKind::BadParams, "G(n,p) needs n >= 2");
    if (sgn(p) <= 0 || p >= 1) throw Error(ErrorKind::BadParams, "G(n,p) needs 0 < p < 1");
    pairs_ = n * (n - 1) / 2;
    if (pairs_ > 63) throw Error(ErrorKind::TooLarge, "G(n,p) supports n <= 11");
    incident_.assign(n, 0);
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = i + 1; j < n; ++j) {
        incident_[i] |= bit(pair_index(n, i, j));
        incident_[j] |= bit(pair_index(n, i, j));
      }
    }
    const Rational q = Rational(1) - p;
    for (unsigned k = 0; k < n; ++k) {
      resample_weight_.push_back(Rational(power(p, k) * power(q, n - 1 - k) / Rational(n)));
    }
  }

  ModelKind kind() const noexcept override { return ModelKind::Gnp; }
  std::string describe() const override {
    return "gnp(n=" + std::to_string(params().n) + ",p=" + to_string(params().p) + ")";
  }
  std::optional<std::uint64_t> state_count() const override { return bit(pairs_); }
  double state_count_real() const override { return std::ldexp(1.0, static_cast<int>(pairs_)); }
  std::uint64_t rank(const Configuration& c) const override { return c.at(0); }
  Configuration unrank(std::uint64_t index) const override { return {index}; }

  std::vector<std::pair<Configuration, Rational>> kernel_row(const Configuration& c) const override {
    std::map<std::uint64_t, Rational> row;
    for (unsigned v = 0; v < params().n; ++v) {
      for_each_resample(c[0], v, [&](std::uint64_t next, unsigned k) { row[next] += resample_weight_[k]; });
    }
    std::vector<std::pair<Configuration, Rational>> out;
    for (auto& [mask, w] : row) out.push_back({{mask}, w});
    return out;
  }

  std::vector<Configuration> neighbors(const Configuration& c) const override {
    std::set<std::uint64_t> seen;
    for (unsigned v = 0; v < params().n; ++v) {
      for_each_resample(c[0], v, [&](std::uint64_t next, unsigned) {
        if (next != c[0]) seen.insert(next);
      });
    }
    std::vector<Configuration> out;
    for (auto mask : seen) out.push_back({mask});
    return out;
  }

  Rational claimed_nu(const Configuration& c) const override {
    const auto edges = static_cast<unsigned>(std::popcount(c.at(0)));
    return Rational(power(params().p, edges) * power(Rational(1) - params().p, pairs_ - edges));
  }
  std::optional<Rational> claimed_kappa_lb() const override { return fraction(1, params().n); }

  Configuration sample(Rng& rng) const override {
    std::uint64_t mask = 0;
    for (unsigned i = 0; i < pairs_; ++i) {
      if (coin(rng, params().p)) mask |= bit(i);
    }
    return {mask};
  }

  std::vector<ConfigurationCell> proof_coupling(const Configuration& x, const Configuration& y) const override {
    require_neighbors(*this, x, y);
    // Both sides pick the same vertex w and the same coins. x and y differ
    // only at pairs through some vertex v, and resampling w never adds a
    // difference, so the outcomes coincide (w = v) or stay adjacent.
    std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> cells;
    for (unsigned w = 0; w < params().n; ++w) {
      for_each_resample(x[0], w, [&](std::uint64_t next_x, unsigned k) {
        const std::uint64_t next_y = (y[0] & ~incident_[w]) | (next_x & incident_[w]);
        cells[{next_x, next_y}] += resample_weight_[k];
      });
    }
    std::vector<ConfigurationCell> out;
    for (auto& [key, w] : cells) out.push_back({{key.first}, {key.second}, w});
    return out;
  }

  std::string format(const Configuration& c) const override {
    std::string out = "{";
    const unsigned n = params().n;
    bool first = true;
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = i + 1; j < n; ++j) {
        if (c.at(0) & bit(pair_index(n, i, j))) {
          if (!first) out += ",";
          out += std::to_string(i) + "-" + std::to_string(j);
          first = false;
        }
      }
    }
    return out + "}";
  }

 private:
  template <class Fn>
  void for_each_resample(std::uint64_t mask, unsigned v, Fn&& fn) const {
    const auto positions = bit_positions(incident_[v]);
    const std::uint64_t base = mask & ~incident_[v];
    for (std::uint64_t bits = 0; bits < bit(static_cast<unsigned>(positions.size())); ++bits) {
      std::uint64_t next = base;
      for (unsigned j = 0; j < positions.size(); ++j) {
        if (bits & bit(j)) next |= bit(positions[j]);
      }
      fn(next, static_cast<unsigned>(std::popcount(bits)));
    }
  }

  unsigned pairs_ = 0;
  std::vector<std::uint64_t> incident_;
  std::vector<Rational> resample_weight_;
};

// ---------------------------------------------------------------------------
// G(n,M) and H^k(n,M): M-subsets of a ground set of N items, adjacent when
// one is obtained from the other by swapping an item for a non-item.

class SwapModel final : public ConfigurationModel {
 public:
  SwapModel(ModelKind kind, unsigned n, unsigned k, std::uint64_t M)
      : ConfigurationModel(ModelParams{.n = n, .M = M, .k = k}), kind_(kind) {
    if (kind == ModelKind::GnM) {
      if (n < 2) throw Error(ErrorKind::BadParams, "G(n,M) needs n >= 2");
      if (n > 11) throw Error(ErrorKind::TooLarge, "G(n,M) supports n <= 11");
      for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = i + 1; j < n; ++j) items_.push_back(bit(i) | bit(j));
      }
    } else {
      if (k < 2 || k > n) throw Error(ErrorKind::BadParams, "hypergraph model needs 2 <= k <= n");
      const auto count = binomial_checked(n, k);
      if (!count || *count > 64) throw Error(ErrorKind::TooLarge, "hypergraph model needs C(n,k) <= 64");
      items_ = all_subsets(n, k);
    }
    ground_ = static_cast<unsigned>(items_.size());
    if (M < 1 || M + 1 > ground_) {
      throw Error(kind == ModelKind::GnM ? ErrorKind::BadM : ErrorKind::BadParams,
                  "M must lie in [1, " + std::to_string(ground_ - 1) + "]");
    }
    weight_ = fraction(1, static_cast<unsigned long>(M * (ground_ - M) + 1));
  }

  ModelKind kind() const noexcept override { return kind_; }
  std::string describe() const override {
    if (kind_ == ModelKind::GnM) {
      return "gnm(n=" + std::to_string(params().n) + ",M=" + std::to_string(params().M) + ")";
    }
    return "hyper(n=" + std::to_string(params().n) + ",k=" + std::to_string(params().k) +
           ",M=" + std::to_string(params().M) + ")";
  }
  std::optional<std::uint64_t> state_count() const override { return binomial_checked(ground_, params().M); }
  double state_count_real() const override { return binomial_real(ground_, params().M); }
  std::uint64_t rank(const Configuration& c) const override { return subset_rank(c.at(0)); }
  Configuration unrank(std::uint64_t index) const override {
    return {subset_unrank(index, static_cast<unsigned>(params().M))};
  }

  std::vector<std::pair<Configuration, Rational>> kernel_row(const Configuration& c) const override {
    std::vector<std::pair<Configuration, Rational>> out{{c, weight_}};
    for (auto& nb : neighbors(c)) out.emplace_back(std::move(nb), weight_);
    return out;
  }

  std::vector<Configuration> neighbors(const Configuration& c) const override {
    std::vector<Configuration> out;
    const std::uint64_t mask = c.at(0);
    for (unsigned a : bit_positions(mask)) {
      for (unsigned b = 0; b < ground_; ++b) {
        if (!(mask & bit(b))) out.push_back({(mask & ~bit(a)) | bit(b)});
      }
    }
    return out;
  }

  Rational claimed_nu(const Configuration&) const override {
    return Rational(1 / exact_binomial(ground_, params().M));
  }
  std::optional<Rational> claimed_kappa_lb() const override { return Rational(weight_ * ground_); }

  Configuration sample(Rng& rng) const override {
    return {random_subset(rng, ground_, static_cast<unsigned>(params().M))};
  }

  std::vector<ConfigurationCell> proof_coupling(const Configuration& x, const Configuration& y) const override {
    require_neighbors(*this, x, y);
    const std::uint64_t removed = x[0] & ~y[0];  // e1
    const std::uint64_t added = y[0] & ~x[0];    // e2
    std::vector<ConfigurationCell> out{{x, x, weight_}};
    for (const auto& nb : neighbors(x)) {
      const std::uint64_t a = x[0] & ~nb[0];
      const std::uint64_t b = nb[0] & ~x[0];
      if (a == removed || b == added) {
        // x itself maps to x, y to y; the other two types already lie in N(y).
        out.push_back({nb, nb, weight_});
      } else {
        out.push_back({nb, {(y[0] & ~a) | b}, weight_});
      }
    }
    return out;
  }

  std::string format(const Configuration& c) const override {
    std::string out = "{";
    bool first = true;
    for (unsigned i : bit_positions(c.at(0))) {
      if (!first) out += ",";
      const auto vs = bit_positions(items_[i]);
      if (kind_ == ModelKind::GnM) {
        out += std::to_string(vs[0]) + "-" + std::to_string(vs[1]);
      } else {
        out += vertex_set_string(items_[i]);
      }
      first = false;
    }
    return out + "}";
  }

 private:
  ModelKind kind_;
  std::vector<std::uint64_t> items_;
  unsigned ground_ = 0;
  Rational weight_;
};

// ---------------------------------------------------------------------------
// d-out-regular digraphs: adjacent when exactly one vertex changed its
// out-neighborhood.

class DOutRegularModel final : public ConfigurationModel {
 public:
  DOutRegularModel(unsigned n, unsigned d) : ConfigurationModel(ModelParams{.n = n, .d = d}) {
    if (n < 3 || d < 1 || d + 2 > n) throw Error(ErrorKind::BadParams, "d-out-regular model needs 1 <= d <= n-2");
    if (n > 20) throw Error(ErrorKind::TooLarge, "d-out-regular model supports n <= 20");
    choices_ = binomial(n - 1, d);
    choice_masks_.resize(n);
    for (unsigned v = 0; v < n; ++v) {
      for (std::uint64_t compressed : all_subsets(n - 1, d)) choice_masks_[v].push_back(expand(compressed, v));
    }
    weight_ = fraction(1, static_cast<unsigned long>(n * (choices_ - 1) + 1));
  }

  ModelKind kind() const noexcept override { return ModelKind::DOutRegular; }
  std::string describe() const override {
    return "doutreg(n=" + std::to_string(params().n) + ",d=" + std::to_string(params().d) + ")";
  }
  std::optional<std::uint64_t> state_count() const override {
    std::uint64_t total = 1;
    for (unsigned v = 0; v < params().n; ++v) {
      if (total > ~std::uint64_t{0} / choices_) return std::nullopt;
      total *= choices_;
    }
    return total;
  }
  double state_count_real() const override { return std::pow(static_cast<double>(choices_), params().n); }

  std::uint64_t rank(const Configuration& c) const override {
    std::uint64_t r = 0;
    for (unsigned v = 0; v < params().n; ++v) r = r * choices_ + subset_rank(compress(c.at(v), v));
    return r;
  }
  Configuration unrank(std::uint64_t index) const override {
    Configuration c(params().n);
    for (unsigned v = params().n; v-- > 0;) {
      c[v] = choice_masks_[v][index % choices_];
      index /= choices_;
    }
    return c;
  }

  std::vector<std::pair<Configuration, Rational>> kernel_row(const Configuration& c) const override {
    std::vector<std::pair<Configuration, Rational>> out{{c, weight_}};
    for (auto& nb : neighbors(c)) out.emplace_back(std::move(nb), weight_);
    return out;
  }

  std::vector<Configuration> neighbors(const Configuration& c) const override {
    std::vector<Configuration> out;
    for (unsigned v = 0; v < params().n; ++v) {
      for (std::uint64_t choice : choice_masks_[v]) {
        if (choice == c.at(v)) continue;
        Configuration next = c;
        next[v] = choice;
        out.push_back(std::move(next));
      }
    }
    return out;
  }

  Rational claimed_nu(const Configuration&) const override {
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), choices_, params().n);
    return Rational(mpz_class(1), total);
  }
  std::optional<Rational> claimed_kappa_lb() const override { return Rational(weight_ * choices_); }

  Configuration sample(Rng& rng) const override {
    Configuration c(params().n);
    for (unsigned v = 0; v < params().n; ++v) {
      c[v] = expand(random_subset(rng, params().n - 1, params().d), v);
    }
    return c;
  }

  std::vector<ConfigurationCell> proof_coupling(const Configuration& x, const Configuration& y) const override {
    require_neighbors(*this, x, y);
    unsigned changed = 0;
    while (x[changed] == y[changed]) ++changed;
    std::vector<ConfigurationCell> out{{x, x, weight_}};
    for (const auto& nb : neighbors(x)) {
      unsigned u = 0;
      while (nb[u] == x[u]) ++u;
      if (u == changed) {
        out.push_back({nb, nb, weight_});
      } else {
        Configuration image = y;
        image[u] = nb[u];
        out.push_back({nb, std::move(image), weight_});
      }
    }
    return out;
  }

  std::string format(const Configuration& c) const override {
    std::string out;
    for (unsigned v = 0; v < params().n; ++v) {
      if (v) out += "|";
      out += std::to_string(v) + ">" + vertex_set_string(c.at(v));
    }
    return out;
  }

 private:
  // Maps a subset of the n-1 vertices other than v (indices shifted past v)
  // to a vertex mask, and back.
  static std::uint64_t expand(std::uint64_t compressed, unsigned v) {
    const std::uint64_t low = compressed & (bit(v) - 1);
    const std::uint64_t high = compressed & ~(bit(v) - 1);
    return low | (high << 1);
  }
  static std::uint64_t compress(std::uint64_t mask, unsigned v) {
    const std::uint64_t low = mask & (bit(v) - 1);
    const std::uint64_t high = (mask >> 1) & ~(bit(v) - 1);
    return low | high;
  }

  std::uint64_t choices_ = 0;
  std::vector<std::vector<std::uint64_t>> choice_masks_;
  Rational weight_;
};

// ---------------------------------------------------------------------------
// Linear permutations.

std::string format_permutation(const Configuration& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(c[i]);
  }
  return out + "]";
}

void check_permutation_size(unsigned n) {
  if (n < 2) throw Error(ErrorKind::BadParams, "permutation models need n >= 2");
  if (n > 20) throw Error(ErrorKind::TooLarge, "permutation models support n <= 20");
}

std::uint64_t factorial(unsigned n) {
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

Configuration random_permutation(Rng& rng, unsigned n) {
  Configuration c(n);
  for (unsigned i = 0; i < n; ++i) c[i] = i + 1;
  shuffle(std::span<std::uint64_t>(c), rng);
  return c;
}

struct LabeledNeighbor {
  Configuration perm;
  std::uint64_t element;
  std::uint64_t after;
};

// Distinct insertion-alike neighbors with the first (element, after) move
// producing each.
std::vector<LabeledNeighbor> insertion_neighbors(const Configuration& c) {
  std::vector<LabeledNeighbor> out;
  std::set<Configuration> seen{c};
  for (std::uint64_t element : c) {
    if (seen.insert(insertion_move(c, element, 0)).second) out.push_back({insertion_move(c, element, 0), element, 0});
    for (std::uint64_t after : c) {
      if (after == element) continue;
      auto next = insertion_move(c, element, after);
      if (seen.insert(next).second) out.push_back({std::move(next), element, after});
    }
  }
  return out;
}

class PermutationInsertionModel final : public ConfigurationModel {
 public:
  explicit PermutationInsertionModel(unsigned n) : ConfigurationModel(ModelParams{.n = n}) {
    check_permutation_size(n);
    weight_ = fraction(1, (n - 1) * (n - 1) + 1);
  }

  ModelKind kind() const noexcept override { return ModelKind::PermInsertion; }
  std::string describe() const override { return "perm-ins(n=" + std::to_string(params().n) + ")"; }
  std::optional<std::uint64_t> state_count() const override { return factorial(params().n); }
  double state_count_real() const override { return std::tgamma(params().n + 1.0); }
  std::uint64_t rank(const Configuration& c) const override { return permutation_rank(c); }
  Configuration unrank(std::uint64_t index) const override { return permutation_unrank(index, params().n); }

  std::vector<std::pair<Configuration, Rational>> kernel_row(const Configuration& c) const override {
    std::vector<std::pair<Configuration, Rational>> out{{c, weight_}};
    for (auto& nb : neighbors(c)) out.emplace_back(std::move(nb), weight_);
    return out;
  }

  std::vector<Configuration> neighbors(const Configuration& c) const override {
    std::vector<Configuration> out;
    for (auto& labeled : insertion_neighbors(c)) out.push_back(std::move(labeled.perm));
    return out;
  }

  Rational claimed_nu(const Configuration&) const override {
    return Rational(mpz_class(1), mpz_class(std::to_string(factorial(params().n))));
  }
  std::optional<Rational> claimed_kappa_lb() const override { return Rational(weight_ * params().n); }

  Configuration sample(Rng& rng) const override { return random_permutation(rng, params().n); }

  std::vector<ConfigurationCell> proof_coupling(const Configuration& x, const Configuration& y) const override;

  std::string format(const Configuration& c) const override { return format_permutation(c); }

 private:
  Rational weight_;
};

std::vector<ConfigurationCell> PermutationInsertionModel::proof_coupling(const Configuration& x,
                                                                        const Configuration& y) const {
  require_neighbors(*this, x, y);
  const auto x_neighbors = insertion_neighbors(x);
  std::set<Configuration> closed_x{x};
  for (const auto& nb : x_neighbors) closed_x.insert(nb.perm);
  std::set<Configuration> closed_y{y};
  for (const auto& nb : insertion_neighbors(y)) closed_y.insert(nb.perm);

  std::vector<ConfigurationCell> out;
  for (const auto& c : closed_x) {
    if (closed_y.count(c)) out.push_back({c, c, weight_});
  }

  // Left: N(x)\N(y) with their moves; right: N(y)\N(x).
  std::vector<const LabeledNeighbor*> left;
  for (const auto& nb : x_neighbors) {
    if (!closed_y.count(nb.perm)) left.push_back(&nb);
  }
  std::vector<Configuration> right;
  for (const auto& c : closed_y) {
    if (!closed_x.count(c)) right.push_back(c);
  }
  std::map<Configuration, std::size_t> right_index;
  for (std::size_t j = 0; j < right.size(); ++j) right_index[right[j]] = j;

  // Adjacency (distance 1) between the two sides.
  std::vector<std::vector<std::size_t>> adjacent(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (const auto& nb : insertion_neighbors(left[i]->perm)) {
      const auto it = right_index.find(nb.perm);
      if (it != right_index.end()) adjacent[i].push_back(it->second);
    }
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match_left(left.size(), kNone);
  std::vector<std::size_t> match_right(right.size(), kNone);
  // Seed with the textbook map: replay x's move on y.
  for (std::size_t i = 0; i < left.size(); ++i) {
    const auto image = insertion_move(y, left[i]->element, left[i]->after);
    const auto it = right_index.find(image);
    if (it == right_index.end() || match_right[it->second] != kNone) continue;
    if (std::find(adjacent[i].begin(), adjacent[i].end(), it->second) == adjacent[i].end()) continue;
    match_left[i] = it->second;
    match_right[it->second] = i;
  }
  // Repair collisions with augmenting paths (Kuhn).
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (match_left[i] != kNone) continue;
    std::vector<bool> visited(right.size(), false);
    auto augment = [&](auto&& self, std::size_t u) -> bool {
      for (std::size_t r : adjacent[u]) {
        if (visited[r]) continue;
        visited[r] = true;
        if (match_right[r] == kNone || self(self, match_right[r])) {
          match_left[u] = r;
          match_right[r] = u;
          return true;
        }
      }
      return false;
    };
    augment(augment, i);
  }
  // Anything still unmatched is paired in order (cost > 1 per pair).
  std::size_t next_free = 0;
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (match_left[i] == kNone) {
      while (match_right[next_free] != kNone) ++next_free;
      match_left[i] = next_free;
      match_right[next_free] = i;
    }
    out.push_back({left[i]->perm, right[match_left[i]], weight_});
  }
  return out;
}

class PermutationTranspositionModel final : public ConfigurationModel {
 public:
  PermutationTranspositionModel(unsigned n, const Rational& lazy)
      : ConfigurationModel(ModelParams{.n = n, .lazy = lazy}) {
    check_permutation_size(n);
    if (sgn(lazy) < 0 || lazy >= 1) throw Error(ErrorKind::BadParams, "laziness must lie in [0, 1)");
    move_weight_ = Rational((Rational(1) - lazy) * fraction(2, n * (n - 1)));
  }

  ModelKind kind() const noexcept override { return ModelKind::PermTransposition; }
  std::string describe() const override {
    std::string out = "perm-trans(n=" + std::to_string(params().n);
    if (sgn(params().lazy) != 0) out += ",lazy=" + to_string(params().lazy);
    return out + ")";
  }
  std::optional<std::uint64_t> state_count() const override { return factorial(params().n); }
  double state_count_real() const override { return std::tgamma(params().n + 1.0); }
  std::uint64_t rank(const Configuration& c) const override { return permutation_rank(c); }
  Configuration unrank(std::uint64_t index) const override { return permutation_unrank(index, params().n); }

  std::vector<std::pair<Configuration, Rational>> kernel_row(const Configuration& c) const override {
    std::vector<std::pair<Configuration, Rational>> out;
    if (sgn(params().lazy) != 0) out.emplace_back(c, params().lazy);
    for (auto& nb : neighbors(c)) out.emplace_back(std::move(nb), move_weight_);
    return out;
  }

  std::vector<Configuration> neighbors(const Configuration& c) const override {
    std::vector<Configuration> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        Configuration next = c;
        std::swap(next[i], next[j]);
        out.push_back(std::move(next));
      }
    }
    return out;
  }

  Rational claimed_nu(const Configuration&) const override {
    return Rational(mpz_class(1), mpz_class(std::to_string(factorial(params().n))));
  }
  std::optional<Rational> claimed_kappa_lb() const override { return std::nullopt; }
  Configuration sample(Rng& rng) const override { return random_permutation(rng, params().n); }
  std::string format(const Configuration& c) const override { return format_permutation(c); }

 private:
  Rational move_weight_;
};

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Gnp: return "gnp";
    case ModelKind::GnM: return "gnm";
    case ModelKind::Hypergraph: return "hyper";
    case ModelKind::DOutRegular: return "doutreg";
    case ModelKind::PermInsertion: return "perm-ins";
    case ModelKind::PermTransposition: return "perm-trans";
  }
  return "gnp";
}

ModelKind parse_model_kind(std::string_view name) {
  for (auto kind : {ModelKind::Gnp, ModelKind::GnM, ModelKind::Hypergraph, ModelKind::DOutRegular,
                    ModelKind::PermInsertion, ModelKind::PermTransposition}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorKind::InvalidInput, "unknown model '" + std::string(name) + "'");
}

std::vector<ConfigurationCell> ConfigurationModel::proof_coupling(const Configuration&, const Configuration&) const {
  throw Error(ErrorKind::UnsupportedModel, describe() + " has no explicit proof coupling");
}

Configuration insertion_move(const Configuration& perm, std::uint64_t element, std::uint64_t after) {
  Configuration out;
  out.reserve(perm.size());
  if (after == 0) out.push_back(element);
  for (std::uint64_t v : perm) {
    if (v == element) continue;
    out.push_back(v);
    if (v == after) out.push_back(element);
  }
  if (out.size() != perm.size()) {
    throw Error(ErrorKind::InvalidInput, "insertion move references a value outside the permutation");
  }
  return out;
}

bool is_alike(const Configuration& a, const Configuration& b, std::uint64_t element, std::uint64_t after) {
  return element != after && insertion_move(a, element, after) == b;
}

std::unique_ptr<ConfigurationModel> make_gnp_model(unsigned n, const Rational& p) {
  return std::make_unique<GnpModel>(n, p);
}
std::unique_ptr<ConfigurationModel> make_gnm_model(unsigned n, std::uint64_t M) {
  return std::make_unique<SwapModel>(ModelKind::GnM, n, 2, M);
}
std::unique_ptr<ConfigurationModel> make_hypergraph_model(unsigned n, unsigned k, std::uint64_t M) {
  return std::make_unique<SwapModel>(ModelKind::Hypergraph, n, k, M);
}
std::unique_ptr<ConfigurationModel> make_doutregular_model(unsigned n, unsigned d) {
  return std::make_unique<DOutRegularModel>(n, d);
}
std::unique_ptr<ConfigurationModel> make_permutation_insertion_model(unsigned n) {
  return std::make_unique<PermutationInsertionModel>(n);
}
std::unique_ptr<ConfigurationModel> make_permutation_transposition_model(unsigned n, const Rational& lazy) {
  return std::make_unique<PermutationTranspositionModel>(n, lazy);
}

std::unique_ptr<ConfigurationModel> make_model(ModelKind kind, const ModelParams& params) {
  switch (kind) {
    case ModelKind::Gnp: return make_gnp_model(params.n, params.p);
    case ModelKind::GnM: return make_gnm_model(params.n, params.M);
    case ModelKind::Hypergraph: return make_hypergraph_model(params.n, params.k, params.M);
    case ModelKind::DOutRegular: return make_doutregular_model(params.n, params.d);
    case ModelKind::PermInsertion: return make_permutation_insertion_model(params.n);
    case ModelKind::PermTransposition: return make_permutation_transposition_model(params.n, params.lazy);
  }
  throw Error(ErrorKind::InvalidInput, "unknown model");
}

}  // namespace ricci
