#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ricci/error.hpp"
#include "ricci/graph.hpp"
#include "ricci/scalar.hpp"

namespace ricci {

/// Finitely supported probability distribution over state indices. Entries
/// are kept sorted by state with distinct states and strictly positive mass.
template <Scalar T>
class SparseDistribution {
 public:
  using Entry = std::pair<StateIndex, T>;

  SparseDistribution() = default;

  /// Builds from unsorted entries. Duplicate states are merged and zero
  /// weights dropped; negative weights or a total away from 1 throw.
  explicit SparseDistribution(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> merged;
    merged.reserve(entries_.size());
    for (auto& e : entries_) {
      if (!merged.empty() && merged.back().first == e.first) {
        merged.back().second += e.second;
      } else {
        merged.push_back(std::move(e));
      }
    }
    std::erase_if(merged, [](const Entry& e) { return e.second == T(0); });
    entries_ = std::move(merged);
    validate();
  }

  static SparseDistribution dirac(StateIndex x) { return SparseDistribution({{x, T(1)}}); }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  T mass(StateIndex x) const {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                                     [](const Entry& e, StateIndex s) { return e.first < s; });
    return (it != entries_.end() && it->first == x) ? it->second : T(0);
  }

  std::vector<StateIndex> support() const {
    std::vector<StateIndex> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.first);
    return out;
  }

  T total() const {
    T sum(0);
    for (const auto& e : entries_) sum += e.second;
    return sum;
  }

  SparseDistribution<double> to_double_distribution() const {
    std::vector<std::pair<StateIndex, double>> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.emplace_back(e.first, ricci::to_double(e.second));
    return SparseDistribution<double>(std::move(out), SparseDistribution<double>::kTrusted);
  }

  struct Trusted {};
  static constexpr Trusted kTrusted{};
  /// Adopts entries already sorted, merged and positive (used for
  /// conversions where validation already happened in exact arithmetic).
  SparseDistribution(std::vector<Entry> entries, Trusted) : entries_(std::move(entries)) {}

 private:
  void validate() const {
    for (const auto& e : entries_) {
      if (!(e.second > T(0))) {
        throw Error(ErrorKind::InvalidInput, "distribution weight at state " + std::to_string(e.first) +
                                                 " is not positive");
      }
    }
    const T sum = total();
    if constexpr (ScalarTraits<T>::exact) {
      if (sum != T(1)) throw Error(ErrorKind::InvalidInput, "distribution sums to " + to_string(sum) + ", not 1");
    } else {
      if (std::abs(sum - 1.0) > ScalarTraits<double>::tolerance) {
        throw Error(ErrorKind::InvalidInput, "distribution sums to " + format_double(sum) + ", not 1");
      }
    }
  }

  std::vector<Entry> entries_;
};

/// One distribution per state: m_x for every x.
template <Scalar T>
class WalkKernel {
 public:
  WalkKernel() = default;
  explicit WalkKernel(std::vector<SparseDistribution<T>> rows) : rows_(std::move(rows)) {}

  std::size_t state_count() const noexcept { return rows_.size(); }
  const SparseDistribution<T>& row(StateIndex x) const { return rows_.at(x); }
  const std::vector<SparseDistribution<T>>& rows() const noexcept { return rows_; }

  /// Probability of stepping from x to y.
  T operator()(StateIndex x, StateIndex y) const { return rows_.at(x).mass(y); }

  /// Self-mass α if every row has the same m_x(x), else nullopt.
  std::optional<T> uniform_self_mass() const {
    if (rows_.empty()) return std::nullopt;
    const T first = rows_[0].mass(0);
    for (StateIndex x = 0; x < rows_.size(); ++x) {
      if (rows_[x].mass(x) != first) return std::nullopt;
    }
    return first;
  }

  WalkKernel<double> to_double_kernel() const {
    std::vector<SparseDistribution<double>> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.to_double_distribution());
    return WalkKernel<double>(std::move(out));
  }

 private:
  std::vector<SparseDistribution<T>> rows_;
};

/// Throws InvalidInput unless each row x is supported on N(x) in g.
template <Scalar T>
void require_compatible(const WalkKernel<T>& m, const StateGraph& g) {
  if (m.state_count() != g.state_count()) {
    throw Error(ErrorKind::InvalidInput, "kernel has " + std::to_string(m.state_count()) + " rows but graph has " +
                                             std::to_string(g.state_count()) + " states");
  }
  for (StateIndex x = 0; x < m.state_count(); ++x) {
    for (const auto& [y, w] : m.row(x).entries()) {
      if (!g.in_closed_neighborhood(x, y)) {
        throw Error(ErrorKind::InvalidInput, "kernel row " + std::to_string(x) + " puts mass on non-neighbor " +
                                                 std::to_string(y));
      }
    }
  }
}

/// Real-valued function on states with an optional declared Lipschitz constant.
struct StateFunction {
  std::vector<double> values;
  std::optional<double> lipschitz;

  double operator()(StateIndex x) const { return values.at(x); }
  std::size_t size() const noexcept { return values.size(); }
};

/// Smallest c with |f(u)-f(v)| <= c over all edges of g.
double lipschitz_constant(const StateGraph& g, const StateFunction& f);

/// Throws InputNotLipschitz if some edge has |f(u)-f(v)| > c + tolerance.
void require_lipschitz(const StateGraph& g, const StateFunction& f, double c, double tolerance = 1e-12);

}  // namespace ricci
