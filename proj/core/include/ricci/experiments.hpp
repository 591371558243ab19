#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ricci/geometrize.hpp"
#include "ricci/observables.hpp"

namespace ricci {

struct Expectation {
  double value = 0.0;
  /// Set when every value of f is an integer, so the sum is exact.
  std::optional<Rational> exact;
};

/// Σ claimed_nu(c) f(c) over all configurations. Throws TooLarge above the
/// enumeration cap.
Expectation exact_expectation(const ConfigurationModel& model, const ConfigurationFunction& f,
                              std::uint64_t cap = enumeration_cap());
Expectation exact_expectation(const GeometrizedSpace& space, const ConfigurationFunction& f);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

inline constexpr double kZ99 = 2.5758293035489004;

/// Wilson score interval for `hits` successes out of `trials`.
Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z = kZ99);

/// "a:b:steps" -> `steps` evenly spaced points from a to b inclusive.
std::vector<double> parse_t_grid(std::string_view text);
std::vector<double> linear_grid(double a, double b, std::size_t steps);

struct TailRow {
  double t = 0.0;
  std::uint64_t hits = 0;
  double empirical = 0.0;
  Interval ci;
  double bound_seven = 1.0;
  double bound_five = 1.0;
  double bound_exact = 1.0;
  /// 2 exp(-t²κ/7) with the exact curvature, when one was supplied.
  std::optional<double> bound_seven_exact_kappa;
};

struct TailReport {
  std::string model;
  std::string observable;
  double lipschitz = 1.0;
  double mean = 0.0;
  bool mean_exact = false;
  std::optional<Rational> mean_rational;
  double kappa = 0.0;
  /// "claimed" or "exact" (when the model has no claimed bound).
  std::string kappa_source;
  std::optional<double> exact_kappa;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<TailRow> rows;
  /// Wilson upper limit <= 2 exp(-t²κ/7) at every grid t >= 1.
  bool envelope_holds = true;
};

struct TailOptions {
  /// Exact min-edge curvature if known; required for models without a
  /// claimed bound (MissingKappa otherwise).
  std::optional<double> exact_kappa;
  std::size_t threads = 0;
  std::uint64_t cap = enumeration_cap();
};

inline constexpr std::uint64_t kMinTailSamples = 10000;

/// Two-sided empirical tails of f/c around E[f/c] from `samples` exact draws
/// of claimed_nu, with Wilson 99% limits and the three bound variants at
/// κ = claimed_kappa_lb. E[f] is exact when the model is enumerable and the
/// sample mean otherwise. Draws come in 64 fixed chunks with seeds derived
/// from `seed`, so the report is identical for any thread count.
TailReport estimate_tail(const ConfigurationModel& model, const ConfigurationFunction& f, std::string observable_id,
                         double lipschitz_c, const std::vector<double>& t_grid, std::uint64_t samples,
                         std::uint64_t seed, const TailOptions& options = {});

struct RegimeRow {
  double t = 0.0;
  double exact = 0.0;
  double seven = 0.0;
  double five = 0.0;
  bool beyond_cutoff = false;
};

/// The three one-sided variants over t_grid, followed by a row just past
/// the 2/κ cutoff.
std::vector<RegimeRow> compare_bound_regimes(double kappa, const std::vector<double>& t_grid);

}  // namespace ricci
