#include "ricci/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "ricci/bounds.hpp"
#include "ricci/error.hpp"
#include "ricci/parallel.hpp"

namespace ricci {

namespace {

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15; }

double parse_real(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorKind::BadGrid, "bad number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Expectation exact_expectation(const ConfigurationModel& model, const ConfigurationFunction& f, std::uint64_t cap) {
  const auto count = model.state_count();
  if (!count || *count > cap) {
    throw Error(ErrorKind::TooLarge, model.describe() + " is too large to average exactly");
  }
  Rational exact(0);
  double approx = 0.0;
  bool integral = true;
  for (std::uint64_t i = 0; i < *count; ++i) {
    const Configuration c = model.unrank(i);
    const double v = f(c);
    const Rational nu = model.claimed_nu(c);
    approx += nu.get_d() * v;
    if (integral && is_integer(v)) {
      exact += nu * Rational(static_cast<long>(v));
    } else {
      integral = false;
    }
  }
  Expectation out;
  if (integral) {
    out.exact = exact;
    out.value = exact.get_d();
  } else {
    out.value = approx;
  }
  return out;
}

Expectation exact_expectation(const GeometrizedSpace& space, const ConfigurationFunction& f) {
  return exact_expectation(space.model(), f, space.state_count());
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<double> linear_grid(double a, double b, std::size_t steps) {
  if (steps == 0 || !(a <= b) || a < 0) throw Error(ErrorKind::BadGrid, "grid needs 0 <= a <= b and steps >= 1");
  if (steps == 1) return {a};
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(steps - 1);
  out.back() = b;
  return out;
}

std::vector<double> parse_t_grid(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) throw Error(ErrorKind::BadGrid, "grid must look like a:b:steps");
  const double a = parse_real(text.substr(0, first));
  const double b = parse_real(text.substr(first + 1, second - first - 1));
  const double steps = parse_real(text.substr(second + 1));
  if (steps < 1 || steps != std::floor(steps) || steps > 1e6) throw Error(ErrorKind::BadGrid, "steps must be a positive integer");
  return linear_grid(a, b, static_cast<std::size_t>(steps));
}

TailReport estimate_tail(const ConfigurationModel& model, const ConfigurationFunction& f, std::string observable_id,
                         double lipschitz_c, const std::vector<double>& t_grid, std::uint64_t samples,
                         std::uint64_t seed, const TailOptions& options) {
  if (samples < kMinTailSamples) {
    throw Error(ErrorKind::BadParams, "tail estimates need at least " + std::to_string(kMinTailSamples) + " samples");
  }
  if (!(lipschitz_c > 0)) throw Error(ErrorKind::BadParams, "Lipschitz constant must be positive");
  if (t_grid.empty()) throw Error(ErrorKind::BadGrid, "empty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0 || (i > 0 && t_grid[i] < t_grid[i - 1])) {
      throw Error(ErrorKind::BadGrid, "t grid must be nonnegative and nondecreasing");
    }
  }

  TailReport report;
  report.model = model.describe();
  report.observable = std::move(observable_id);
  report.lipschitz = lipschitz_c;
  report.samples = samples;
  report.seed = seed;
  report.exact_kappa = options.exact_kappa;
  if (const auto claimed = model.claimed_kappa_lb()) {
    report.kappa = claimed->get_d();
    report.kappa_source = "claimed";
  } else if (options.exact_kappa) {
    report.kappa = *options.exact_kappa;
    report.kappa_source = "exact";
  } else {
    throw Error(ErrorKind::MissingKappa, model.describe() + " has no claimed curvature bound; supply the exact value");
  }
  if (!(report.kappa > 0)) throw Error(ErrorKind::MissingKappa, "the curvature bound must be positive");

  constexpr std::size_t kChunks = 64;
  std::vector<double> values(samples);
  std::vector<std::uint64_t> offset(kChunks + 1, 0);
  for (std::size_t chunk = 0; chunk < kChunks; ++chunk) {
    offset[chunk + 1] = offset[chunk] + samples / kChunks + (chunk < samples % kChunks ? 1 : 0);
  }
  parallel_for(kChunks, options.threads == 0 ? default_thread_count() : options.threads, [&](std::size_t chunk) {
    Rng rng(derive_seed(seed, chunk));
    for (std::uint64_t i = offset[chunk]; i < offset[chunk + 1]; ++i) values[i] = f(model.sample(rng));
  });

  const auto count = model.state_count();
  if (count && *count <= options.cap) {
    const auto e = exact_expectation(model, f, options.cap);
    report.mean = e.value;
    report.mean_rational = e.exact;
    report.mean_exact = true;
  } else {
    double sum = 0.0;
    for (double v : values) sum += v;
    report.mean = sum / static_cast<double>(samples);
  }

  std::vector<double> deviation(samples);
  for (std::uint64_t i = 0; i < samples; ++i) deviation[i] = std::abs(values[i] - report.mean) / lipschitz_c;
  std::sort(deviation.begin(), deviation.end());

  for (double t : t_grid) {
    TailRow row;
    row.t = t;
    // deviations >= t, with a relative slack so exact ties are not lost to
    // rounding in the division by c
    const double threshold = t - 1e-12 * std::max(1.0, t);
    row.hits = static_cast<std::uint64_t>(deviation.end() - std::lower_bound(deviation.begin(), deviation.end(), threshold));
    row.empirical = static_cast<double>(row.hits) / static_cast<double>(samples);
    row.ci = wilson_interval(row.hits, samples);
    auto bound = [&](BoundVariant v, double kappa) {
      if (t == 0) return 1.0;
      return tail_bound({.kappa = kappa, .t = t, .variant = v, .two_sided = true}).value;
    };
    row.bound_seven = bound(BoundVariant::Seven, report.kappa);
    row.bound_five = bound(BoundVariant::Five, report.kappa);
    row.bound_exact = report.kappa <= 1.0 ? bound(BoundVariant::Exact, report.kappa) : row.bound_seven;
    if (options.exact_kappa && *options.exact_kappa > 0) {
      row.bound_seven_exact_kappa = bound(BoundVariant::Seven, *options.exact_kappa);
    }
    if (t >= 1.0 && row.ci.hi > row.bound_seven) report.envelope_holds = false;
    report.rows.push_back(row);
  }
  return report;
}

std::vector<RegimeRow> compare_bound_regimes(double kappa, const std::vector<double>& t_grid) {
  if (!(kappa > 0) || kappa > 1) throw Error(ErrorKind::OutOfRange, "kappa must lie in (0, 1]");
  std::vector<double> ts = t_grid;
  ts.push_back(2.0 / kappa * (1.0 + 1e-9) + 1e-9);
  std::vector<RegimeRow> out;
  for (double t : ts) {
    RegimeRow row;
    row.t = t;
    const auto exact = tail_bound({.kappa = kappa, .t = t, .variant = BoundVariant::Exact});
    row.exact = exact.value;
    row.seven = tail_bound({.kappa = kappa, .t = t, .variant = BoundVariant::Seven}).value;
    row.five = tail_bound({.kappa = kappa, .t = t, .variant = BoundVariant::Five}).value;
    row.beyond_cutoff = exact.beyond_cutoff;
    out.push_back(row);
  }
  return out;
}

}  // namespace ricci
