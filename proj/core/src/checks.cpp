#include "ricci/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "ricci/bounds.hpp"
#include "ricci/combinatorics.hpp"
#include "ricci/curvature.hpp"
#include "ricci/error.hpp"
#include "ricci/experiments.hpp"
#include "ricci/markov.hpp"
#include "ricci/observables.hpp"
#include "ricci/transport.hpp"

namespace ricci {

std::string_view to_string(ArithmeticMode mode) noexcept {
  return mode == ArithmeticMode::Rational ? "rational" : "float";
}

ArithmeticMode parse_arithmetic_mode(std::string_view name) {
  if (name == "rational") return ArithmeticMode::Rational;
  if (name == "float") return ArithmeticMode::Float;
  throw Error(ErrorKind::InvalidInput, "mode must be rational or float");
}

const std::vector<std::string>& verify_groups() {
  static const std::vector<std::string> groups{"gnp",       "gnm",    "hyper",       "doutreg", "perm",
                                               "transport", "bounds", "observables", "envelope"};
  return groups;
}

std::vector<double> random_lipschitz_function(const StateGraph& g, Rng& rng) {
  const std::size_t n = g.state_count();
  const std::size_t anchors = 1 + uniform_below(rng, 3);
  std::vector<double> f(n, std::numeric_limits<double>::infinity());
  for (std::size_t a = 0; a < anchors; ++a) {
    const auto source = static_cast<StateIndex>(uniform_below(rng, n));
    const double offset = 3.0 * uniform_unit(rng);
    const auto dist = g.bfs_distances(source);
    for (std::size_t x = 0; x < n; ++x) {
      if (dist[x] != kUnreachable) f[x] = std::min(f[x], offset + dist[x]);
    }
  }
  const double scale = 2.0 * uniform_unit(rng) - 1.0;
  for (auto& v : f) v = std::isfinite(v) ? scale * v : 0.0;
  return f;
}

StateGraph random_connected_graph(std::size_t n, double extra, Rng& rng) {
  StateGraph g(n);
  for (std::size_t v = 1; v < n; ++v) g.add_edge(static_cast<StateIndex>(uniform_below(rng, v)), static_cast<StateIndex>(v));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (uniform_unit(rng) < extra) g.add_edge(static_cast<StateIndex>(u), static_cast<StateIndex>(v));
    }
  }
  return g;
}

namespace {

// Fixed stream tags so each group draws from its own substream.
enum StreamTag : std::uint64_t { kPairs = 1, kLipschitz = 2, kMgf = 3, kDuality = 4, kEnvelope = 5 };

class Suite {
 public:
  explicit Suite(const VerifyOptions& options) : options_(options) {}

  void run(const std::string& group, int criterion, const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{group, name, criterion, false, ""};
    try {
      r.detail = body();
      r.passed = true;
    } catch (const Error& e) {
      r.detail = e.what();
    } catch (const std::exception& e) {
      r.detail = std::string("unexpected: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  const VerifyOptions& options() const { return options_; }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const VerifyOptions& options_;
  std::vector<CheckResult> results_;
};

template <Scalar T>
std::string show(const T& v) {
  if constexpr (ScalarTraits<T>::exact) {
    return to_string(v);
  } else {
    return format_double(v);
  }
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

std::uint64_t space_seed(const VerifyOptions& o, const GeometrizedSpace& s, StreamTag tag) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : s.model().describe()) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return derive_seed(derive_seed(o.seed, tag), h);
}

template <Scalar T>
void space_checks(Suite& suite, const std::string& group, int lemma_criterion, const GeometrizedSpace& space) {
  const std::string label = space.model().describe();
  const auto& g = space.graph();
  const WalkKernel<T>* kernel_ptr = nullptr;
  if constexpr (ScalarTraits<T>::exact) {
    kernel_ptr = &space.kernel();
  } else {
    kernel_ptr = &space.kernel_double();
  }
  const WalkKernel<T>& m = *kernel_ptr;
  const auto claimed = space.claimed_kappa_lb();
  const VerifyOptions& o = suite.options();

  // Curvature report doubles as the neighbor-pair validation (criterion 14).
  std::optional<CurvatureReport<T>> report;
  std::string report_error;
  try {
    report = ricci_lower_bound(g, m,
                               CurvatureOptions{.sample_pairs = 100,
                                                .seed = space_seed(o, space, kPairs),
                                                .threads = o.threads});
  } catch (const Error& e) {
    report_error = e.what();
  }
  auto need_report = [&]() -> const CurvatureReport<T>& {
    if (!report) throw Error(ErrorKind::LemmaViolation, report_error);
    return *report;
  };

  if (claimed) {
    suite.run(group, lemma_criterion, label + ": curvature lemma", [&] {
      const auto& r = need_report();
      bool ok = false;
      if constexpr (ScalarTraits<T>::exact) {
        ok = r.global_lb >= *claimed;
      } else {
        ok = r.global_lb >= claimed->get_d() - 1e-9;
      }
      const std::string text = "min edge kappa " + show(r.global_lb) + " vs claimed " + to_string(*claimed);
      if (!ok) fail(ErrorKind::LemmaViolation, text);
      return text;
    });
  } else {
    suite.run(group, 0, label + ": exact curvature baseline", [&] {
      const auto& r = need_report();
      return "min edge kappa " + show(r.global_lb);
    });
  }

  suite.run(group, 6, label + ": invariance proposition", [&] {
    const auto nu = space.claimed_nu_distribution();
    if (!check_ergodic(g, m).ergodic) {
      // Periodic walks have no unique limit; check νP = ν for the claimed ν.
      const double residual = stationary_residual(space.kernel_double(), nu.to_double_distribution());
      if (residual > 1e-12) fail(ErrorKind::InequalityViolation, "claimed nu is not invariant, residual " + format_double(residual));
      return std::string("walk is periodic; claimed nu is invariant (nuP = nu)");
    }
    const auto stationary = stationary_distribution(m);
    if constexpr (ScalarTraits<T>::exact) {
      for (StateIndex x = 0; x < space.state_count(); ++x) {
        if (stationary.mass(x) != nu.mass(x)) {
          fail(ErrorKind::InequalityViolation, "stationary mass differs at state " + std::to_string(x));
        }
      }
      return std::string("stationary distribution equals claimed nu exactly");
    } else {
      double linf = 0.0;
      for (StateIndex x = 0; x < space.state_count(); ++x) {
        linf = std::max(linf, std::abs(stationary.mass(x) - nu.mass(x).get_d()));
      }
      if (linf > 1e-10) fail(ErrorKind::InequalityViolation, "L-infinity error " + format_double(linf));
      return std::string("L-infinity error <= 1e-10");
    }
  });

  if (claimed) {
    suite.run(group, 7, label + ": proof coupling", [&] {
      Rational worst(0);
      std::size_t edges = 0;
      for (auto [x, y] : g.edges()) {
        const auto coupling = space.proof_coupling(x, y);
        const auto verdict = validate_coupling(coupling, space.kernel().row(x), space.kernel().row(y));
        if (!verdict.valid) fail(ErrorKind::InvalidInput, "edge " + std::to_string(x) + "-" + std::to_string(y) + ": " + verdict.violation);
        const Rational cost = coupling_cost(coupling, g);
        if (cost > Rational(1 - *claimed)) {
          fail(ErrorKind::BoundViolation, "edge " + std::to_string(x) + "-" + std::to_string(y) + " costs " + to_string(cost));
        }
        if (cost > worst) worst = cost;
        ++edges;
      }
      return std::to_string(edges) + " edges, worst cost " + to_string(worst) + " <= " + to_string(Rational(1 - *claimed));
    });
  }

  suite.run(group, 14, label + ": neighbor lemma", [&] {
    const auto& r = need_report();
    std::string text = std::to_string(r.pairs_checked) + " non-adjacent pairs";
    if (r.min_pair_kappa) text += ", min pair kappa " + show(*r.min_pair_kappa);
    return text + " >= " + show(r.global_lb);
  });

  suite.run(group, 15, label + ": diameter lemma", [&] {
    const auto& r = need_report();
    const auto verdict = check_diameter_bound(g, m, to_double(r.global_lb));
    if (!verdict.applicable) return std::string("not applicable (kappa <= 0)");
    return "kappa " + show(r.global_lb) + " <= 2/" + std::to_string(verdict.diameter);
  });

  const double kappa_lb = claimed ? claimed->get_d() : (report ? to_double(report->global_lb) : 0.0);

  suite.run(group, 11, label + ": averaging contraction", [&] {
    Rng rng(space_seed(o, space, kLipschitz));
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const StateFunction f{random_lipschitz_function(g, rng), 1.0};
      const auto verdict = check_lipschitz_contraction(g, m, f, 1.0, kappa_lb);
      worst = std::max(worst, verdict.max_difference);
    }
    return "200 functions, max |Mf(u)-Mf(v)| " + format_double(worst) + " <= " + format_double(1.0 - kappa_lb);
  });

  suite.run(group, 10, label + ": mgf lemma and variance remark", [&] {
    Rng rng(space_seed(o, space, kMgf));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const StateFunction phi{random_lipschitz_function(g, rng), 1.0};
      for (int step = 1; step <= 10; ++step) {
        worst = std::max(worst, mgf_inequality_check(g, m, phi, step / 10.0, 1.0).worst_ratio);
      }
      variance_bound_check(m, phi, 1.0);
    }
    return "50 functions x 10 lambdas, worst ratio " + format_double(worst);
  });
}

template <Scalar T>
void transposition_scaling(Suite& suite) {
  suite.run("perm", 0, "perm-trans lazy 1/2: curvature scales like n^-2", [&] {
    const auto s3 = build_permutation_transposition(3, fraction(1, 2));
    const auto s4 = build_permutation_transposition(4, fraction(1, 2));
    const CurvatureOptions opts{.sample_pairs = 0, .threads = suite.options().threads};
    const double k3 = to_double(ricci_lower_bound(s3.graph(), s3.kernel(), opts).global_lb);
    const double k4 = to_double(ricci_lower_bound(s4.graph(), s4.kernel(), opts).global_lb);
    const double ratio = (k4 * 16.0) / (k3 * 9.0);
    if (!(k3 > 0) || !(k4 > 0) || ratio < 0.25 || ratio > 4.0) {
      fail(ErrorKind::BoundViolation, "kappa(3) " + format_double(k3) + ", kappa(4) " + format_double(k4));
    }
    return "kappa(3) " + format_double(k3) + ", kappa(4) " + format_double(k4) + ", n^2-normalized ratio " +
           format_double(ratio);
  });
}

template <Scalar T>
void model_group(Suite& suite, const std::string& group) {
  std::vector<std::function<GeometrizedSpace()>> builders;
  int criterion = 0;
  if (group == "gnp") {
    criterion = 1;
    builders = {[] { return build_gnp(3, fraction(3, 10)); }, [] { return build_gnp(3, fraction(1, 2)); }};
  } else if (group == "gnm") {
    criterion = 2;
    builders = {[] { return build_gnm(4, 2); }, [] { return build_gnm(4, 3); }};
  } else if (group == "hyper") {
    criterion = 3;
    builders = {[] { return build_hypergraph(4, 3, 2); }, [] { return build_hypergraph(5, 3, 1); }};
  } else if (group == "doutreg") {
    criterion = 4;
    builders = {[] { return build_doutregular(3, 1); }, [] { return build_doutregular(4, 1); }};
  } else {
    criterion = 5;
    builders = {[] { return build_permutation_insertion(3); },
                [] { return build_permutation_insertion(4); },
                [] { return build_permutation_transposition(3); },
                [] { return build_permutation_transposition(3, fraction(1, 2)); },
                [] { return build_permutation_transposition(4, fraction(1, 2)); }};
  }
  for (const auto& build : builders) {
    std::optional<GeometrizedSpace> space;
    suite.run(group, 0, "build", [&] {
      space.emplace(build());
      return space->model().describe() + ": " + std::to_string(space->state_count()) + " states, " +
             std::to_string(space->graph().edge_count()) + " edges";
    });
    if (!space) continue;
    space_checks<T>(suite, group, criterion, *space);
  }
  if (group == "perm") transposition_scaling<T>(suite);
}

template <Scalar T>
void transport_group(Suite& suite) {
  suite.run("transport", 8, "strong duality on 100 random pairs", [&] {
    Rng rng(derive_seed(suite.options().seed, kDuality));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + uniform_below(rng, 29);
      const StateGraph g = random_connected_graph(n, 0.08, rng);
      auto random_distribution = [&] {
        const std::size_t support = 1 + uniform_below(rng, std::min<std::size_t>(n, 6));
        std::vector<std::pair<StateIndex, Rational>> raw;
        long total = 0;
        for (std::size_t i = 0; i < support; ++i) {
          const long w = 1 + static_cast<long>(uniform_below(rng, 9));
          raw.emplace_back(static_cast<StateIndex>(uniform_below(rng, n)), Rational(w));
          total += w;
        }
        std::vector<std::pair<StateIndex, T>> entries;
        for (auto& [x, w] : raw) entries.emplace_back(x, scalar_from<T>(Rational(w / Rational(total))));
        if constexpr (ScalarTraits<T>::exact) {
          return SparseDistribution<T>(std::move(entries));
        } else {
          // Rounded weights may miss 1 by an ulp; renormalize in float.
          double sum = 0.0;
          for (auto& e : entries) sum += e.second;
          for (auto& e : entries) e.second /= sum;
          return SparseDistribution<T>(std::move(entries));
        }
      };
      const auto m1 = random_distribution();
      const auto m2 = random_distribution();
      const T primal = wasserstein(m1, m2, g).distance;
      const T dual = kantorovich_dual(m1, m2, g).value;
      if constexpr (ScalarTraits<T>::exact) {
        if (primal != dual) fail(ErrorKind::InequalityViolation, "trial " + std::to_string(trial) + ": " + to_string(primal) + " vs " + to_string(dual));
      } else {
        worst = std::max(worst, std::abs(primal - dual));
        if (std::abs(primal - dual) > 1e-9) fail(ErrorKind::InequalityViolation, "trial " + std::to_string(trial) + " gap " + format_double(worst));
      }
    }
    return ScalarTraits<T>::exact ? std::string("primal equals dual exactly on all 100 pairs")
                                  : "max gap " + format_double(worst);
  });
}

void bounds_group(Suite& suite) {
  suite.run("bounds", 9, "lambda0 at kappa = 1 and kappa = 0", [&] {
    const double one = solve_lambda0(1.0);
    const double zero = solve_lambda0(0.0);
    if (std::abs(one - 0.60108) > 1e-4 || std::abs(zero - 0.80290) > 1e-4) {
      fail(ErrorKind::InequalityViolation, "lambda0(1) " + format_double(one) + ", lambda0(0) " + format_double(zero));
    }
    for (double k : {0.0, 1.0}) {
      const double x = solve_lambda0(k);
      const double residual = std::abs(x * std::exp(2 * x) - 2 * (2 - k));
      if (residual > 1e-12) fail(ErrorKind::InequalityViolation, "residual " + format_double(residual));
    }
    std::ostringstream out;
    out.precision(6);
    out << std::fixed << "lambda0(1) = " << one << ", lambda0(0) = " << zero;
    return out.str();
  });
  suite.run("bounds", 9, "lambda0/4 > 1/7 on a 100-point grid", [&] {
    double previous = std::numeric_limits<double>::infinity();
    double smallest = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 100; ++i) {
      const double k = i / 100.0;
      const double l = solve_lambda0(k);
      if (!(l / 4 > 1.0 / 7)) fail(ErrorKind::InequalityViolation, "fails at kappa " + format_double(k));
      if (!(l < previous)) fail(ErrorKind::InequalityViolation, "lambda0 not decreasing at kappa " + format_double(k));
      previous = l;
      smallest = std::min(smallest, l / 4);
    }
    return "min lambda0/4 = " + format_double(smallest) + " > 1/7";
  });
  suite.run("bounds", 9, "exact variant never exceeds the 7 variant", [&] {
    for (int i = 1; i <= 20; ++i) {
      const double k = i / 20.0;
      for (double t = 1.0; t <= 2.0 / k; t += 0.25) {
        const double exact = tail_bound({.kappa = k, .t = t, .variant = BoundVariant::Exact}).value;
        const double seven = tail_bound({.kappa = k, .t = t, .variant = BoundVariant::Seven}).value;
        if (exact > seven) fail(ErrorKind::InequalityViolation, "kappa " + format_double(k) + ", t " + format_double(t));
      }
    }
    return std::string("checked kappa in {0.05, ..., 1}, t in [1, 2/kappa]");
  });
}

void observables_group(Suite& suite) {
  struct Case {
    std::function<GeometrizedSpace()> build;
    std::string observable;
  };
  const std::vector<Case> cases{{[] { return build_gnm(5, 4); }, "subgraph:K3"},
                                {[] { return build_doutregular(4, 1); }, "directed-triangles"},
                                {[] { return build_permutation_insertion(5); }, "pattern:21"}};
  for (const auto& c : cases) {
    suite.run("observables", 12, c.observable + " Lipschitz constant", [&] {
      const auto space = c.build();
      const auto spec = parse_pattern_spec(c.observable);
      const double constant = claimed_lipschitz_constant(spec, space.model());
      const auto verdict = verify_lipschitz(space, make_observable(spec, space.model()), constant);
      return space.model().describe() + ": " + std::to_string(verdict.edges_checked) + " edges, max difference " +
             format_double(verdict.max_difference) + " <= " + format_double(constant);
    });
  }
}

void envelope_group(Suite& suite) {
  struct Case {
    std::function<std::unique_ptr<ConfigurationModel>()> make;
    std::string observable;
  };
  const std::vector<Case> cases{{[] { return make_permutation_insertion_model(7); }, "pattern:21"},
                                {[] { return make_gnm_model(10, 20); }, "subgraph:K3"}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto model = cases[i].make();
    suite.run("envelope", 13, model->describe() + " " + cases[i].observable + " concentration envelope", [&] {
      const auto spec = parse_pattern_spec(cases[i].observable);
      const double c = claimed_lipschitz_constant(spec, *model);
      const double kappa = model->claimed_kappa_lb()->get_d();
      const auto report = estimate_tail(*model, make_observable(spec, *model), spec.id, c, linear_grid(1.0, 2.0 / kappa, 10),
                                        suite.options().envelope_samples,
                                        derive_seed(derive_seed(suite.options().seed, kEnvelope), i),
                                        TailOptions{.exact_kappa = std::nullopt, .threads = suite.options().threads});
      if (!report.envelope_holds) {
        for (const auto& row : report.rows) {
          if (row.t >= 1 && row.ci.hi > row.bound_seven) {
            fail(ErrorKind::BoundViolation, "t = " + format_double(row.t) + ": upper limit " + format_double(row.ci.hi) +
                                                " > " + format_double(row.bound_seven));
          }
        }
      }
      return std::to_string(report.samples) + " samples, " + std::to_string(report.rows.size()) +
             " grid points, tail at t=1 is " + format_double(report.rows.front().empirical);
    });
  }
}

template <Scalar T>
void run_group(Suite& suite, const std::string& group) {
  if (group == "transport") {
    transport_group<T>(suite);
  } else if (group == "bounds") {
    bounds_group(suite);
  } else if (group == "observables") {
    observables_group(suite);
  } else if (group == "envelope") {
    envelope_group(suite);
  } else {
    model_group<T>(suite, group);
  }
}

}  // namespace

std::vector<CheckResult> run_verify_paper(const VerifyOptions& options) {
  const auto& all = verify_groups();
  for (const auto& g : options.only) {
    if (std::find(all.begin(), all.end(), g) == all.end()) {
      throw Error(ErrorKind::InvalidInput, "unknown group '" + g + "'");
    }
  }
  Suite suite(options);
  for (const auto& group : all) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), group) == options.only.end()) {
      continue;
    }
    if (options.mode == ArithmeticMode::Rational) {
      run_group<Rational>(suite, group);
    } else {
      run_group<double>(suite, group);
    }
  }
  return suite.take();
}

Json verify_report_to_json(const std::vector<CheckResult>& results, const VerifyOptions& options) {
  Json out;
  out["suite"] = "verify-paper";
  out["mode"] = std::string(to_string(options.mode));
  out["seed"] = options.seed;
  Json checks = Json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    Json c;
    c["group"] = r.group;
    c["name"] = r.name;
    c["criterion"] = r.criterion;
    c["passed"] = r.passed;
    c["detail"] = r.detail;
    checks.push_back(std::move(c));
    passed += r.passed ? 1 : 0;
  }
  out["checks"] = std::move(checks);
  out["passed"] = passed;
  out["failed"] = results.size() - passed;
  return out;
}

}  // namespace ricci
