// ricci: command-line front end for curvature, geometrized spaces, tail
// bounds, simulation and the verification suite.
//
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 resource cap.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ricci/bounds.hpp"
#include "ricci/checks.hpp"
#include "ricci/curvature.hpp"
#include "ricci/error.hpp"
#include "ricci/experiments.hpp"
#include "ricci/geometrize.hpp"
#include "ricci/io.hpp"
#include "ricci/markov.hpp"
#include "ricci/observables.hpp"
#include "ricci/parallel.hpp"
#include "ricci/transport.hpp"

namespace {

using namespace ricci;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Global {
  bool json = false;
  bool no_meta = false;
  std::size_t threads = 0;
  std::vector<std::string> argv;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TooLarge:
      return kExitResource;
    case ErrorKind::LemmaViolation:
    case ErrorKind::BoundViolation:
    case ErrorKind::ContractionViolation:
    case ErrorKind::InequalityViolation:
    case ErrorKind::LipschitzViolation:
    case ErrorKind::InputNotLipschitz:
      return kExitCheckFailed;
    default:
      return kExitUsage;
  }
}

std::size_t thread_count(const Global& g) { return g.threads == 0 ? default_thread_count() : g.threads; }

Json wrap(const Global& g, const std::string& command, Json result) {
  Json out;
  out["command"] = command;
  out["result"] = std::move(result);
  if (!g.no_meta) {
    Json meta;
    meta["version"] = "0.1.0";
    meta["argv"] = g.argv;
    meta["threads"] = thread_count(g);
    out["meta"] = std::move(meta);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

// Writes to --out when given, prints to stdout under --json.
void emit(const Global& g, const std::string& out_path, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (!out_path.empty()) write_text(out_path, text);
  if (g.json) std::cout << text;
}

ModelParams parse_params(ModelKind kind, const std::string& text) {
  ModelParams p;
  bool have_n = false;
  bool have_m = false;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidInput, "parameter '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    auto as_unsigned = [&]() -> std::uint64_t {
      const Rational q = parse_rational(value);
      if (sgn(q) < 0 || q.get_den() != 1 || !q.get_num().fits_ulong_p()) {
        throw Error(ErrorKind::InvalidInput, key + " must be a nonnegative integer");
      }
      return q.get_num().get_ui();
    };
    if (key == "n") {
      p.n = static_cast<unsigned>(as_unsigned());
      have_n = true;
    } else if (key == "p") {
      p.p = parse_rational(value);
    } else if (key == "M") {
      p.M = as_unsigned();
      have_m = true;
    } else if (key == "k") {
      p.k = static_cast<unsigned>(as_unsigned());
    } else if (key == "d") {
      p.d = static_cast<unsigned>(as_unsigned());
    } else if (key == "lazy") {
      p.lazy = parse_rational(value);
    } else {
      throw Error(ErrorKind::InvalidInput, "unknown parameter '" + key + "'");
    }
  }
  if (!have_n) throw Error(ErrorKind::InvalidInput, "parameter n is required");
  if ((kind == ModelKind::GnM || kind == ModelKind::Hypergraph) && !have_m) {
    throw Error(ErrorKind::InvalidInput, "parameter M is required");
  }
  return p;
}

// ---------------------------------------------------------------------------

struct CurvatureArgs {
  std::string graph;
  std::string kernel;
  std::optional<std::string> lazy;
  bool certificates = false;
  std::string out;
  std::string mode = "rational";
  std::size_t sample_pairs = 100;
  std::uint64_t seed = 1;
};

template <Scalar T>
int curvature_with(const Global& g, const CurvatureArgs& a) {
  StateGraph graph = read_edge_list_file(a.graph);
  if (graph.state_count() <= StateGraph::kMaxCachedStates) graph.build_distance_cache();
  WalkKernel<T> kernel;
  if (a.lazy) {
    kernel = lazy_kernel(graph, scalar_from<T>(parse_rational(*a.lazy)));
  } else {
    kernel = kernel_from_json<T>(read_json_file(a.kernel));
    require_compatible(kernel, graph);
  }
  const auto report = ricci_lower_bound(graph, kernel,
                                        CurvatureOptions{.sample_pairs = a.sample_pairs,
                                                         .seed = a.seed,
                                                         .threads = thread_count(g),
                                                         .keep_certificates = a.certificates});
  Json result = curvature_report_to_json(report, a.certificates);
  const auto diam = check_diameter_bound(graph, kernel, to_double(report.global_lb));
  if (diam.applicable) result["diameter"] = diam.diameter;
  emit(g, a.out, wrap(g, "curvature", std::move(result)));
  if (!g.json) {
    std::cout << "states " << graph.state_count() << ", edges " << graph.edge_count() << "\n";
    if constexpr (ScalarTraits<T>::exact) {
      std::cout << "global_lb " << to_string(report.global_lb) << " (" << format_double(to_double(report.global_lb))
                << ")\n";
    } else {
      std::cout << "global_lb " << format_double(report.global_lb) << "\n";
    }
    std::cout << "argmin_edge " << report.argmin_edge.first << " " << report.argmin_edge.second << "\n";
  }
  return kExitOk;
}

int cmd_curvature(const Global& g, const CurvatureArgs& a) {
  if (a.kernel.empty() == !a.lazy) {
    std::cerr << "curvature: give exactly one of --kernel or --lazy\n";
    return kExitUsage;
  }
  return parse_arithmetic_mode(a.mode) == ArithmeticMode::Rational ? curvature_with<Rational>(g, a)
                                                                    : curvature_with<double>(g, a);
}

// ---------------------------------------------------------------------------

struct GeometrizeArgs {
  std::string model;
  std::string params;
  std::string out;
  bool details = false;
  bool curvature = false;
  std::optional<std::uint64_t> cap;
};

int cmd_geometrize(const Global& g, const GeometrizeArgs& a) {
  const ModelKind kind = parse_model_kind(a.model);
  std::shared_ptr<const ConfigurationModel> model = make_model(kind, parse_params(kind, a.params));
  const GeometrizedSpace space(model, a.cap.value_or(enumeration_cap()));
  Json result = space_to_json(space, a.details);
  std::optional<Rational> kappa;
  if (a.curvature) {
    kappa = ricci_lower_bound(space.graph(), space.kernel(),
                              CurvatureOptions{.sample_pairs = 0, .seed = 1, .threads = thread_count(g)})
                .global_lb;
    result["exact_kappa"] = to_string(*kappa);
  }
  emit(g, a.out, wrap(g, "geometrize", std::move(result)));
  if (!g.json) {
    std::cout << model->describe() << ": " << space.state_count() << " states, " << space.graph().edge_count()
              << " edges\n";
    if (const auto claimed = model->claimed_kappa_lb()) std::cout << "claimed kappa_lb " << to_string(*claimed) << "\n";
    if (kappa) std::cout << "exact min edge kappa " << to_string(*kappa) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BoundArgs {
  std::optional<double> kappa;
  std::optional<double> t;
  std::string variant = "seven";
  bool two_sided = false;
  std::string sweep;
  std::string regimes;
};

int cmd_bound(const Global& g, const BoundArgs& a) {
  if (!a.kappa) {
    std::cerr << "bound: --kappa is required\n";
    return kExitUsage;
  }
  const BoundVariant variant = parse_bound_variant(a.variant);
  if (!a.regimes.empty()) {
    write_regimes_csv(std::cout, compare_bound_regimes(*a.kappa, parse_t_grid(a.regimes)));
    return kExitOk;
  }
  if (!a.sweep.empty()) {
    std::cout << "t,bound\n";
    for (double t : parse_t_grid(a.sweep)) {
      const auto b = tail_bound({.kappa = *a.kappa, .t = t, .variant = variant, .two_sided = a.two_sided});
      std::cout << format_double(t) << "," << format_double(b.value) << "\n";
    }
    return kExitOk;
  }
  if (!a.t) {
    std::cerr << "bound: --t, --sweep or --regimes is required\n";
    return kExitUsage;
  }
  const auto b = tail_bound({.kappa = *a.kappa, .t = *a.t, .variant = variant, .two_sided = a.two_sided});
  if (g.json) {
    Json result;
    result["kappa"] = *a.kappa;
    result["t"] = *a.t;
    result["variant"] = std::string(to_string(variant));
    result["two_sided"] = a.two_sided;
    result["bound"] = b.value;
    if (std::isfinite(b.lambda0)) result["lambda0"] = b.lambda0;
    result["outside_theorem_hypothesis"] = b.outside_theorem_hypothesis;
    result["beyond_cutoff"] = b.beyond_cutoff;
    emit(g, "", wrap(g, "bound", std::move(result)));
  } else {
    if (std::isfinite(b.lambda0)) std::cout << "lambda0 " << format_double(b.lambda0) << "\n";
    std::cout << "bound " << format_double(b.value) << "\n";
    if (b.outside_theorem_hypothesis) std::cout << "note: t < 1 lies outside the theorem's hypothesis\n";
    if (b.beyond_cutoff) std::cout << "note: t > 2/kappa, no deviation that large is possible\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string model;
  std::string params;
  std::string observable;
  std::uint64_t samples = 100000;
  std::optional<std::uint64_t> seed;
  std::string t_grid;
  std::optional<double> lipschitz;
  std::string exact_kappa;
  std::string out;
  std::string csv;
};

int cmd_simulate(const Global& g, const SimulateArgs& a) {
  if (!a.seed) {
    std::cerr << "simulate: --seed is required\n";
    return kExitUsage;
  }
  const ModelKind kind = parse_model_kind(a.model);
  std::shared_ptr<const ConfigurationModel> model = make_model(kind, parse_params(kind, a.params));
  const PatternSpec spec = parse_pattern_spec(a.observable);
  const auto f = make_observable(spec, *model);
  const double c = a.lipschitz ? *a.lipschitz : claimed_lipschitz_constant(spec, *model);

  TailOptions options;
  options.threads = thread_count(g);
  if (a.exact_kappa == "auto") {
    const GeometrizedSpace space(model);
    options.exact_kappa = ricci_lower_bound(space.graph(), space.kernel_double(),
                                            CurvatureOptions{.sample_pairs = 0, .seed = 1, .threads = options.threads})
                              .global_lb;
  } else if (!a.exact_kappa.empty()) {
    options.exact_kappa = parse_rational(a.exact_kappa).get_d();
  }
  double kappa = 0.0;
  if (const auto claimed = model->claimed_kappa_lb()) {
    kappa = claimed->get_d();
  } else if (options.exact_kappa) {
    kappa = *options.exact_kappa;
  }
  const std::vector<double> grid =
      !a.t_grid.empty() ? parse_t_grid(a.t_grid) : (kappa > 0 ? linear_grid(1.0, 2.0 / kappa, 10) : std::vector<double>{1.0});
  const auto report = estimate_tail(*model, f, spec.id, c, grid, a.samples, *a.seed, options);
  emit(g, a.out, wrap(g, "simulate", tail_report_to_json(report)));
  if (!a.csv.empty()) {
    std::ostringstream csv;
    write_tail_csv(csv, report);
    write_text(a.csv, csv.str());
  }
  if (!g.json) {
    std::cout << report.model << ", " << report.observable << " / " << format_double(c) << ", mean "
              << format_double(report.mean) << (report.mean_exact ? " (exact)" : " (sampled)") << ", kappa "
              << format_double(report.kappa) << " (" << report.kappa_source << ")\n";
    write_tail_csv(std::cout, report);
    std::cout << "envelope " << (report.envelope_holds ? "holds" : "VIOLATED") << "\n";
  }
  return report.envelope_holds ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------

struct CouplingArgs {
  std::string graph;
  std::string m1;
  std::string m2;
  std::string coupling;
  std::string mode = "rational";
};

template <Scalar T>
int verify_coupling_with(const Global& g, const CouplingArgs& a) {
  StateGraph graph = read_edge_list_file(a.graph);
  const auto m1 = distribution_from_json<T>(read_json_file(a.m1));
  const auto m2 = distribution_from_json<T>(read_json_file(a.m2));
  auto coupling = coupling_from_json<T>(read_json_file(a.coupling));
  const auto verdict = validate_coupling(coupling, m1, m2);
  Json result;
  result["valid"] = verdict.valid;
  if (!verdict.valid) {
    result["violation"] = verdict.violation;
    result["residual"] = verdict.residual;
  } else {
    const T cost = coupling_cost(coupling, graph);
    const T w = wasserstein(m1, m2, graph).distance;
    result["cost"] = scalar_to_json(cost);
    result["wasserstein"] = scalar_to_json(w);
    result["optimal"] = ScalarTraits<T>::exact ? cost == w : std::abs(to_double(cost) - to_double(w)) <= 1e-9;
  }
  if (g.json) {
    emit(g, "", wrap(g, "verify-coupling", result));
  } else if (verdict.valid) {
    std::cout << "valid\ncost " << result["cost"].dump() << "\nwasserstein " << result["wasserstein"].dump() << "\n";
  } else {
    std::cout << "invalid: " << verdict.violation << " (residual " << format_double(verdict.residual) << ")\n";
  }
  return verdict.valid ? kExitOk : kExitCheckFailed;
}

int cmd_verify_coupling(const Global& g, const CouplingArgs& a) {
  return parse_arithmetic_mode(a.mode) == ArithmeticMode::Rational ? verify_coupling_with<Rational>(g, a)
                                                                    : verify_coupling_with<double>(g, a);
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::optional<std::uint64_t> seed;
  std::vector<std::string> only;
  std::string mode = "rational";
  std::uint64_t samples = 100000;
  std::string out;
};

int cmd_verify_paper(const Global& g, const VerifyArgs& a) {
  if (!a.seed) {
    std::cerr << "verify-paper: --seed is required\n";
    return kExitUsage;
  }
  VerifyOptions options;
  options.seed = *a.seed;
  options.only = a.only;
  options.mode = parse_arithmetic_mode(a.mode);
  options.threads = thread_count(g);
  options.envelope_samples = a.samples;
  const auto results = run_verify_paper(options);
  emit(g, a.out, wrap(g, "verify-paper", verify_report_to_json(results, options)));
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  if (!g.json) {
    for (const auto& r : results) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << "[" << r.group << "] " << r.name << ": " << r.detail << "\n";
    }
    std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  }
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  Global global;
  global.argv.assign(argv + 1, argv + argc);

  CLI::App app{"Exact Ollivier-Ricci curvature, geometrized configuration spaces and concentration bounds"};
  app.require_subcommand(1);
  app.add_flag("--json", global.json, "Print machine-readable JSON on stdout");
  app.add_flag("--no-meta", global.no_meta, "Omit the meta block (version, argv, threads) from JSON");
  app.add_option("--threads", global.threads, "Worker threads (default: available parallelism)");

  CurvatureArgs curv;
  auto* curvature = app.add_subcommand("curvature", "Per-edge curvature and certified global lower bound");
  curvature->add_option("--graph", curv.graph, "Edge-list file")->required();
  auto* kernel_opt = curvature->add_option("--kernel", curv.kernel, "Kernel JSON file");
  auto* lazy_opt = curvature->add_option("--lazy", curv.lazy, "Use the alpha-lazy simple random walk");
  kernel_opt->excludes(lazy_opt);
  curvature->add_flag("--certificates", curv.certificates, "Include per-edge couplings and potentials");
  curvature->add_option("--out", curv.out, "Write the report JSON here");
  curvature->add_option("--mode", curv.mode, "rational or float")->check(CLI::IsMember({"rational", "float"}));
  curvature->add_option("--sample-pairs", curv.sample_pairs, "Non-adjacent pairs to validate");
  curvature->add_option("--seed", curv.seed, "Seed for pair sampling");

  GeometrizeArgs geo;
  auto* geometrize = app.add_subcommand("geometrize", "Build one of the configuration spaces");
  geometrize->add_option("--model", geo.model, "gnp|gnm|hyper|doutreg|perm-ins|perm-trans")->required();
  geometrize->add_option("--params", geo.params, "e.g. n=4,M=2")->required();
  geometrize->add_option("--out", geo.out, "Write the space JSON here");
  geometrize->add_flag("--details", geo.details, "Include states, edges, kernel and claimed nu");
  geometrize->add_flag("--curvature", geo.curvature, "Compute the exact minimum edge curvature");
  geometrize->add_option("--cap", geo.cap, "Enumeration cap (default RICCI_CONC_CAP or 2^20)");

  BoundArgs bnd;
  auto* bound = app.add_subcommand("bound", "Tail bound and lambda0");
  bound->add_option("--kappa", bnd.kappa, "Curvature lower bound");
  bound->add_option("--t", bnd.t, "Deviation");
  bound->add_option("--variant", bnd.variant, "exact|seven|five")->check(CLI::IsMember({"exact", "seven", "five"}));
  bound->add_flag("--two-sided", bnd.two_sided, "Double the bound (capped at 1)");
  bound->add_option("--sweep", bnd.sweep, "t0:t1:steps, CSV of (t, bound)");
  bound->add_option("--regimes", bnd.regimes, "t0:t1:steps, CSV comparing the three variants");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo tails against the bounds");
  simulate->add_option("--model", sim.model, "gnp|gnm|hyper|doutreg|perm-ins|perm-trans")->required();
  simulate->add_option("--params", sim.params, "e.g. n=6")->required();
  simulate->add_option("--observable", sim.observable, "edges|directed-triangles|subgraph:K3|pattern:21")->required();
  simulate->add_option("--samples", sim.samples, "Number of exact draws");
  simulate->add_option("--seed", sim.seed, "Master seed (required)");
  simulate->add_option("--t-grid", sim.t_grid, "a:b:steps (default 1 to 2/kappa in 10 steps)");
  simulate->add_option("--lipschitz", sim.lipschitz, "Override the Lipschitz constant");
  simulate->add_option("--exact-kappa", sim.exact_kappa, "Exact curvature value, or 'auto' to compute it");
  simulate->add_option("--out", sim.out, "Write the report JSON here");
  simulate->add_option("--csv", sim.csv, "Write the CSV export here");

  CouplingArgs cpl;
  auto* verify_coupling = app.add_subcommand("verify-coupling", "Check a coupling and compare its cost with W1");
  verify_coupling->add_option("--graph", cpl.graph, "Edge-list file")->required();
  verify_coupling->add_option("--m1", cpl.m1, "First distribution JSON")->required();
  verify_coupling->add_option("--m2", cpl.m2, "Second distribution JSON")->required();
  verify_coupling->add_option("--coupling", cpl.coupling, "Coupling JSON")->required();
  verify_coupling->add_option("--mode", cpl.mode, "rational or float")->check(CLI::IsMember({"rational", "float"}));

  VerifyArgs ver;
  auto* verify_paper = app.add_subcommand("verify-paper", "Run every small-instance check");
  verify_paper->add_option("--seed", ver.seed, "Master seed (required)");
  verify_paper->add_option("--only", ver.only, "Restrict to groups")->delimiter(',');
  verify_paper->add_option("--mode", ver.mode, "rational or float")->check(CLI::IsMember({"rational", "float"}));
  verify_paper->add_option("--samples", ver.samples, "Draws per concentration envelope");
  verify_paper->add_option("--out", ver.out, "Write the report JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*curvature) return cmd_curvature(global, curv);
    if (*geometrize) return cmd_geometrize(global, geo);
    if (*bound) return cmd_bound(global, bnd);
    if (*simulate) return cmd_simulate(global, sim);
    if (*verify_coupling) return cmd_verify_coupling(global, cpl);
    if (*verify_paper) return cmd_verify_paper(global, ver);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
