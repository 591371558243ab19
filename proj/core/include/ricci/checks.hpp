#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ricci/graph.hpp"
#include "ricci/io.hpp"
#include "ricci/random.hpp"

namespace ricci {

enum class ArithmeticMode { Rational, Float };

std::string_view to_string(ArithmeticMode mode) noexcept;
ArithmeticMode parse_arithmetic_mode(std::string_view name);

struct CheckResult {
  std::string group;
  std::string name;
  /// Acceptance criterion this check belongs to.
  int criterion = 0;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Groups to run; empty means all of verify_groups().
  std::vector<std::string> only;
  ArithmeticMode mode = ArithmeticMode::Rational;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::uint64_t envelope_samples = 100000;
};

/// gnp, gnm, hyper, doutreg, perm, transport, bounds, observables, envelope.
const std::vector<std::string>& verify_groups();

/// Runs the desk-scale verification suite. Failures are reported in the
/// results, never thrown (except InvalidInput for an unknown group).
std::vector<CheckResult> run_verify_paper(const VerifyOptions& options);

Json verify_report_to_json(const std::vector<CheckResult>& results, const VerifyOptions& options);

/// Random 1-Lipschitz function: s * min_a (r_a + d(a, x)) over a few random
/// anchors, with a random scale s in [-1, 1].
std::vector<double> random_lipschitz_function(const StateGraph& g, Rng& rng);

/// Connected graph on `n` states: a random tree plus each other pair with
/// probability `extra`.
StateGraph random_connected_graph(std::size_t n, double extra, Rng& rng);

}  // namespace ricci
