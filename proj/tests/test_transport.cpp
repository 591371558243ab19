#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ricci/checks.hpp"
#include "ricci/curvature.hpp"
#include "ricci/error.hpp"
#include "ricci/transport.hpp"

using namespace ricci;

namespace {

// Random rational distribution with integer weights over a random support.
SparseDistribution<Rational> random_distribution(std::size_t n, std::size_t max_support, Rng& rng) {
  const std::size_t size = 1 + uniform_below(rng, std::min(n, max_support));
  std::vector<StateIndex> states(n);
  for (std::size_t i = 0; i < n; ++i) states[i] = static_cast<StateIndex>(i);
  shuffle(std::span(states), rng);
  std::vector<long> weights(size);
  long total = 0;
  for (auto& w : weights) total += (w = 1 + static_cast<long>(uniform_below(rng, 9)));
  std::vector<std::pair<StateIndex, Rational>> entries;
  for (std::size_t i = 0; i < size; ++i) entries.emplace_back(states[i], fraction(weights[i], total));
  return SparseDistribution<Rational>(std::move(entries));
}

Coupling<Rational> product_coupling(const SparseDistribution<Rational>& a, const SparseDistribution<Rational>& b) {
  Coupling<Rational> c;
  for (const auto& [x, u] : a.entries())
    for (const auto& [y, v] : b.entries()) c.cells.push_back({x, y, Rational(u * v)});
  return c;
}

}  // namespace

TEST(Coupling, ProductIsValid) {
  const auto g = complete_graph(3);
  const auto m = lazy_kernel<Rational>(g, Rational(0));
  EXPECT_TRUE(validate_coupling(product_coupling(m.row(0), m.row(1)), m.row(0), m.row(1)).valid);
}

TEST(Coupling, DiracIsValid) {
  const auto d = SparseDistribution<Rational>::dirac(2);
  Coupling<Rational> c;
  c.cells.push_back({2, 2, Rational(1)});
  EXPECT_TRUE(validate_coupling(c, d, d).valid);
}

TEST(Coupling, PerturbedWeightIsRejectedInFloatMode) {
  const SparseDistribution<double> a({{0, 0.5}, {1, 0.5}});
  const SparseDistribution<double> b({{1, 0.5}, {2, 0.5}});
  Coupling<double> c;
  c.cells = {{0, 1, 0.5}, {1, 2, 0.5 + 1e-6}};
  const auto verdict = validate_coupling(c, a, b);
  EXPECT_FALSE(verdict.valid);
  EXPECT_NEAR(verdict.residual, 1e-6, 1e-9);
  EXPECT_FALSE(verdict.violation.empty());
}

TEST(Coupling, NonPositiveCellIsRejected) {
  const auto d = SparseDistribution<Rational>::dirac(0);
  Coupling<Rational> c;
  c.cells = {{0, 0, Rational(1)}, {0, 1, Rational(0)}};
  EXPECT_FALSE(validate_coupling(c, d, d).valid);
}

TEST(Coupling, NormalizeMergesDuplicates) {
  Coupling<Rational> c;
  c.cells = {{1, 0, fraction(1, 4)}, {0, 1, fraction(1, 4)}, {1, 0, fraction(1, 2)}};
  c.normalize();
  ASSERT_EQ(c.cells.size(), 2u);
  EXPECT_EQ(c.cells[0].x, 0u);
  EXPECT_EQ(c.cells[1].weight, fraction(3, 4));
}

TEST(CouplingCost, DiagonalAndDirac) {
  const auto g = cycle_graph(6);
  const auto m = lazy_kernel<Rational>(g, fraction(1, 3));
  Coupling<Rational> diagonal;
  for (const auto& [x, w] : m.row(0).entries()) diagonal.cells.push_back({x, x, w});
  EXPECT_EQ(coupling_cost(diagonal, g), Rational(0));
  Coupling<Rational> dirac;
  dirac.cells.push_back({0, 3, Rational(1)});
  EXPECT_EQ(coupling_cost(dirac, g), Rational(3));
}

TEST(Wasserstein, SelfDistanceIsZero) {
  const auto g = petersen_graph();
  const auto m = lazy_kernel<Rational>(g, fraction(1, 2));
  EXPECT_EQ(wasserstein(m.row(4), m.row(4), g).distance, Rational(0));
}

TEST(Wasserstein, DiracsGiveGraphDistance) {
  const auto g = path_graph(5);
  const auto r = wasserstein(SparseDistribution<Rational>::dirac(0), SparseDistribution<Rational>::dirac(4), g);
  EXPECT_EQ(r.distance, Rational(4));
  const auto dual = kantorovich_dual(SparseDistribution<Rational>::dirac(0), SparseDistribution<Rational>::dirac(4), g);
  EXPECT_EQ(dual.value, Rational(4));
}

TEST(Wasserstein, TriangleSimpleWalk) {
  const auto g = complete_graph(3);
  const auto m = lazy_kernel<Rational>(g, Rational(0));
  const auto r = wasserstein(m.row(0), m.row(1), g);
  EXPECT_EQ(r.distance, fraction(1, 2));
  EXPECT_TRUE(validate_coupling(r.optimal_coupling, m.row(0), m.row(1)).valid);
  EXPECT_EQ(coupling_cost(r.optimal_coupling, g), r.distance);
}

TEST(Wasserstein, FourCycleDualCertificate) {
  const auto g = cycle_graph(4);
  const auto m = lazy_kernel<Rational>(g, Rational(0));
  const auto r = wasserstein(m.row(0), m.row(1), g);
  EXPECT_EQ(r.distance, Rational(1));
  EXPECT_NO_THROW(require_lipschitz(g, r.dual_potential, 1.0));
  double value = 0;
  for (StateIndex x = 0; x < 4; ++x) value += r.dual_potential(x) * to_double(Rational(m(0, x) - m(1, x)));
  EXPECT_DOUBLE_EQ(value, 1.0);
}

TEST(Wasserstein, MatchesVertexEnumerationOracle) {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + uniform_below(rng, 8);
    const auto g = random_connected_graph(n, 0.2, rng);
    const auto a = random_distribution(n, 4, rng);
    const auto b = random_distribution(n, 4, rng);
    const auto r = wasserstein(a, b, g);
    ASSERT_EQ(r.distance, oracle::wasserstein(a, b, g)) << "trial " << trial;
    EXPECT_TRUE(validate_coupling(r.optimal_coupling, a, b).valid);
    EXPECT_EQ(coupling_cost(r.optimal_coupling, g), r.distance);
  }
}

TEST(Wasserstein, MetricProperties) {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4 + uniform_below(rng, 10);
    auto g = random_connected_graph(n, 0.1, rng);
    const auto a = random_distribution(n, 5, rng);
    const auto b = random_distribution(n, 5, rng);
    const auto c = random_distribution(n, 5, rng);
    const Rational ab = wasserstein(a, b, g).distance;
    EXPECT_EQ(ab, wasserstein(b, a, g).distance);
    EXPECT_LE(Rational(wasserstein(a, c, g).distance), Rational(ab + wasserstein(b, c, g).distance));
    EXPECT_LE(ab, Rational(diameter(g)));
    EXPECT_GE(coupling_cost(product_coupling(a, b), g), ab);
    // Cached distances give the same answer.
    g.build_distance_cache();
    EXPECT_EQ(wasserstein(a, b, g).distance, ab);
  }
}

TEST(Wasserstein, StrongDualityOnRandomGraphs) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + uniform_below(rng, 29);
    const auto g = random_connected_graph(n, 3.0 / static_cast<double>(n), rng);
    const auto a = random_distribution(n, 8, rng).to_double_distribution();
    const auto b = random_distribution(n, 8, rng).to_double_distribution();
    const auto primal = wasserstein(a, b, g);
    const auto dual = kantorovich_dual(a, b, g);
    EXPECT_NEAR(primal.distance, dual.value, 1e-9);
    EXPECT_NO_THROW(require_lipschitz(g, dual.potential, 1.0, 1e-9));
  }
}

TEST(Wasserstein, RationalAndFloatAgree) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + uniform_below(rng, 12);
    const auto g = random_connected_graph(n, 0.2, rng);
    const auto a = random_distribution(n, 6, rng);
    const auto b = random_distribution(n, 6, rng);
    EXPECT_NEAR(to_double(wasserstein(a, b, g).distance),
                wasserstein(a.to_double_distribution(), b.to_double_distribution(), g).distance, 1e-12);
  }
}

TEST(Wasserstein, DisconnectedSupportsThrow) {
  StateGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  EXPECT_THROW(wasserstein(SparseDistribution<Rational>::dirac(0), SparseDistribution<Rational>::dirac(3), g), Error);
}
