#include <gtest/gtest.h>

#include <cmath>

#include "ricci/bounds.hpp"
#include "ricci/checks.hpp"
#include "ricci/curvature.hpp"
#include "ricci/error.hpp"
#include "ricci/geometrize.hpp"

using namespace ricci;

namespace {

// Roots of x e^{2x} = 2(2 - κ) to 18 digits, from an independent
// arbitrary-precision solver.
constexpr double kLambdaAtZero = 0.802905998160088798;
constexpr double kLambdaAtHalf = 0.716202387949150156;
constexpr double kLambdaAtOne = 0.601083936598521470;

double bound(double kappa, double t, BoundVariant v, bool two_sided = false) {
  return tail_bound({.kappa = kappa, .t = t, .variant = v, .two_sided = two_sided}).value;
}

}  // namespace

TEST(Lambda0, KnownRoots) {
  EXPECT_NEAR(solve_lambda0(1.0), 0.60108, 1e-4);
  EXPECT_NEAR(solve_lambda0(0.0), 0.80290, 1e-4);
  EXPECT_NEAR(solve_lambda0(1.0), kLambdaAtOne, 1e-12);
  EXPECT_NEAR(solve_lambda0(0.0), kLambdaAtZero, 1e-12);
  EXPECT_NEAR(solve_lambda0(0.5), kLambdaAtHalf, 1e-12);
}

TEST(Lambda0, ResidualAndMonotonicity) {
  double previous = solve_lambda0(0.0);
  for (int i = 1; i <= 100; ++i) {
    const double kappa = i / 100.0;
    const double x = solve_lambda0(kappa);
    EXPECT_LE(std::abs(x * std::exp(2 * x) - 2 * (2 - kappa)), 1e-12);
    EXPECT_LT(x, previous);
    EXPECT_GT(x / 4, 1.0 / 7);
    previous = x;
  }
}

TEST(Lambda0, OutOfRange) {
  EXPECT_THROW(solve_lambda0(-0.1), Error);
  EXPECT_THROW(solve_lambda0(1.1), Error);
}

TEST(TailBound, Formulas) {
  EXPECT_DOUBLE_EQ(bound(1.0 / 3, 1, BoundVariant::Seven), std::exp(-1.0 / 21));
  EXPECT_DOUBLE_EQ(bound(1.0 / 3, 1, BoundVariant::Five), std::exp(-1.0 / 15));
  EXPECT_NEAR(bound(1.0, 1.5, BoundVariant::Exact), std::exp(-2.25 * kLambdaAtOne / 4), 1e-12);
  EXPECT_DOUBLE_EQ(bound(0.5, 4, BoundVariant::Seven, true), 2 * std::exp(-8.0 / 7));
  EXPECT_DOUBLE_EQ(bound(0.01, 1, BoundVariant::Seven, true), 1.0);
}

TEST(TailBound, CutoffBeyondTwoOverKappa) {
  const auto b = tail_bound({.kappa = 1.0 / 3, .t = 7, .variant = BoundVariant::Seven, .two_sided = false});
  EXPECT_EQ(b.value, 0.0);
  EXPECT_TRUE(b.beyond_cutoff);
  EXPECT_GT(bound(1.0 / 3, 6, BoundVariant::Seven), 0.0);
}

TEST(TailBound, FlagsSmallT) {
  EXPECT_TRUE(tail_bound({.kappa = 0.5, .t = 0.5, .variant = BoundVariant::Seven, .two_sided = false})
                  .outside_theorem_hypothesis);
  EXPECT_FALSE(tail_bound({.kappa = 0.5, .t = 1, .variant = BoundVariant::Seven, .two_sided = false})
                   .outside_theorem_hypothesis);
}

TEST(TailBound, Errors) {
  EXPECT_THROW(bound(0.0, 1, BoundVariant::Seven), Error);
  EXPECT_THROW(bound(0.5, -1, BoundVariant::Seven), Error);
  EXPECT_THROW(bound(1.5, 1, BoundVariant::Exact), Error);
  EXPECT_NO_THROW(bound(1.5, 1, BoundVariant::Seven));
}

TEST(TailBound, Orderings) {
  for (int i = 1; i <= 20; ++i) {
    const double kappa = i / 20.0;
    double previous = 1.0;
    for (double t = 1; t <= 2 / kappa; t += 0.25) {
      const double exact = bound(kappa, t, BoundVariant::Exact);
      const double seven = bound(kappa, t, BoundVariant::Seven);
      EXPECT_LE(exact, seven);
      EXPECT_LE(bound(kappa, t, BoundVariant::Five), seven);
      EXPECT_LE(seven, previous);
      if (i > 1) EXPECT_LE(seven, bound((i - 1) / 20.0, t, BoundVariant::Seven));
      previous = seven;
    }
  }
}

TEST(TailBound, VariantNames) {
  EXPECT_EQ(parse_bound_variant("five"), BoundVariant::Five);
  EXPECT_EQ(to_string(BoundVariant::Exact), "exact");
  EXPECT_THROW(parse_bound_variant("six"), Error);
}

TEST(Mgf, ConstantAndTriangle) {
  const auto g = complete_graph(3);
  const auto m = lazy_kernel<Rational>(g, Rational(0));
  EXPECT_LT(mgf_inequality_check(g, m, StateFunction{{2, 2, 2}}, 0.5, 1.0).worst_ratio, 1.0);
  for (int i = 1; i <= 10; ++i) {
    EXPECT_LE(mgf_inequality_check(g, m, StateFunction{{0, 1, 1}}, i / 10.0, 1.0).worst_ratio, 1.0 + 1e-12);
  }
  EXPECT_THROW(mgf_inequality_check(g, m, StateFunction{{0, 3, 1}}, 0.5, 1.0), Error);
}

TEST(Mgf, RandomFunctionsOnConfigurationSpaces) {
  Rng rng(10);
  for (const auto& space : {build_gnp(3, fraction(3, 10)), build_gnm(4, 2), build_permutation_insertion(3)}) {
    for (int i = 0; i < 20; ++i) {
      const StateFunction phi{random_lipschitz_function(space.graph(), rng)};
      for (int l = 1; l <= 10; ++l) {
        EXPECT_LE(mgf_inequality_check(space.graph(), space.kernel_double(), phi, l / 10.0, 1.0).worst_ratio,
                  1.0 + 1e-12);
      }
      EXPECT_LE(variance_bound_check(space.kernel_double(), phi, 1.0).worst_variance, 1.0);
    }
  }
}

TEST(Variance, Examples) {
  StateGraph edge(2);
  edge.add_edge(0, 1);
  const auto half = lazy_kernel<Rational>(edge, fraction(1, 2));
  EXPECT_DOUBLE_EQ(variance_bound_check(half, StateFunction{{0, 1}}, 1.0).worst_variance, 0.25);
  EXPECT_DOUBLE_EQ(variance_bound_check(half, StateFunction{{3, 3}}, 1.0).worst_variance, 0.0);
  const auto identity = lazy_kernel<Rational>(edge, Rational(1));
  EXPECT_DOUBLE_EQ(variance_bound_check(identity, StateFunction{{0, 1}}, 1.0).worst_variance, 0.0);
  EXPECT_THROW(variance_bound_check(half, StateFunction{{0, 2}}, 1.0), Error);
}

TEST(MgfChain, StationaryLimit) {
  Rng rng(21);
  for (const auto& space : {build_gnm(4, 2), build_hypergraph(4, 3, 2), build_doutregular(3, 1)}) {
    const double kappa = to_double(*space.claimed_kappa_lb());
    for (int i = 0; i < 5; ++i) {
      const StateFunction f{random_lipschitz_function(space.graph(), rng)};
      const auto v = mgf_chain_check(space.graph(), space.kernel_double(), f, 0.5, kappa);
      EXPECT_GT(v.iterations, 0u);
      EXPECT_LE(v.lhs, v.rhs * (1 + 1e-9));
    }
  }
}
