#include <gtest/gtest.h>

#include <cmath>

#include "ricci/bounds.hpp"
#include "ricci/error.hpp"
#include "ricci/experiments.hpp"

using namespace ricci;

namespace {

const ConfigurationFunction kOne = [](const Configuration&) { return 1.0; };

TailReport inversions(unsigned n, std::uint64_t samples, std::uint64_t seed, std::size_t threads,
                      const std::vector<double>& grid) {
  const auto model = make_permutation_insertion_model(n);
  const auto spec = parse_pattern_spec("pattern:21");
  return estimate_tail(*model, make_observable(spec, *model), spec.id, claimed_lipschitz_constant(spec, *model), grid,
                       samples, seed, {.exact_kappa = std::nullopt, .threads = threads});
}

}  // namespace

TEST(Expectation, ConstantIsOne) {
  const auto e = exact_expectation(*make_gnm_model(4, 2), kOne);
  EXPECT_DOUBLE_EQ(e.value, 1.0);
  ASSERT_TRUE(e.exact.has_value());
  EXPECT_EQ(*e.exact, Rational(1));
}

TEST(Expectation, EdgeCountOnGnp) {
  const auto model = make_gnp_model(3, fraction(3, 10));
  const auto e = exact_expectation(*model, make_observable(parse_pattern_spec("edges"), *model));
  EXPECT_EQ(*e.exact, fraction(9, 10));
  EXPECT_NEAR(e.value, 0.9, 1e-15);
}

TEST(Expectation, DirectedTrianglesAgainstApproximation) {
  const auto space = build_doutregular(3, 1);
  const auto e = exact_expectation(space, make_observable(parse_pattern_spec("directed-triangles"), space.model()));
  // Of the 8 one-out digraphs on 3 vertices exactly the two cyclic ones hold a triangle.
  EXPECT_EQ(*e.exact, fraction(1, 4));
  EXPECT_DOUBLE_EQ(e.value, expected_directed_triangles(3, 1));
}

TEST(Expectation, NonIntegerValuesAreNotExact) {
  const auto e = exact_expectation(*make_gnm_model(4, 2), [](const Configuration&) { return 0.5; });
  EXPECT_FALSE(e.exact.has_value());
  EXPECT_DOUBLE_EQ(e.value, 0.5);
}

TEST(Expectation, TooLarge) {
  EXPECT_THROW(exact_expectation(*make_permutation_insertion_model(10), kOne, 1000), Error);
}

TEST(Wilson, ReferenceValues) {
  const auto a = wilson_interval(7, 100);
  EXPECT_NEAR(a.lo, 0.027715839994462504, 1e-12);
  EXPECT_NEAR(a.hi, 0.1657939514411453, 1e-12);
  const auto b = wilson_interval(0, 100000);
  EXPECT_EQ(b.lo, 0.0);
  EXPECT_NEAR(b.hi, 6.634456411698259e-05, 1e-15);
  const auto c = wilson_interval(100, 100);
  EXPECT_NEAR(c.lo, 0.9377793122841772, 1e-12);
  EXPECT_DOUBLE_EQ(c.hi, 1.0);
}

TEST(Grid, Parsing) {
  EXPECT_EQ(parse_t_grid("1:2:3"), (std::vector<double>{1.0, 1.5, 2.0}));
  EXPECT_EQ(linear_grid(0, 1, 1), (std::vector<double>{0.0}));
  EXPECT_THROW(parse_t_grid("1:2"), Error);
  EXPECT_THROW(parse_t_grid("2:1:3"), Error);
  EXPECT_THROW(linear_grid(0, 1, 0), Error);
}

TEST(Tail, ZeroRowAndEnvelope) {
  const auto report = inversions(6, 20000, 1, 0, {0.0, 1.0, 2.0, 3.0});
  ASSERT_EQ(report.rows.size(), 4u);
  EXPECT_EQ(report.rows[0].bound_seven, 1.0);
  EXPECT_LE(report.rows[0].empirical, 1.0);
  EXPECT_TRUE(report.mean_exact);
  EXPECT_DOUBLE_EQ(report.mean, 7.5);  // C(6,2)/2 inversions on average
  EXPECT_TRUE(report.envelope_holds);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    EXPECT_LE(report.rows[i].empirical, report.rows[i - 1].empirical);
    const double kappa = report.kappa;
    EXPECT_DOUBLE_EQ(report.rows[i].bound_seven,
                     tail_bound({.kappa = kappa, .t = report.rows[i].t, .variant = BoundVariant::Seven,
                                 .two_sided = true})
                         .value);
  }
}

TEST(Tail, DeterministicAcrossThreadCounts) {
  const auto a = inversions(7, 10000, 42, 1, {1.0, 1.5, 2.0});
  const auto b = inversions(7, 10000, 42, 5, {1.0, 1.5, 2.0});
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].hits, b.rows[i].hits);
  const auto c = inversions(7, 10000, 43, 1, {1.0, 1.5, 2.0});
  bool differs = false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) differs |= a.rows[i].hits != c.rows[i].hits;
  EXPECT_TRUE(differs);
}

TEST(Tail, TooFewSamples) {
  EXPECT_THROW(inversions(5, 100, 1, 1, {1.0}), Error);
}

TEST(Tail, TranspositionNeedsKappa) {
  const auto model = make_permutation_transposition_model(4, fraction(1, 2));
  const auto spec = parse_pattern_spec("pattern:21");
  const auto f = make_observable(spec, *model);
  try {
    estimate_tail(*model, f, spec.id, 6.0, {1.0}, 10000, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingKappa);
  }
  const auto report = estimate_tail(*model, f, spec.id, 6.0, {1.0}, 10000, 1, {.exact_kappa = 1.0 / 6});
  EXPECT_EQ(report.kappa_source, "exact");
}

TEST(Tail, SampleMeanNearExactMean) {
  // Sampling-only path: force the mean to be estimated by capping enumeration.
  const auto model = make_gnm_model(6, 7);
  const auto spec = parse_pattern_spec("subgraph:K3");
  const auto f = make_observable(spec, *model);
  const auto exact = exact_expectation(*model, f);
  const auto report = estimate_tail(*model, f, spec.id, 4.0, {1.0}, 40000, 9,
                                    {.exact_kappa = std::nullopt, .threads = 0, .cap = 10});
  EXPECT_FALSE(report.mean_exact);
  // X_K3 lies in [0, 20] on six vertices, so its deviation is at most 20.
  const double sigma = 20.0 / std::sqrt(40000.0);
  EXPECT_NEAR(report.mean, exact.value, 5 * sigma);
}

TEST(Regimes, Orderings) {
  const auto rows = compare_bound_regimes(1.0, linear_grid(0.5, 2.0, 4));
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    EXPECT_LE(rows[i].exact, rows[i].seven);
    EXPECT_LE(rows[i].five, rows[i].seven);
    EXPECT_FALSE(rows[i].beyond_cutoff);
  }
  EXPECT_TRUE(rows.back().beyond_cutoff);
  EXPECT_GT(rows.back().t, 2.0);
  EXPECT_EQ(rows.back().seven, 0.0);
  EXPECT_EQ(rows.back().exact, 0.0);
}
