#include <gtest/gtest.h>

#include <sstream>

#include "ricci/checks.hpp"
#include "ricci/error.hpp"
#include "ricci/io.hpp"

using namespace ricci;

TEST(EdgeList, ParsesCommentsAndLoops) {
  std::istringstream in("# triangle\n0 1\n1 2  # trailing\n\n2 0\n2 2\n");
  const auto g = read_edge_list(in);
  EXPECT_EQ(g.state_count(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(g.has_loop(2));
}

TEST(EdgeList, RejectsGarbage) {
  std::istringstream bad("0 x\n");
  EXPECT_THROW(read_edge_list(bad), Error);
  std::istringstream odd("0 1 2\n");
  EXPECT_THROW(read_edge_list(odd), Error);
}

TEST(Scalars, RationalStringsAndDecimals) {
  EXPECT_EQ(scalar_to_json(fraction(2, 4)), Json("1/2"));
  EXPECT_EQ(scalar_from_json<Rational>(Json("3/10")), fraction(3, 10));
  EXPECT_EQ(scalar_from_json<Rational>(Json(0.3)), fraction(3, 10));
  EXPECT_EQ(scalar_from_json<Rational>(Json(2)), Rational(2));
  EXPECT_DOUBLE_EQ(scalar_from_json<double>(Json("1/4")), 0.25);
  EXPECT_EQ(parse_rational("1e-2"), fraction(1, 100));
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(RoundTrip, DistributionKernelCoupling) {
  const auto g = petersen_graph();
  const auto m = lazy_kernel<Rational>(g, fraction(1, 4));
  const auto back = kernel_from_json<Rational>(kernel_to_json(m));
  ASSERT_EQ(back.state_count(), m.state_count());
  for (StateIndex x = 0; x < 10; ++x) EXPECT_EQ(back.row(x).entries(), m.row(x).entries());

  const auto r = wasserstein(m.row(0), m.row(5), g);
  const auto c = coupling_from_json<Rational>(coupling_to_json(r.optimal_coupling));
  ASSERT_EQ(c.cells.size(), r.optimal_coupling.cells.size());
  for (std::size_t i = 0; i < c.cells.size(); ++i) EXPECT_EQ(c.cells[i].weight, r.optimal_coupling.cells[i].weight);

  const auto d = distribution_from_json<double>(distribution_to_json(m.row(3).to_double_distribution()));
  EXPECT_EQ(d.entries(), m.row(3).to_double_distribution().entries());
}

TEST(RoundTrip, DistributionMustSumToOne) {
  EXPECT_THROW(distribution_from_json<Rational>(Json::parse(R"([[0, "1/2"], [1, "1/3"]])")), Error);
}

TEST(Reports, CurvatureJsonShape) {
  const auto g = complete_graph(3);
  const auto report = ricci_lower_bound(g, lazy_kernel<Rational>(g, Rational(0)), {.keep_certificates = true});
  const Json j = curvature_report_to_json(report, true);
  EXPECT_EQ(j["global_lb"], "1/2");
  EXPECT_EQ(j["edges"].size(), 3u);
  EXPECT_EQ(j["certificates"].size(), 3u);
  EXPECT_EQ(j["argmin_certificate"]["distance"], "1/2");
  EXPECT_FALSE(curvature_report_to_json(report, false).contains("certificates"));
}

TEST(Reports, SpaceJson) {
  const auto space = build_gnm(4, 2);
  const Json brief = space_to_json(space, false);
  EXPECT_EQ(brief["state_count"], 15);
  EXPECT_EQ(brief["claimed_kappa_lb"], "2/3");
  EXPECT_FALSE(brief.contains("kernel"));
  const Json full = space_to_json(space, true);
  EXPECT_EQ(full["kernel"].size(), 15u);
  EXPECT_EQ(full["claimed_nu"].size(), 15u);
}

TEST(Reports, TailCsvHasHeaderAndRows) {
  TailReport report;
  report.rows.push_back({.t = 1.0, .hits = 3, .empirical = 0.03, .ci = {0.01, 0.08}, .bound_seven = 0.5,
                         .bound_five = 0.4, .bound_exact = 0.3, .bound_seven_exact_kappa = std::nullopt});
  std::ostringstream out;
  write_tail_csv(out, report);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,empirical,ci_lo,ci_hi,bound_seven,bound_five,bound_exact");
  EXPECT_NE(text.find("\n1,0.03,0.01,0.08,0.5,0.4,0.3"), std::string::npos);
  EXPECT_EQ(tail_report_to_json(report)["rows"][0]["hits"], 3);
}

TEST(Verify, GroupsAndDeterministicJson) {
  EXPECT_EQ(verify_groups().size(), 9u);
  VerifyOptions options;
  options.only = {"gnm", "transport"};
  const auto first = verify_report_to_json(run_verify_paper(options), options).dump();
  options.threads = 1;
  const auto second = verify_report_to_json(run_verify_paper(options), options).dump();
  EXPECT_EQ(first, second);
  options.only = {"nope"};
  EXPECT_THROW(run_verify_paper(options), Error);
}
