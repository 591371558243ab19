#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "ricci/combinatorics.hpp"
#include "ricci/error.hpp"
#include "ricci/observables.hpp"

using namespace ricci;

namespace {

HostGraph host_from_edges(unsigned n, const std::vector<std::pair<unsigned, unsigned>>& edges) {
  HostGraph g(n, 0);
  for (auto [u, v] : edges) {
    g[u] |= std::uint64_t{1} << v;
    g[v] |= std::uint64_t{1} << u;
  }
  return g;
}

HostGraph complete_host(unsigned n) {
  HostGraph g(n);
  for (unsigned v = 0; v < n; ++v) g[v] = ((std::uint64_t{1} << n) - 1) & ~(std::uint64_t{1} << v);
  return g;
}

bool has(const HostGraph& g, unsigned u, unsigned v) { return (g[u] >> v & 1) != 0; }

// Naive oracle: edge sets of F-copies, found by trying every injective map
// and recording the image edge set, so automorphisms collapse on their own.
std::uint64_t naive_subgraph(const HostGraph& g, const SmallGraph& f) {
  const unsigned n = static_cast<unsigned>(g.size());
  std::vector<unsigned> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<std::vector<std::pair<unsigned, unsigned>>> copies;
  std::vector<unsigned> image(f.vertices);
  auto search = [&](auto&& self, unsigned i, std::uint64_t used) -> void {
    if (i == f.vertices) {
      std::vector<std::pair<unsigned, unsigned>> edges;
      for (auto [a, b] : f.edges) {
        if (!has(g, image[a], image[b])) return;
        edges.emplace_back(std::min(image[a], image[b]), std::max(image[a], image[b]));
      }
      std::sort(edges.begin(), edges.end());
      copies.push_back(std::move(edges));
      return;
    }
    for (unsigned v = 0; v < n; ++v) {
      if (used >> v & 1) continue;
      image[i] = v;
      self(self, i + 1, used | std::uint64_t{1} << v);
    }
  };
  search(search, 0, 0);
  std::sort(copies.begin(), copies.end());
  copies.erase(std::unique(copies.begin(), copies.end()), copies.end());
  return copies.size();
}

std::uint64_t naive_directed_triangles(const std::vector<std::uint64_t>& out) {
  auto arc = [&](unsigned a, unsigned b) { return (out[a] >> b & 1) != 0; };
  std::uint64_t count = 0;
  const unsigned n = static_cast<unsigned>(out.size());
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = a + 1; b < n; ++b)
      for (unsigned c = b + 1; c < n; ++c) {
        if (arc(a, b) && arc(b, c) && arc(c, a)) ++count;
        if (arc(a, c) && arc(c, b) && arc(b, a)) ++count;
      }
  return count;
}

std::uint64_t naive_pattern(const std::vector<std::uint64_t>& pi, const std::vector<unsigned>& tau) {
  const std::size_t n = pi.size();
  const std::size_t k = tau.size();
  std::vector<bool> choose(n, false);
  std::fill(choose.begin(), choose.begin() + static_cast<long>(k), true);
  std::uint64_t count = 0;
  do {
    std::vector<std::uint64_t> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (choose[i]) sub.push_back(pi[i]);
    bool match = true;
    for (std::size_t a = 0; a < k && match; ++a)
      for (std::size_t b = 0; b < k && match; ++b) match = (sub[a] < sub[b]) == (tau[a] < tau[b]);
    count += match;
  } while (std::prev_permutation(choose.begin(), choose.end()));
  return count;
}

}  // namespace

TEST(Subgraph, Examples) {
  EXPECT_EQ(count_subgraph(complete_host(4), named_small_graph("K3")), 4u);
  EXPECT_EQ(count_subgraph(host_from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}), named_small_graph("K3")), 0u);
  EXPECT_EQ(count_subgraph(complete_host(4), named_small_graph("C4")), 3u);
  EXPECT_EQ(automorphism_count(named_small_graph("K4")), 24u);
  EXPECT_EQ(automorphism_count(named_small_graph("C4")), 8u);
}

TEST(Subgraph, SingleEdgeCountsEdges) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned n = 2 + static_cast<unsigned>(uniform_below(rng, 7));
    const std::uint64_t mask = rng() & ((std::uint64_t{1} << binomial(n, 2)) - 1);
    EXPECT_EQ(count_subgraph(host_from_pairs(n, mask), named_small_graph("edge")),
              static_cast<std::uint64_t>(std::popcount(mask)));
  }
}

TEST(Subgraph, MatchesNaiveEnumerator) {
  Rng rng(2);
  const std::vector<SmallGraph> patterns{named_small_graph("K3"), named_small_graph("P3"), named_small_graph("C4"),
                                         named_small_graph("K4"), parse_pattern_spec("subgraph:0-1,1-2,2-3").graph};
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned n = 3 + static_cast<unsigned>(uniform_below(rng, 5));
    const std::uint64_t mask = rng() & ((std::uint64_t{1} << binomial(n, 2)) - 1);
    const HostGraph g = host_from_pairs(n, mask);
    const auto& f = patterns[trial % patterns.size()];
    if (f.vertices > n) continue;
    ASSERT_EQ(count_subgraph(g, f), naive_subgraph(g, f)) << "trial " << trial;
  }
}

TEST(Subgraph, TooLarge) {
  SmallGraph big{9, {{0, 1}}};
  EXPECT_THROW(count_subgraph(complete_host(10), big), Error);
}

TEST(DirectedTriangles, Examples) {
  EXPECT_EQ(count_directed_triangles({0b010, 0b100, 0b001}), 1u);
  EXPECT_EQ(count_directed_triangles({0b110, 0b100, 0b000}), 0u);
  EXPECT_EQ(count_directed_triangles({0b1110, 0b1101, 0b1011, 0b0111}), 8u);
}

TEST(DirectedTriangles, MatchesNaiveAndRelabelInvariant) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned n = 3 + static_cast<unsigned>(uniform_below(rng, 6));
    std::vector<std::uint64_t> out(n);
    for (unsigned v = 0; v < n; ++v) out[v] = rng() & ((std::uint64_t{1} << n) - 1) & ~(std::uint64_t{1} << v);
    const auto count = count_directed_triangles(out);
    ASSERT_EQ(count, naive_directed_triangles(out));
    std::vector<unsigned> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    shuffle(std::span(relabel), rng);
    std::vector<std::uint64_t> moved(n, 0);
    for (unsigned u = 0; u < n; ++u)
      for (unsigned v : bit_positions(out[u])) moved[relabel[u]] |= std::uint64_t{1} << relabel[v];
    EXPECT_EQ(count_directed_triangles(moved), count);
  }
}

TEST(Pattern, Examples) {
  EXPECT_EQ(count_pattern({1, 2, 3}, {1, 2}), 3u);
  EXPECT_EQ(count_pattern({1, 2, 3}, {2, 1}), 0u);
  EXPECT_EQ(count_pattern({2, 4, 1, 3}, {1, 3, 2}), 1u);
  EXPECT_THROW(count_pattern({1, 2}, {1, 2, 3}), Error);
}

TEST(Pattern, MatchesNaiveAndComplementaryPairs) {
  Rng rng(4);
  const std::vector<std::vector<unsigned>> patterns{{1, 2}, {2, 1}, {1, 3, 2}, {2, 3, 1}, {2, 4, 1, 3}, {3, 1, 2}};
  for (int trial = 0; trial < 120; ++trial) {
    const unsigned n = 4 + static_cast<unsigned>(uniform_below(rng, 6));
    std::vector<std::uint64_t> pi(n);
    std::iota(pi.begin(), pi.end(), 1);
    shuffle(std::span(pi), rng);
    const auto& tau = patterns[trial % patterns.size()];
    ASSERT_EQ(count_pattern(pi, tau), naive_pattern(pi, tau));
    EXPECT_EQ(count_pattern(pi, {1, 2}) + count_pattern(pi, {2, 1}), binomial(n, 2));
  }
}

TEST(Specs, Parsing) {
  EXPECT_EQ(parse_pattern_spec("edges").kind, ObservableKind::EdgeCount);
  EXPECT_EQ(parse_pattern_spec("directed-triangles").kind, ObservableKind::DirectedTriangles);
  const auto k3 = parse_pattern_spec("subgraph:K3");
  EXPECT_EQ(k3.kind, ObservableKind::Subgraph);
  EXPECT_EQ(k3.graph.vertices, 3u);
  EXPECT_EQ(k3.id, "subgraph:K3");
  EXPECT_EQ(parse_pattern_spec("pattern:132").pattern, (std::vector<unsigned>{1, 3, 2}));
  EXPECT_EQ(parse_pattern_spec("pattern:1 3 2").pattern, (std::vector<unsigned>{1, 3, 2}));
  EXPECT_EQ(parse_pattern_spec("pattern:1,3,2").pattern, (std::vector<unsigned>{1, 3, 2}));
  EXPECT_THROW(parse_pattern_spec("pattern:113"), Error);
  EXPECT_THROW(parse_pattern_spec("triangles"), Error);
}

TEST(Lipschitz, ClaimedConstants) {
  EXPECT_DOUBLE_EQ(claimed_lipschitz_constant(parse_pattern_spec("subgraph:K3"), *make_gnm_model(10, 20)), 10.0);
  EXPECT_DOUBLE_EQ(claimed_lipschitz_constant(parse_pattern_spec("directed-triangles"), *make_doutregular_model(5, 2)),
                   4.0);
  EXPECT_DOUBLE_EQ(claimed_lipschitz_constant(parse_pattern_spec("pattern:21"), *make_permutation_insertion_model(7)),
                   6.0);
  EXPECT_THROW(claimed_lipschitz_constant(parse_pattern_spec("pattern:21"), *make_gnm_model(4, 2)), Error);
  EXPECT_THROW(make_observable(parse_pattern_spec("subgraph:K3"), *make_permutation_insertion_model(4)), Error);
}

TEST(Lipschitz, ExhaustiveOnSmallSpaces) {
  const auto gnm = build_gnm(5, 4);
  const auto k3 = parse_pattern_spec("subgraph:K3");
  EXPECT_LE(verify_lipschitz(gnm, make_observable(k3, gnm.model()), 5.0).max_difference, 5.0);

  const auto dout = build_doutregular(4, 1);
  const auto tri = parse_pattern_spec("directed-triangles");
  EXPECT_LE(verify_lipschitz(dout, make_observable(tri, dout.model()), 1.0).max_difference, 1.0);

  const auto perm = build_permutation_insertion(5);
  const auto inv = parse_pattern_spec("pattern:21");
  const auto v = verify_lipschitz(perm, make_observable(inv, perm.model()), 4.0);
  EXPECT_DOUBLE_EQ(v.max_difference, 4.0);
  EXPECT_GT(v.edges_checked, 0u);

  const auto constant = [](const Configuration&) { return 3.0; };
  EXPECT_EQ(verify_lipschitz(gnm, constant, 0.0).max_difference, 0.0);
}

TEST(Lipschitz, ViolationNamesAnEdge) {
  const auto perm = build_permutation_insertion(5);
  const auto inv = make_observable(parse_pattern_spec("pattern:21"), perm.model());
  try {
    verify_lipschitz(perm, inv, 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LipschitzViolation);
  }
}

TEST(Lipschitz, SampledAgreesAcrossThreadCounts) {
  const auto model = make_gnm_model(9, 12);
  const auto f = make_observable(parse_pattern_spec("subgraph:K3"), *model);
  const auto one = verify_lipschitz_sampled(*model, f, 9.0, 200, 5, 1);
  const auto four = verify_lipschitz_sampled(*model, f, 9.0, 200, 5, 4);
  EXPECT_EQ(one.max_difference, four.max_difference);
  EXPECT_EQ(one.edges_checked, four.edges_checked);
  EXPECT_LE(one.max_difference, 9.0);
}

TEST(DirectedTriangles, ExpectationApproximation) {
  EXPECT_DOUBLE_EQ(expected_directed_triangles(3, 1), 0.25);
  EXPECT_LT(expected_directed_triangles(6, 1), expected_directed_triangles(6, 2));
  EXPECT_LT(expected_directed_triangles(6, 2), expected_directed_triangles(6, 3));
  EXPECT_THROW(expected_directed_triangles(3, 0), Error);
}
