#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ricci/geometrize.hpp"
#include "ricci/models.hpp"

namespace ricci {

/// Small undirected pattern graph F on vertices 0..vertices-1.
struct SmallGraph {
  unsigned vertices = 0;
  std::vector<std::pair<unsigned, unsigned>> edges;
};

/// K3, C4, K4, P3 (path on three vertices) and "edge".
SmallGraph named_small_graph(std::string_view name);

enum class ObservableKind { Subgraph, EdgeCount, DirectedTriangles, Pattern };

struct PatternSpec {
  ObservableKind kind = ObservableKind::EdgeCount;
  SmallGraph graph;                  // Subgraph
  std::vector<unsigned> pattern;     // Pattern, one-line over 1..k
  std::string id;                    // canonical text, e.g. "subgraph:K3", "pattern:21"
};

/// "edges", "directed-triangles", "subgraph:K3", "subgraph:0-1,1-2,2-0",
/// "pattern:21", "pattern:1 3 2" or "pattern:1,3,2".
PatternSpec parse_pattern_spec(std::string_view text);

inline constexpr unsigned kMaxPatternVertices = 8;

/// Undirected host graph as adjacency bitmasks (at most 64 vertices).
using HostGraph = std::vector<std::uint64_t>;
/// Decodes a G(n,p)/G(n,M) configuration word.
HostGraph host_from_pairs(unsigned n, std::uint64_t pair_mask);

std::uint64_t automorphism_count(const SmallGraph& f);
/// Unlabeled copies of F in G: injective edge-preserving maps / |Aut(F)|.
/// Throws PatternTooLarge for more than 8 pattern vertices.
std::uint64_t count_subgraph(const HostGraph& g, const SmallGraph& f);

/// Cyclic triples, once per orientation present. out[v] is v's out-mask.
std::uint64_t count_directed_triangles(const std::vector<std::uint64_t>& out);

/// Occurrences of tau in pi (both one-line over 1..len). Throws
/// PatternTooLarge when |tau| > |pi| or |tau| > 8.
std::uint64_t count_pattern(const std::vector<std::uint64_t>& pi, const std::vector<unsigned>& tau);

using ConfigurationFunction = std::function<double(const Configuration&)>;

/// The observable as a function on the model's configurations. Throws
/// IncompatiblePair when the observable does not live on this model.
ConfigurationFunction make_observable(const PatternSpec& spec, const ConfigurationModel& model);

/// C(n, v(F)-2) for X_F on G(n,M); d² for directed triangles on d-out
/// digraphs; C(n-1, k-1) for a length-k pattern on insertion permutations;
/// n-1 for the edge count on G(n,p). Throws IncompatiblePair otherwise.
double claimed_lipschitz_constant(const PatternSpec& spec, const ConfigurationModel& model);

struct LipschitzVerdict {
  double max_difference = 0.0;
  std::uint64_t edges_checked = 0;
};

/// |f(u) - f(v)| <= c over every edge of the enumerated space. Throws
/// LipschitzViolation naming the first offending edge.
LipschitzVerdict verify_lipschitz(const GeometrizedSpace& space, const ConfigurationFunction& f, double c);

/// Same over all H-edges at `samples` configurations drawn from claimed_nu.
/// Draws are split into fixed chunks seeded from `seed`, so the verdict does
/// not depend on the thread count.
LipschitzVerdict verify_lipschitz_sampled(const ConfigurationModel& model, const ConfigurationFunction& f, double c,
                                          std::uint64_t samples, std::uint64_t seed, std::size_t threads = 0);

/// 2 C(n,3) (d/(n-1))³, an approximation of E[X_{n,d}]. Throws BadParams
/// unless 1 <= d <= n-2.
double expected_directed_triangles(unsigned n, unsigned d);

}  // namespace ricci
