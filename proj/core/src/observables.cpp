#include "ricci/observables.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>

#include "ricci/combinatorics.hpp"
#include "ricci/error.hpp"
#include "ricci/parallel.hpp"

namespace ricci {

namespace {

constexpr std::uint64_t bit(unsigned i) { return std::uint64_t{1} << i; }

unsigned parse_unsigned(std::string_view text, std::string_view what) {
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorKind::InvalidInput, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, std::string_view separators) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find_first_of(separators, start);
    const auto piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (!piece.empty()) out.push_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::vector<std::uint64_t> pattern_masks(const SmallGraph& f) {
  std::vector<std::uint64_t> adj(f.vertices, 0);
  for (auto [u, v] : f.edges) {
    adj[u] |= bit(v);
    adj[v] |= bit(u);
  }
  return adj;
}

void check_pattern_graph(const SmallGraph& f) {
  if (f.vertices > kMaxPatternVertices) {
    throw Error(ErrorKind::PatternTooLarge, "pattern graphs are limited to 8 vertices");
  }
  for (auto [u, v] : f.edges) {
    if (u == v || u >= f.vertices || v >= f.vertices) {
      throw Error(ErrorKind::InvalidInput, "pattern edge " + std::to_string(u) + "-" + std::to_string(v) + " is invalid");
    }
  }
}

}  // namespace

SmallGraph named_small_graph(std::string_view name) {
  if (name == "edge") return {2, {{0, 1}}};
  if (name == "P3") return {3, {{0, 1}, {1, 2}}};
  if (name == "K3") return {3, {{0, 1}, {1, 2}, {0, 2}}};
  if (name == "C4") return {4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
  if (name == "K4") return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  throw Error(ErrorKind::InvalidInput, "unknown pattern graph '" + std::string(name) + "'");
}

PatternSpec parse_pattern_spec(std::string_view text) {
  PatternSpec spec;
  spec.id = std::string(text);
  if (text == "edges") {
    spec.kind = ObservableKind::EdgeCount;
    return spec;
  }
  if (text == "directed-triangles") {
    spec.kind = ObservableKind::DirectedTriangles;
    return spec;
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorKind::InvalidInput, "unknown observable '" + spec.id + "'");
  const auto head = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  if (head == "subgraph") {
    spec.kind = ObservableKind::Subgraph;
    if (body.find('-') == std::string_view::npos) {
      spec.graph = named_small_graph(body);
    } else {
      for (auto piece : split(body, ", ")) {
        const auto dash = piece.find('-');
        if (dash == std::string_view::npos) throw Error(ErrorKind::InvalidInput, "bad pattern edge '" + std::string(piece) + "'");
        const unsigned u = parse_unsigned(piece.substr(0, dash), "vertex");
        const unsigned v = parse_unsigned(piece.substr(dash + 1), "vertex");
        spec.graph.vertices = std::max({spec.graph.vertices, u + 1, v + 1});
        spec.graph.edges.emplace_back(std::min(u, v), std::max(u, v));
      }
    }
    check_pattern_graph(spec.graph);
    return spec;
  }
  if (head == "pattern") {
    spec.kind = ObservableKind::Pattern;
    if (body.find_first_of(" ,") == std::string_view::npos) {
      for (char ch : body) spec.pattern.push_back(parse_unsigned(std::string_view(&ch, 1), "pattern entry"));
    } else {
      for (auto piece : split(body, " ,")) spec.pattern.push_back(parse_unsigned(piece, "pattern entry"));
    }
    std::vector<unsigned> sorted = spec.pattern;
    std::sort(sorted.begin(), sorted.end());
    for (unsigned i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != i + 1) throw Error(ErrorKind::InvalidInput, "'" + std::string(body) + "' is not a permutation of 1..k");
    }
    if (spec.pattern.empty()) throw Error(ErrorKind::InvalidInput, "empty pattern");
    if (spec.pattern.size() > kMaxPatternVertices) throw Error(ErrorKind::PatternTooLarge, "patterns are limited to length 8");
    return spec;
  }
  throw Error(ErrorKind::InvalidInput, "unknown observable '" + spec.id + "'");
}

HostGraph host_from_pairs(unsigned n, std::uint64_t pair_mask) {
  HostGraph adj(n, 0);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i + 1; j < n; ++j) {
      if (pair_mask & bit(pair_index(n, i, j))) {
        adj[i] |= bit(j);
        adj[j] |= bit(i);
      }
    }
  }
  return adj;
}

std::uint64_t automorphism_count(const SmallGraph& f) {
  check_pattern_graph(f);
  const auto adj = pattern_masks(f);
  std::vector<unsigned> perm(f.vertices);
  std::iota(perm.begin(), perm.end(), 0u);
  std::uint64_t count = 0;
  do {
    bool preserves = true;
    for (auto [u, v] : f.edges) {
      if (!(adj[perm[u]] & bit(perm[v]))) {
        preserves = false;
        break;
      }
    }
    if (preserves) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

std::uint64_t count_subgraph(const HostGraph& g, const SmallGraph& f) {
  check_pattern_graph(f);
  if (f.vertices > g.size()) return 0;
  const auto adj = pattern_masks(f);
  std::vector<unsigned> image(f.vertices);
  std::uint64_t maps = 0;
  auto extend = [&](auto&& self, unsigned depth, std::uint64_t used) -> void {
    if (depth == f.vertices) {
      ++maps;
      return;
    }
    for (unsigned h = 0; h < g.size(); ++h) {
      if (used & bit(h)) continue;
      bool ok = true;
      for (unsigned prev = 0; prev < depth && ok; ++prev) {
        if ((adj[depth] & bit(prev)) && !(g[h] & bit(image[prev]))) ok = false;
      }
      if (!ok) continue;
      image[depth] = h;
      self(self, depth + 1, used | bit(h));
    }
  };
  extend(extend, 0, 0);
  return maps / automorphism_count(f);
}

std::uint64_t count_directed_triangles(const std::vector<std::uint64_t>& out) {
  const auto n = static_cast<unsigned>(out.size());
  auto arc = [&](unsigned a, unsigned b) { return (out[a] >> b) & 1U; };
  std::uint64_t count = 0;
  for (unsigned u = 0; u < n; ++u) {
    for (unsigned v = u + 1; v < n; ++v) {
      for (unsigned w = v + 1; w < n; ++w) {
        count += arc(u, v) & arc(v, w) & arc(w, u);
        count += arc(u, w) & arc(w, v) & arc(v, u);
      }
    }
  }
  return count;
}

std::uint64_t count_pattern(const std::vector<std::uint64_t>& pi, const std::vector<unsigned>& tau) {
  const std::size_t k = tau.size();
  if (k > kMaxPatternVertices || k > pi.size()) {
    throw Error(ErrorKind::PatternTooLarge, "pattern of length " + std::to_string(k) + " against a permutation of length " +
                                                std::to_string(pi.size()));
  }
  std::vector<std::size_t> chosen(k);
  std::uint64_t count = 0;
  auto choose = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
    if (depth == k) {
      ++count;
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= pi.size(); ++i) {
      bool ok = true;
      for (std::size_t prev = 0; prev < depth && ok; ++prev) {
        ok = (pi[chosen[prev]] < pi[i]) == (tau[prev] < tau[depth]);
      }
      if (!ok) continue;
      chosen[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  choose(choose, 0, 0);
  return count;
}

namespace {

[[noreturn]] void incompatible(const PatternSpec& spec, const ConfigurationModel& model) {
  throw Error(ErrorKind::IncompatiblePair, spec.id + " is not defined on " + model.describe());
}

}  // namespace

ConfigurationFunction make_observable(const PatternSpec& spec, const ConfigurationModel& model) {
  const unsigned n = model.params().n;
  const ModelKind kind = model.kind();
  const bool graph_model = kind == ModelKind::Gnp || kind == ModelKind::GnM;
  switch (spec.kind) {
    case ObservableKind::EdgeCount:
      if (!graph_model) incompatible(spec, model);
      return [](const Configuration& c) { return static_cast<double>(std::popcount(c.at(0))); };
    case ObservableKind::Subgraph:
      if (!graph_model) incompatible(spec, model);
      return [n, f = spec.graph](const Configuration& c) {
        return static_cast<double>(count_subgraph(host_from_pairs(n, c.at(0)), f));
      };
    case ObservableKind::DirectedTriangles:
      if (kind != ModelKind::DOutRegular) incompatible(spec, model);
      return [](const Configuration& c) { return static_cast<double>(count_directed_triangles(c)); };
    case ObservableKind::Pattern:
      if (kind != ModelKind::PermInsertion && kind != ModelKind::PermTransposition) incompatible(spec, model);
      if (spec.pattern.size() > n) throw Error(ErrorKind::PatternTooLarge, "pattern longer than the permutations");
      return [tau = spec.pattern](const Configuration& c) { return static_cast<double>(count_pattern(c, tau)); };
  }
  incompatible(spec, model);
}

double claimed_lipschitz_constant(const PatternSpec& spec, const ConfigurationModel& model) {
  const unsigned n = model.params().n;
  switch (spec.kind) {
    case ObservableKind::Subgraph:
      if (model.kind() != ModelKind::GnM || spec.graph.vertices < 2) break;
      return binomial_real(n, spec.graph.vertices - 2);
    case ObservableKind::DirectedTriangles:
      if (model.kind() != ModelKind::DOutRegular) break;
      return static_cast<double>(model.params().d) * model.params().d;
    case ObservableKind::Pattern:
      if (model.kind() != ModelKind::PermInsertion) break;
      return binomial_real(n - 1, spec.pattern.size() - 1);
    case ObservableKind::EdgeCount:
      if (model.kind() != ModelKind::Gnp) break;
      return n - 1.0;
  }
  incompatible(spec, model);
}

namespace {

constexpr double kLipschitzTolerance = 1e-9;

}  // namespace

LipschitzVerdict verify_lipschitz(const GeometrizedSpace& space, const ConfigurationFunction& f, double c) {
  std::vector<double> values(space.state_count());
  for (StateIndex x = 0; x < values.size(); ++x) values[x] = f(space.configuration(x));
  LipschitzVerdict verdict;
  for (auto [x, y] : space.graph().edges()) {
    const double diff = std::abs(values[x] - values[y]);
    verdict.max_difference = std::max(verdict.max_difference, diff);
    ++verdict.edges_checked;
    if (diff > c + kLipschitzTolerance) {
      throw Error(ErrorKind::LipschitzViolation,
                  "|f(" + space.model().format(space.configuration(x)) + ") - f(" +
                      space.model().format(space.configuration(y)) + ")| = " + format_double(diff) + " > " +
                      format_double(c));
    }
  }
  return verdict;
}

LipschitzVerdict verify_lipschitz_sampled(const ConfigurationModel& model, const ConfigurationFunction& f, double c,
                                          std::uint64_t samples, std::uint64_t seed, std::size_t threads) {
  constexpr std::size_t kChunks = 64;
  struct ChunkResult {
    double max_difference = 0.0;
    std::uint64_t edges = 0;
    std::optional<std::string> witness;
  };
  std::vector<ChunkResult> results(kChunks);
  parallel_for(kChunks, threads == 0 ? default_thread_count() : threads, [&](std::size_t chunk) {
    Rng rng(derive_seed(seed, chunk));
    const std::uint64_t draws = samples / kChunks + (chunk < samples % kChunks ? 1 : 0);
    auto& out = results[chunk];
    for (std::uint64_t i = 0; i < draws && !out.witness; ++i) {
      const Configuration x = model.sample(rng);
      const double fx = f(x);
      for (const auto& y : model.neighbors(x)) {
        const double diff = std::abs(fx - f(y));
        out.max_difference = std::max(out.max_difference, diff);
        ++out.edges;
        if (diff > c + kLipschitzTolerance) {
          out.witness = "|f(" + model.format(x) + ") - f(" + model.format(y) + ")| = " + format_double(diff) + " > " +
                        format_double(c);
          break;
        }
      }
    }
  });
  LipschitzVerdict verdict;
  for (const auto& r : results) {
    if (r.witness) throw Error(ErrorKind::LipschitzViolation, *r.witness);
    verdict.max_difference = std::max(verdict.max_difference, r.max_difference);
    verdict.edges_checked += r.edges;
  }
  return verdict;
}

double expected_directed_triangles(unsigned n, unsigned d) {
  if (d < 1 || d + 2 > n) throw Error(ErrorKind::BadParams, "need 1 <= d <= n-2");
  const double q = static_cast<double>(d) / (n - 1);
  return 2.0 * binomial_real(n, 3) * q * q * q;
}

}  // namespace ricci
