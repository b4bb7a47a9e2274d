#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nswvc {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exceeded an enumeration/sampling budget rather than hit bad input.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subset of [0, N) for N <= 32, bit i = vertex i.
struct VertexSet {
  std::uint32_t bits = 0;

  VertexSet() = default;
  explicit VertexSet(std::uint32_t b) : bits(b) {}

  static VertexSet full(int n) {
    return VertexSet(n == 32 ? ~0u : ((1u << n) - 1u));
  }

  bool contains(int v) const { return (bits >> v) & 1u; }
  void add(int v) { bits |= (1u << v); }
  void remove(int v) { bits &= ~(1u << v); }
  int size() const { return std::popcount(bits); }
  bool empty() const { return bits == 0; }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::uint32_t b = bits; b; b &= b - 1)
      out.push_back(std::countr_zero(b));
    return out;
  }

  friend bool operator==(VertexSet a, VertexSet b) { return a.bits == b.bits; }
  friend bool operator!=(VertexSet a, VertexSet b) { return a.bits != b.bits; }
};

// Order by the ascending-index sequence, e.g. {0,3} < {1,2}.
inline bool lex_less(VertexSet a, VertexSet b) {
  while (a.bits && b.bits) {
    int va = std::countr_zero(a.bits);
    int vb = std::countr_zero(b.bits);
    if (va != vb) return va < vb;
    a.bits &= a.bits - 1;
    b.bits &= b.bits - 1;
  }
  return a.bits == 0 && b.bits != 0;
}

// Simple 3-regular graph. Edge number = 1-based position in `edges`.
struct CubicGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // stored with u < v

  int edge_count() const { return static_cast<int>(edges.size()); }

  // Edge indices (0-based) incident to v, ascending. Position in the result
  // is the item rank minus one.
  std::array<int, 3> incident_edges(int v) const {
    std::array<int, 3> out{};
    int found = 0;
    for (int e = 0; e < edge_count(); ++e) {
      if (edges[e].first == v || edges[e].second == v) {
        if (found == 3) throw GraphError("vertex degree exceeds 3");
        out[found++] = e;
      }
    }
    if (found != 3) throw GraphError("vertex degree below 3");
    return out;
  }

  static CubicGraph create(int n, std::vector<std::pair<int, int>> edges) {
    if (n <= 0) throw GraphError("vertex count must be positive");
    if (n % 2 != 0) throw GraphError("vertex count must be even");
    if (n > 32) throw GraphError("vertex count above supported limit of 32");
    if (static_cast<int>(edges.size()) != 3 * n / 2)
      throw GraphError("edge count must be 3N/2 = " + std::to_string(3 * n / 2) +
                       ", got " + std::to_string(edges.size()));
    std::vector<int> degree(n, 0);
    std::vector<std::pair<int, int>> seen;
    for (auto& [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw GraphError("vertex index out of range");
      if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
      if (std::find(seen.begin(), seen.end(), std::make_pair(u, v)) != seen.end())
        throw GraphError("duplicate edge {" + std::to_string(u) + "," +
                         std::to_string(v) + "}");
      seen.emplace_back(u, v);
      ++degree[u];
      ++degree[v];
    }
    for (int v = 0; v < n; ++v)
      if (degree[v] != 3)
        throw GraphError("degree of vertex " + std::to_string(v) + " is " +
                         std::to_string(degree[v]) + ", expected 3");
    CubicGraph g;
    g.vertex_count = n;
    g.edges = std::move(edges);
    return g;
  }

  friend bool operator==(const CubicGraph& a, const CubicGraph& b) {
    return a.vertex_count == b.vertex_count && a.edges == b.edges;
  }
};

// Line 1: "N M". Lines 2..M+1: "u v". Lines starting with '#' are skipped.
inline CubicGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(line);
  }
  if (rows.empty()) throw GraphError("empty graph file");
  auto parse_two = [](const std::string& s, const char* what) {
    std::istringstream ls(s);
    long a, b;
    std::string rest;
    if (!(ls >> a >> b) || (ls >> rest))
      throw GraphError(std::string("malformed ") + what + " line: \"" + s + "\"");
    return std::make_pair(a, b);
  };
  auto [n, m] = parse_two(rows[0], "header");
  if (static_cast<long>(rows.size()) != m + 1)
    throw GraphError("expected " + std::to_string(m) + " edge lines, got " +
                     std::to_string(rows.size() - 1));
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto [u, v] = parse_two(rows[i], "edge");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return CubicGraph::create(static_cast<int>(n), std::move(edges));
}

inline std::string serialize_graph(const CubicGraph& g) {
  std::ostringstream out;
  out << g.vertex_count << " " << g.edge_count() << "\n";
  for (auto [u, v] : g.edges) out << u << " " << v << "\n";
  return out.str();
}

namespace detail {

inline std::vector<std::pair<int, int>> lex_sorted(
    std::vector<std::pair<int, int>> edges) {
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace detail

// Configuration model: pair up three stubs per vertex, reject pairings with
// loops or multi-edges. Deterministic for a fixed seed (std::mt19937_64,
// std::shuffle via uniform_int on the stub array below, no library
// distributions with unspecified algorithms).
inline CubicGraph generate_random_cubic(int n, std::uint64_t seed,
                                        int max_attempts = 10000) {
  if (n < 4 || n % 2 != 0)
    throw GraphError("random cubic graphs need even n >= 4");
  std::mt19937_64 rng(seed);
  std::vector<int> stubs(3 * static_cast<std::size_t>(n));
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    for (int i = 0; i < 3 * n; ++i) stubs[i] = i / 3;
    // Fisher-Yates, spelled out so the stream of draws is pinned.
    for (int i = 3 * n - 1; i > 0; --i) {
      auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
      std::swap(stubs[i], stubs[j]);
    }
    std::vector<std::pair<int, int>> edges;
    bool ok = true;
    for (int i = 0; i < 3 * n && ok; i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) ok = false;
      if (u > v) std::swap(u, v);
      edges.emplace_back(u, v);
    }
    if (!ok) continue;
    auto sorted = detail::lex_sorted(edges);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      continue;
    return CubicGraph::create(n, std::move(sorted));
  }
  throw BudgetError("random cubic generation failed after " +
                    std::to_string(max_attempts) + " attempts");
}

inline CubicGraph generate_family(const std::string& name,
                                  std::optional<int> n = std::nullopt,
                                  std::optional<std::uint64_t> seed = std::nullopt) {
  using E = std::vector<std::pair<int, int>>;
  if (name == "k4") {
    return CubicGraph::create(
        4, detail::lex_sorted(E{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  }
  if (name == "k33") {
    E edges;
    for (int u = 0; u < 3; ++u)
      for (int v = 3; v < 6; ++v) edges.emplace_back(u, v);
    return CubicGraph::create(6, detail::lex_sorted(std::move(edges)));
  }
  if (name == "prism") {
    return CubicGraph::create(
        6, detail::lex_sorted(E{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5},
                                {0, 3}, {1, 4}, {2, 5}}));
  }
  if (name == "petersen") {
    E edges;
    for (int i = 0; i < 5; ++i) {
      edges.emplace_back(i, (i + 1) % 5);        // outer cycle
      edges.emplace_back(i, i + 5);              // spokes
      edges.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
    }
    for (auto& [u, v] : edges)
      if (u > v) std::swap(u, v);
    auto sorted = detail::lex_sorted(std::move(edges));
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return CubicGraph::create(10, std::move(sorted));
  }
  if (name == "random") {
    if (!n) throw GraphError("family 'random' requires n");
    if (!seed) throw GraphError("family 'random' requires a seed");
    return generate_random_cubic(*n, *seed);
  }
  throw GraphError("unknown family '" + name + "'");
}

inline bool is_vertex_cover(const CubicGraph& g, VertexSet s) {
  for (auto [u, v] : g.edges)
    if (!s.contains(u) && !s.contains(v)) return false;
  return true;
}

inline bool is_minimal_cover(const CubicGraph& g, VertexSet s) {
  if (!is_vertex_cover(g, s)) throw GraphError("input set is not a vertex cover");
  for (int v : s.indices()) {
    VertexSet t = s;
    t.remove(v);
    if (is_vertex_cover(g, t)) return false;
  }
  return true;
}

inline int d_count(const CubicGraph& g, VertexSet s) {
  int d = 0;
  for (auto [u, v] : g.edges)
    if (s.contains(u) && s.contains(v)) ++d;
  return d;
}

struct CoverEnumeration {
  int size = 0;
  std::vector<VertexSet> covers;  // ascending bitmask order
};

// Brute-force oracle, single pass over all 2^N subsets.
inline CoverEnumeration minimum_vertex_covers(const CubicGraph& g) {
  const int n = g.vertex_count;
  std::vector<std::uint32_t> edge_masks;
  edge_masks.reserve(g.edges.size());
  for (auto [u, v] : g.edges) edge_masks.push_back((1u << u) | (1u << v));
  CoverEnumeration best;
  best.size = n + 1;
  const std::uint64_t limit = 1ull << n;
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    auto mask = static_cast<std::uint32_t>(bits);
    int sz = std::popcount(mask);
    if (sz > best.size) continue;
    bool cover = true;
    for (auto em : edge_masks)
      if (!(mask & em)) {
        cover = false;
        break;
      }
    if (!cover) continue;
    if (sz < best.size) {
      best.size = sz;
      best.covers.clear();
    }
    best.covers.push_back(VertexSet(mask));
  }
  return best;
}

// Minimum cover maximizing the internal edge count d_C; ties broken by the
// ascending-index sequence order.
inline VertexSet select_cstar(const CubicGraph& g) {
  auto mvc = minimum_vertex_covers(g);
  VertexSet best = mvc.covers.front();
  int best_d = d_count(g, best);
  for (std::size_t i = 1; i < mvc.covers.size(); ++i) {
    int d = d_count(g, mvc.covers[i]);
    if (d > best_d || (d == best_d && lex_less(mvc.covers[i], best))) {
      best = mvc.covers[i];
      best_d = d;
    }
  }
  return best;
}

}  // namespace nswvc
