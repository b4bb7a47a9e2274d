#pragma once

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nswvc/graph.hpp"
#include "nswvc/rational.hpp"

namespace nswvc {

using ordered_json = nlohmann::ordered_json;

struct ReductionParams {
  mpq_class c;        // approximation factor, >= 1
  mpq_class epsilon;  // > 0

  static ReductionParams make(mpq_class c, mpq_class epsilon) {
    if (c < 1) throw FormatError("c must be >= 1, got " + format_fraction(c));
    if (epsilon <= 0)
      throw FormatError("epsilon must be > 0, got " + format_fraction(epsilon));
    return ReductionParams{std::move(c), std::move(epsilon)};
  }

  friend bool operator==(const ReductionParams& a, const ReductionParams& b) {
    return a.c == b.c && a.epsilon == b.epsilon;
  }
};

// Item index in the canonical list is 3*vertex + rank - 1.
struct Item {
  int vertex = 0;
  int rank = 0;  // 1, 2, or 3

  friend bool operator==(Item a, Item b) {
    return a.vertex == b.vertex && a.rank == b.rank;
  }
};

inline int item_index(Item it) { return 3 * it.vertex + it.rank - 1; }

// alpha = 8^N * (c + epsilon)^(3N/2 + 1). Always exceeds 2^M = 2^(3N/2),
// which is what makes exponent-pair comparison sound.
inline mpq_class compute_alpha(const CubicGraph& g, const ReductionParams& p) {
  const int n_agents = 3 * g.vertex_count / 2 + 1;
  mpq_class alpha = pow_mpz(mpz_class(8), g.vertex_count) *
                    pow_mpq(p.c + p.epsilon, n_agents);
  if (alpha <= pow_mpz(mpz_class(2), g.edge_count()))
    throw GraphError("alpha guard violated");  // unreachable for valid params
  return alpha;
}

struct AuctionInstance {
  CubicGraph graph;
  ReductionParams params;
  int agent_count = 0;                          // 3N/2 edge agents + greedy
  std::vector<Item> items;                      // canonical (vertex, rank) order
  std::vector<int> item_to_edge;                // item -> the edge valuing it
  std::vector<std::array<int, 2>> edge_items;   // edge -> its two item indices
  mpq_class alpha;
  double alpha_log2 = 0.0;                      // reporting only

  int item_count() const { return static_cast<int>(items.size()); }

  friend bool operator==(const AuctionInstance& a, const AuctionInstance& b) {
    return a.graph == b.graph && a.params == b.params &&
           a.agent_count == b.agent_count && a.items == b.items &&
           a.edge_items == b.edge_items && a.alpha == b.alpha;
  }
};

inline AuctionInstance build_instance(const CubicGraph& g,
                                      const ReductionParams& p) {
  AuctionInstance inst;
  inst.graph = g;
  inst.params = p;
  inst.agent_count = 3 * g.vertex_count / 2 + 1;
  inst.alpha = compute_alpha(g, p);
  inst.alpha_log2 = log2_mpq(inst.alpha);
  for (int v = 0; v < g.vertex_count; ++v)
    for (int r = 1; r <= 3; ++r) inst.items.push_back({v, r});
  inst.item_to_edge.assign(inst.items.size(), -1);
  inst.edge_items.assign(g.edges.size(), {-1, -1});
  // f_v: incident edges ascending by edge number -> ranks 1, 2, 3.
  for (int v = 0; v < g.vertex_count; ++v) {
    auto inc = g.incident_edges(v);
    for (int r = 1; r <= 3; ++r) {
      int e = inc[r - 1];
      int item = item_index({v, r});
      inst.item_to_edge[item] = e;
      int slot = (g.edges[e].first == v) ? 0 : 1;
      inst.edge_items[e][slot] = item;
    }
  }
  for (auto& pair : inst.edge_items)
    if (pair[0] < 0 || pair[1] < 0)
      throw GraphError("f_v mapping left an edge slot unassigned");
  return inst;
}

// JSON instance file. Field order is part of the format.
inline std::string serialize_instance(const AuctionInstance& inst) {
  ordered_json j;
  j["format"] = 1;
  ordered_json graph;
  graph["n"] = inst.graph.vertex_count;
  graph["edges"] = ordered_json::array();
  for (auto [u, v] : inst.graph.edges) graph["edges"].push_back({u, v});
  j["graph"] = graph;
  j["c"] = format_fraction(inst.params.c);
  j["epsilon"] = format_fraction(inst.params.epsilon);
  j["n_agents"] = inst.agent_count;
  j["items"] = ordered_json::array();
  for (auto it : inst.items)
    j["items"].push_back(ordered_json{{"vertex", it.vertex}, {"rank", it.rank}});
  j["edge_items"] = ordered_json::array();
  for (auto& pair : inst.edge_items) j["edge_items"].push_back({pair[0], pair[1]});
  j["alpha"] = format_fraction(inst.alpha);
  return j.dump(2) + "\n";
}

inline AuctionInstance parse_instance(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("instance file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<int>() != 1)
      throw FormatError("unsupported instance format version");
    std::vector<std::pair<int, int>> edges;
    for (auto& e : j.at("graph").at("edges"))
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    auto g = CubicGraph::create(j.at("graph").at("n").get<int>(), std::move(edges));
    auto params = ReductionParams::make(
        parse_fraction(j.at("c").get<std::string>()),
        parse_fraction(j.at("epsilon").get<std::string>()));
    AuctionInstance expected = build_instance(g, params);
    if (j.at("n_agents").get<int>() != expected.agent_count)
      throw FormatError("n_agents mismatch");
    auto& items = j.at("items");
    if (items.size() != expected.items.size())
      throw FormatError("item count mismatch");
    for (std::size_t i = 0; i < items.size(); ++i) {
      Item it{items[i].at("vertex").get<int>(), items[i].at("rank").get<int>()};
      if (!(it == expected.items[i]))
        throw FormatError("items are not in canonical (vertex, rank) order");
    }
    auto& ei = j.at("edge_items");
    if (ei.size() != expected.edge_items.size())
      throw FormatError("edge_items count mismatch");
    for (std::size_t e = 0; e < ei.size(); ++e) {
      std::array<int, 2> pair{ei[e].at(0).get<int>(), ei[e].at(1).get<int>()};
      if (pair != expected.edge_items[e])
        throw FormatError("mapping violates ordering rule for edge " +
                          std::to_string(e + 1));
    }
    if (parse_fraction(j.at("alpha").get<std::string>()) != expected.alpha)
      throw FormatError("alpha mismatch");
    return expected;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed instance file: ") + e.what());
  }
}

}  // namespace nswvc
