#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nswvc/valuation.hpp"

namespace nswvc {

struct SolveResult {
  Allocation alloc;
  NswPower value;
};

// Cover-structured allocation: each edge keeps the items of its
// cover endpoints, everything else goes to the greedy agent.
inline Allocation construct_from_cover(const AuctionInstance& inst,
                                       VertexSet cover) {
  if (!is_vertex_cover(inst.graph, cover))
    throw AllocationError("construct_from_cover: set is not a vertex cover");
  Allocation a;
  a.edge_bundles.resize(inst.graph.edge_count());
  ItemSet handed_out;
  for (int e = 0; e < inst.graph.edge_count(); ++e) {
    auto [u, v] = inst.graph.edges[e];
    auto [iu, iv] = inst.edge_items[e];
    if (cover.contains(u)) a.edge_bundles[e].add(iu);
    if (cover.contains(v)) a.edge_bundles[e].add(iv);
    handed_out = handed_out | a.edge_bundles[e];
  }
  for (int i = 0; i < inst.item_count(); ++i)
    if (!handed_out.contains(i)) a.greedy_bundle.add(i);
  return a;
}

namespace detail {

// item -> owning agent (edge index, or edge_count for greedy), the canonical
// tie-break key for brute-force search.
inline std::vector<std::uint8_t> assignment_vector(const AuctionInstance& inst,
                                                   const Allocation& a) {
  std::vector<std::uint8_t> out(inst.item_count(),
                                static_cast<std::uint8_t>(inst.graph.edge_count()));
  for (std::size_t e = 0; e < a.edge_bundles.size(); ++e)
    for (int i : a.edge_bundles[e].indices())
      out[i] = static_cast<std::uint8_t>(e);
  return out;
}

}  // namespace detail

// Exact optimum over the dominance-reduced space: every edge agent keeps a
// nonempty subset of its own two items (3 choices per edge), the rest goes to
// the greedy agent. The all-to-greedy Zero allocation is the fallback start.
// Dominance itself (zero-marginal items move to g for free) is validated as a
// tested property, not assumed silently.
inline SolveResult solve_bruteforce(const AuctionInstance& inst) {
  const int m_edges = inst.graph.edge_count();
  if (m_edges > 16)
    throw BudgetError("brute-force solver needs <= 16 edges, got " +
                      std::to_string(m_edges));
  SolveResult best;
  best.alloc.edge_bundles.resize(m_edges);
  for (int i = 0; i < inst.item_count(); ++i) best.alloc.greedy_bundle.add(i);
  best.value = NswPower::zero();
  auto best_key = detail::assignment_vector(inst, best.alloc);

  std::vector<int> choice(m_edges, 0);  // 0 = both items, 1 = first, 2 = second
  while (true) {
    Allocation cand;
    cand.edge_bundles.resize(m_edges);
    int k = 0;
    ItemSet handed_out;
    for (int e = 0; e < m_edges; ++e) {
      auto [i0, i1] = inst.edge_items[e];
      if (choice[e] != 2) cand.edge_bundles[e].add(i0);
      if (choice[e] != 1) cand.edge_bundles[e].add(i1);
      if (choice[e] == 0) ++k;
      handed_out = handed_out | cand.edge_bundles[e];
    }
    for (int i = 0; i < inst.item_count(); ++i)
      if (!handed_out.contains(i)) cand.greedy_bundle.add(i);
    NswPower value = NswPower::of(k, greedy_exponent(inst, cand.greedy_bundle));
    int cmp = compare(value, best.value, m_edges);
    if (cmp > 0) {
      best = {cand, value};
      best_key = detail::assignment_vector(inst, cand);
    } else if (cmp == 0) {
      auto key = detail::assignment_vector(inst, cand);
      if (key < best_key) {
        best = {cand, value};
        best_key = key;
      }
    }
    int e = m_edges - 1;
    while (e >= 0 && choice[e] == 2) choice[e--] = 0;
    if (e < 0) break;
    ++choice[e];
  }
  return best;
}

// Enumerate vertex covers; each cover C scores exactly (k = d_C, g = N - |C|)
// via the cover-structured allocation, which also upper-bounds every
// allocation with V_E = C. Ties broken by the ascending-index sequence order
// of the cover.
inline SolveResult solve_structured(const AuctionInstance& inst) {
  const int n = inst.graph.vertex_count;
  bool have = false;
  VertexSet best_cover;
  NswPower best_value = NswPower::zero();
  const std::uint64_t limit = 1ull << n;
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    VertexSet c(static_cast<std::uint32_t>(bits));
    if (!is_vertex_cover(inst.graph, c)) continue;
    NswPower value = NswPower::of(d_count(inst.graph, c), n - c.size());
    int cmp = compare(value, best_value, inst.graph.edge_count());
    if (!have || cmp > 0 || (cmp == 0 && lex_less(c, best_cover))) {
      have = true;
      best_cover = c;
      best_value = value;
    }
  }
  return {construct_from_cover(inst, best_cover), best_value};
}

// Closed-form optimum 2^{d_{C*}} * alpha^{N - |C*|}.
inline NswPower opt_formula(const AuctionInstance& inst) {
  VertexSet cstar = select_cstar(inst.graph);
  return NswPower::of(d_count(inst.graph, cstar),
                      inst.graph.vertex_count - cstar.size());
}

// The improving move: drop a removable cover vertex vbar from V_E. Edges not
// touching vbar lose at most vbar's (worthless-to-them) items; edges touching
// vbar fall back to the single item of another cover endpoint; vbar's three
// items join the greedy bundle, raising its exponent by one. Guarantees
// NSW'^n * 8 >= alpha * NSW^n, hence NSW' > c * NSW.
inline Allocation improve_allocation(const AuctionInstance& inst,
                                     const Allocation& a, int vbar) {
  NswPower before = nsw_power(inst, a);
  if (before.is_zero)
    throw AllocationError("improve_allocation needs a positive allocation");
  VertexSet v_e;
  for (int e = 0; e < inst.graph.edge_count(); ++e)
    for (int i : a.edge_bundles[e].indices()) v_e.add(inst.items[i].vertex);
  if (!v_e.contains(vbar))
    throw AllocationError("vbar is not in V_E");
  VertexSet reduced = v_e;
  reduced.remove(vbar);
  if (!is_vertex_cover(inst.graph, reduced))
    throw AllocationError("removing vbar uncovers an edge; vbar not removable");

  ItemSet vbar_items = ItemSet::of({3 * vbar, 3 * vbar + 1, 3 * vbar + 2});
  Allocation out;
  out.edge_bundles.resize(inst.graph.edge_count());
  // For an incident edge the only possible vhat is the other endpoint; its
  // item may currently sit in any bundle, so claim it up front.
  ItemSet claimed;
  for (int e = 0; e < inst.graph.edge_count(); ++e) {
    auto [u, v] = inst.graph.edges[e];
    if (u != vbar && v != vbar) continue;
    int vhat = (u == vbar) ? v : u;
    if (!reduced.contains(vhat))
      throw AllocationError("no replacement cover vertex for an edge at vbar");
    auto [iu, iv] = inst.edge_items[e];
    out.edge_bundles[e] = ItemSet::of({u == vhat ? iu : iv});
    claimed = claimed | out.edge_bundles[e];
  }
  ItemSet handed_out = claimed;
  for (int e = 0; e < inst.graph.edge_count(); ++e) {
    auto [u, v] = inst.graph.edges[e];
    if (u == vbar || v == vbar) continue;
    out.edge_bundles[e] = a.edge_bundles[e].minus(vbar_items).minus(claimed);
    handed_out = handed_out | out.edge_bundles[e];
  }
  for (int i = 0; i < inst.item_count(); ++i)
    if (!handed_out.contains(i)) out.greedy_bundle.add(i);
  return out;
}

}  // namespace nswvc
