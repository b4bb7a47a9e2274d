#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nswvc/solver.hpp"

namespace nswvc {

struct Decomposition {
  bool positive = false;
  VertexSet v_e;  // vertices with >= 1 item at an edge agent
  VertexSet v_g;  // vertices covered by the greedy bundle
  int k = 0;      // edge agents at value 2
};

// Cover decomposition of an allocation. For positive allocations guarantees that
// V_E is a vertex cover, V_E and V_g partition V, and NSW^n = 2^k * alpha^|V_g|.
inline Decomposition decompose(const AuctionInstance& inst, const Allocation& a) {
  require_partition(inst, a);
  Decomposition d;
  d.positive = true;
  for (int e = 0; e < inst.graph.edge_count(); ++e) {
    int v = edge_value(inst, e, a.edge_bundles[e]);
    if (v == 0) return Decomposition{};  // NotPositive
    if (v == 2) ++d.k;
  }
  for (int e = 0; e < inst.graph.edge_count(); ++e)
    for (int i : a.edge_bundles[e].indices()) d.v_e.add(inst.items[i].vertex);
  d.v_g = covered_vertices(inst, a.greedy_bundle);
  return d;
}

struct VerifierReport {
  bool positive = false;
  VertexSet v_e;
  VertexSet v_g;
  int k = 0;
  NswPower nsw;
  NswPower opt;
  bool is_cover = false;
  bool is_minimal = false;
  bool is_minimum = false;
  bool c_approximate = false;
  bool theorem_holds = false;

  ordered_json to_json(const AuctionInstance& inst) const {
    auto power_json = [&](NswPower p) {
      ordered_json j;
      if (p.is_zero) {
        j["zero"] = true;
      } else {
        j["k"] = p.two_exp;
        j["g"] = p.alpha_exp;
        j["exact"] = format_fraction(to_big_rational(p, inst.alpha));
      }
      return j;
    };
    ordered_json j;
    j["positive"] = positive;
    j["V_E"] = v_e.indices();
    j["V_g"] = v_g.indices();
    j["k"] = k;
    j["nsw"] = power_json(nsw);
    j["opt"] = power_json(opt);
    j["is_cover"] = is_cover;
    j["is_minimal"] = is_minimal;
    j["is_minimum"] = is_minimum;
    j["c_approximate"] = c_approximate;
    j["theorem_holds"] = theorem_holds;
    ordered_json display;
    if (!nsw.is_zero)
      display["nsw_log2"] = nsw_log2(nsw, inst.alpha_log2, inst.agent_count);
    display["opt_log2"] = nsw_log2(opt, inst.alpha_log2, inst.agent_count);
    display["alpha_log2"] = inst.alpha_log2;
    j["display"] = display;
    return j;
  }
};

// Exact c-approximation test: NSW^n * c^n >= OPT^n in big rationals.
inline bool is_c_approximate(const AuctionInstance& inst, NswPower nsw,
                             NswPower opt) {
  mpq_class cn = pow_mpq(inst.params.c, inst.agent_count);
  return to_big_rational(nsw, inst.alpha) * cn >= to_big_rational(opt, inst.alpha);
}

inline VerifierReport verify_capprox(const AuctionInstance& inst,
                                     const Allocation& a) {
  VerifierReport rep;
  auto d = decompose(inst, a);
  rep.positive = d.positive;
  rep.v_e = d.v_e;
  rep.v_g = d.v_g;
  rep.k = d.k;
  rep.nsw = nsw_power(inst, a);
  rep.opt = opt_formula(inst);
  if (rep.positive) {
    rep.is_cover = is_vertex_cover(inst.graph, rep.v_e);
    rep.is_minimal = rep.is_cover && is_minimal_cover(inst.graph, rep.v_e);
    rep.is_minimum = rep.is_cover &&
                     rep.v_e.size() == minimum_vertex_covers(inst.graph).size;
  }
  rep.c_approximate = is_c_approximate(inst, rep.nsw, rep.opt);
  rep.theorem_holds = !rep.c_approximate || rep.is_minimum;
  return rep;
}

// V_E of a c-approximate allocation; guaranteed to be a minimum vertex cover,
// re-asserted here against the brute-force oracle.
inline VertexSet extract_cover(const AuctionInstance& inst, const Allocation& a) {
  auto rep = verify_capprox(inst, a);
  if (!rep.c_approximate)
    throw AllocationError("allocation is not c-approximate; nothing to extract");
  if (!rep.is_minimum)
    throw AllocationError("extracted V_E is not a minimum vertex cover");
  return rep.v_e;
}

// Each item goes to its valuing edge agent or to the greedy agent with
// probability 1/2; optionally force positivity afterwards by granting every
// empty-valued edge agent one of its two items, chosen by the same RNG.
inline Allocation random_positive_allocation(const AuctionInstance& inst,
                                             std::mt19937_64& rng,
                                             bool force_positive = true) {
  Allocation a;
  a.edge_bundles.resize(inst.graph.edge_count());
  for (int i = 0; i < inst.item_count(); ++i) {
    if (rng() & 1u)
      a.edge_bundles[inst.item_to_edge[i]].add(i);
    else
      a.greedy_bundle.add(i);
  }
  if (force_positive) {
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
      if (edge_value(inst, e, a.edge_bundles[e]) > 0) continue;
      auto [i0, i1] = inst.edge_items[e];
      int pick = (rng() & 1u) ? i0 : i1;
      a.greedy_bundle.remove(pick);
      a.edge_bundles[e].add(pick);
    }
  }
  return a;
}

// Fully random partition: each item to a uniformly random agent. Used by the
// dominance-property sweeps, where items may sit at agents that do not value
// them.
inline Allocation random_partition(const AuctionInstance& inst,
                                   std::mt19937_64& rng) {
  Allocation a;
  a.edge_bundles.resize(inst.graph.edge_count());
  for (int i = 0; i < inst.item_count(); ++i) {
    auto agent = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.agent_count));
    if (agent == inst.graph.edge_count())
      a.greedy_bundle.add(i);
    else
      a.edge_bundles[agent].add(i);
  }
  return a;
}

struct SweepReport {
  long long trials = 0;
  long long positive = 0;
  long long non_minimal = 0;
  long long minimal_not_minimum = 0;
  long long minimum = 0;
  long long approximate = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }

  ordered_json to_json() const {
    ordered_json j;
    j["trials"] = trials;
    j["positive"] = positive;
    j["non_minimal"] = non_minimal;
    j["minimal_not_minimum"] = minimal_not_minimum;
    j["minimum"] = minimum;
    j["approximate"] = approximate;
    j["seed"] = seed;
    j["violations"] = violations;
    return j;
  }
};

// Contrapositive sweep over the lemma chain: random positive allocations plus
// every cover-structured allocation, each pushed through the decomposition,
// improving-move, and gap checks.
inline SweepReport theorem_sweep(const AuctionInstance& inst, long long trials,
                                 std::uint64_t seed) {
  SweepReport rep;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  const int min_cover_size = minimum_vertex_covers(inst.graph).size;
  NswPower opt = opt_formula(inst);
  mpq_class opt_big = to_big_rational(opt, inst.alpha);
  mpq_class cn = pow_mpq(inst.params.c, inst.agent_count);
  mpq_class alpha = inst.alpha;

  auto check_one = [&](const Allocation& a, const std::string& label) {
    ++rep.trials;
    auto d = decompose(inst, a);
    NswPower nsw = nsw_power(inst, a);
    if (!d.positive) {
      if (!nsw.is_zero)
        rep.violations.push_back(label + ": NotPositive but nsw_power nonzero");
      return;
    }
    ++rep.positive;
    // (i) decomposition identities
    if (nsw != NswPower::of(d.k, d.v_g.size()))
      rep.violations.push_back(label + ": nsw_power != (k, |V_g|)");
    if (!is_vertex_cover(inst.graph, d.v_e))
      rep.violations.push_back(label + ": V_E is not a vertex cover");
    if (d.k > d_count(inst.graph, d.v_e))
      rep.violations.push_back(label + ": k exceeds d_{V_E}");
    if ((d.v_e.bits & d.v_g.bits) != 0 ||
        (d.v_e.bits | d.v_g.bits) != VertexSet::full(inst.graph.vertex_count).bits)
      rep.violations.push_back(label + ": V_E and V_g are not complementary");
    bool approx = is_c_approximate(inst, nsw, opt);
    if (approx) ++rep.approximate;
    bool minimal = is_minimal_cover(inst.graph, d.v_e);
    bool minimum = minimal && d.v_e.size() == min_cover_size;
    if (!minimal) {
      ++rep.non_minimal;
      // (ii) non-minimal cover: an improving move exists and beats the
      // allocation by more than c.
      if (approx)
        rep.violations.push_back(label + ": c-approximate with non-minimal V_E");
      int vbar = -1;
      for (int v : d.v_e.indices()) {
        VertexSet t = d.v_e;
        t.remove(v);
        if (is_vertex_cover(inst.graph, t)) {
          vbar = v;
          break;
        }
      }
      if (vbar < 0) {
        rep.violations.push_back(label + ": non-minimal cover with no removable vertex");
      } else {
        Allocation improved = improve_allocation(inst, a, vbar);
        mpq_class before = to_big_rational(nsw, alpha);
        mpq_class after = to_big_rational(nsw_power(inst, improved), alpha);
        if (after * 8 < alpha * before)
          rep.violations.push_back(label + ": improving move below alpha/8 factor");
        if (after <= cn * before)
          rep.violations.push_back(label + ": improving move does not beat c");
      }
    } else if (!minimum) {
      ++rep.minimal_not_minimum;
      // (iii) minimal-but-not-minimum covers lose by at least the gap
      if (approx)
        rep.violations.push_back(label + ": c-approximate with non-minimum V_E");
    } else {
      ++rep.minimum;
    }
    // (iv) approximate allocations must induce a minimum cover
    if (approx && !minimum)
      rep.violations.push_back(label + ": approximate but V_E is not minimum");
  };

  for (long long t = 0; t < trials; ++t)
    check_one(random_positive_allocation(inst, rng), "trial " + std::to_string(t));
  const std::uint64_t limit = 1ull << inst.graph.vertex_count;
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    VertexSet c(static_cast<std::uint32_t>(bits));
    if (!is_vertex_cover(inst.graph, c)) continue;
    check_one(construct_from_cover(inst, c), "cover " + std::to_string(bits));
  }
  return rep;
}

}  // namespace nswvc
