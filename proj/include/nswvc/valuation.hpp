#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nswvc/allocation.hpp"

namespace nswvc {

// Number of items of edge e inside s, in {0, 1, 2}.
inline int edge_value(const AuctionInstance& inst, int edge, ItemSet s) {
  auto [a, b] = inst.edge_items[edge];
  return (s.contains(a) ? 1 : 0) + (s.contains(b) ? 1 : 0);
}

// V_S: vertices whose three items are all in s.
inline VertexSet covered_vertices(const AuctionInstance& inst, ItemSet s) {
  VertexSet out;
  for (int v = 0; v < inst.graph.vertex_count; ++v) {
    int base = 3 * v;
    if (s.contains(base) && s.contains(base + 1) && s.contains(base + 2))
      out.add(v);
  }
  return out;
}

// The greedy agent's value is alpha^(this exponent); the big number itself
// stays un-materialized everywhere except test oracles and reports.
inline int greedy_exponent(const AuctionInstance& inst, ItemSet s) {
  return covered_vertices(inst, s).size();
}

// NSW^n of an allocation: 0, or exactly 2^k * alpha^g.
struct NswPower {
  bool is_zero = true;
  int two_exp = 0;    // k
  int alpha_exp = 0;  // g

  static NswPower zero() { return {}; }
  static NswPower of(int k, int g) { return {false, k, g}; }

  friend bool operator==(NswPower a, NswPower b) {
    if (a.is_zero || b.is_zero) return a.is_zero == b.is_zero;
    return a.two_exp == b.two_exp && a.alpha_exp == b.alpha_exp;
  }
  friend bool operator!=(NswPower a, NswPower b) { return !(a == b); }
};

inline NswPower nsw_power(const AuctionInstance& inst, const Allocation& a) {
  require_partition(inst, a);
  int k = 0;
  for (int e = 0; e < inst.graph.edge_count(); ++e) {
    int v = edge_value(inst, e, a.edge_bundles[e]);
    if (v == 0) return NswPower::zero();
    if (v == 2) ++k;
  }
  return NswPower::of(k, greedy_exponent(inst, a.greedy_bundle));
}

// Lexicographic on (alpha_exp, two_exp); sound because alpha > 2^M, so one
// extra alpha factor beats any feasible power of two. Returns -1/0/1.
inline int compare(NswPower x, NswPower y, int edge_count) {
  if (!x.is_zero && x.two_exp > edge_count)
    throw AllocationError("two_exp " + std::to_string(x.two_exp) +
                          " exceeds edge count; comparison unsound");
  if (!y.is_zero && y.two_exp > edge_count)
    throw AllocationError("two_exp " + std::to_string(y.two_exp) +
                          " exceeds edge count; comparison unsound");
  if (x.is_zero || y.is_zero) {
    if (x.is_zero && y.is_zero) return 0;
    return x.is_zero ? -1 : 1;
  }
  if (x.alpha_exp != y.alpha_exp) return x.alpha_exp < y.alpha_exp ? -1 : 1;
  if (x.two_exp != y.two_exp) return x.two_exp < y.two_exp ? -1 : 1;
  return 0;
}

// Test/report oracle; never on a hot path.
inline mpq_class to_big_rational(NswPower x, const mpq_class& alpha) {
  if (x.is_zero) return mpq_class(0);
  return pow_mpz(mpz_class(2), x.two_exp) * pow_mpq(alpha, x.alpha_exp);
}

// (k + g*alpha_log2)/n, a display-only approximation of log2 NSW.
inline double nsw_log2(NswPower x, double alpha_log2, int n_agents) {
  if (x.is_zero) throw AllocationError("log of zero NSW");
  return (x.two_exp + x.alpha_exp * alpha_log2) / n_agents;
}

struct CheckReport {
  std::string mode;
  long long checked = 0;
  std::vector<std::string> violations;
  std::string v_g_empty = "1";  // alpha^0; not normalized, by construction
  std::uint64_t seed = 0;
  long long skipped_trivial = 0;  // superadditivity pairs with a value-1 side

  bool ok() const { return violations.empty(); }

  ordered_json to_json() const {
    ordered_json j;
    j["checked"] = checked;
    j["violations"] = violations;
    j["v_g_empty"] = v_g_empty;
    j["mode"] = mode;
    j["seed"] = seed;
    if (skipped_trivial) j["skipped_trivial"] = skipped_trivial;
    return j;
  }
};

namespace detail {

// covered-vertex count per item mask, for instances with <= 14 items.
inline std::vector<int> greedy_exponent_table(const AuctionInstance& inst) {
  const int m = inst.item_count();
  std::vector<int> g(1u << m, 0);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    int cnt = 0;
    for (int v = 0; v < inst.graph.vertex_count; ++v)
      if ((mask >> (3 * v) & 7u) == 7u) ++cnt;
    g[mask] = cnt;
  }
  return g;
}

inline ItemSet random_bundle(int m, std::mt19937_64& rng) {
  ItemSet s;
  std::uint64_t bits = rng();
  for (int i = 0; i < m; ++i)
    if ((bits >> (i & 63)) & 1u) s.add(i);
  return s;
}

}  // namespace detail

// Supermodularity of v_g: alpha^{g(S|T)} + alpha^{g(S&T)} >= alpha^{gS} + alpha^{gT},
// plus monotonicity, with exact rationals behind the final inequality. The
// exhaustive sweep only ever sees exponents in [0, N], so the rational
// comparisons are memoized over the exponent quadruple.
inline CheckReport check_supermodular(const AuctionInstance& inst,
                                      const std::string& mode,
                                      long long budget = 100000,
                                      std::uint64_t seed = 0) {
  CheckReport rep;
  rep.mode = mode;
  rep.seed = seed;
  const int n = inst.graph.vertex_count;
  std::vector<mpq_class> alpha_pow(n + 1);
  alpha_pow[0] = 1;
  for (int i = 1; i <= n; ++i) alpha_pow[i] = alpha_pow[i - 1] * inst.alpha;
  auto holds = [&](int gu, int gi, int gs, int gt) {
    return alpha_pow[gu] + alpha_pow[gi] >= alpha_pow[gs] + alpha_pow[gt];
  };
  auto note = [&](std::uint64_t s, std::uint64_t t, const char* what) {
    rep.violations.push_back(std::string(what) + " violated for S=" +
                             std::to_string(s) + " T=" + std::to_string(t));
  };
  if (mode == "exhaustive") {
    const int m = inst.item_count();
    if (m > 14)
      throw BudgetError("exhaustive supermodularity check needs <= 14 items, got " +
                        std::to_string(m));
    auto g = detail::greedy_exponent_table(inst);
    std::vector<char> table((n + 1) * (n + 1) * (n + 1) * (n + 1));
    for (int gu = 0; gu <= n; ++gu)
      for (int gi = 0; gi <= n; ++gi)
        for (int gs = 0; gs <= n; ++gs)
          for (int gt = 0; gt <= n; ++gt)
            table[((gu * (n + 1) + gi) * (n + 1) + gs) * (n + 1) + gt] =
                holds(gu, gi, gs, gt) ? 1 : 0;
    const std::uint32_t limit = 1u << m;
    for (std::uint32_t s = 0; s < limit; ++s) {
      for (std::uint32_t t = 0; t < limit; ++t) {
        int gu = g[s | t], gi = g[s & t], gs = g[s], gt = g[t];
        if (!table[((gu * (n + 1) + gi) * (n + 1) + gs) * (n + 1) + gt])
          note(s, t, "supermodularity");
        if ((s & t) == s && gs > gt) note(s, t, "monotonicity");
        ++rep.checked;
      }
    }
    return rep;
  }
  if (mode == "sampled") {
    std::mt19937_64 rng(seed);
    const int m = inst.item_count();
    for (long long i = 0; i < budget; ++i) {
      ItemSet s = detail::random_bundle(m, rng);
      ItemSet t = detail::random_bundle(m, rng);
      int gu = greedy_exponent(inst, s | t);
      int gi = greedy_exponent(inst, s & t);
      int gs = greedy_exponent(inst, s);
      int gt = greedy_exponent(inst, t);
      if (!holds(gu, gi, gs, gt)) note(s.w[0], t.w[0], "supermodularity");
      if (s.subset_of(t) && gs > gt) note(s.w[0], t.w[0], "monotonicity");
      ++rep.checked;
    }
    return rep;
  }
  throw FormatError("unknown supermodularity check mode '" + mode + "'");
}

// Edge valuations are additive; v_g is superadditive on disjoint bundles that
// each cover at least one vertex. Pairs where a side covers nothing evaluate
// to alpha^0 = 1 (the un-normalized empty value) and are skipped, counted in
// skipped_trivial.
inline CheckReport check_superadditive_additive(const AuctionInstance& inst,
                                                std::uint64_t seed = 0,
                                                long long samples = 20000) {
  CheckReport rep;
  rep.mode = "classes";
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  const int m = inst.item_count();
  // Additivity per edge agent: all four sub-bundles of its two valued items,
  // each unioned with a sampled bundle of irrelevant items.
  for (int e = 0; e < inst.graph.edge_count(); ++e) {
    auto [i0, i1] = inst.edge_items[e];
    for (int round = 0; round < 8; ++round) {
      ItemSet noise = detail::random_bundle(m, rng);
      noise.remove(i0);
      noise.remove(i1);
      for (int sub = 0; sub < 4; ++sub) {
        ItemSet s = noise;
        if (sub & 1) s.add(i0);
        if (sub & 2) s.add(i1);
        int whole = edge_value(inst, e, s);
        int singles = 0;
        for (int j : s.indices()) singles += edge_value(inst, e, ItemSet::of({j}));
        if (whole != singles)
          rep.violations.push_back("edge " + std::to_string(e + 1) +
                                   " not additive on a sampled bundle");
        ++rep.checked;
      }
    }
  }
  // Superadditivity of v_g on sampled disjoint pairs.
  std::vector<mpq_class> alpha_pow(inst.graph.vertex_count + 1);
  alpha_pow[0] = 1;
  for (std::size_t i = 1; i < alpha_pow.size(); ++i)
    alpha_pow[i] = alpha_pow[i - 1] * inst.alpha;
  for (long long i = 0; i < samples; ++i) {
    ItemSet s = detail::random_bundle(m, rng);
    ItemSet t = detail::random_bundle(m, rng).minus(s);
    int gs = greedy_exponent(inst, s);
    int gt = greedy_exponent(inst, t);
    if (gs == 0 || gt == 0) {
      ++rep.skipped_trivial;
      continue;
    }
    if (alpha_pow[greedy_exponent(inst, s | t)] < alpha_pow[gs] + alpha_pow[gt])
      rep.violations.push_back("v_g superadditivity violated for S=" +
                               std::to_string(s.w[0]) + " T=" +
                               std::to_string(t.w[0]));
    ++rep.checked;
  }
  return rep;
}

}  // namespace nswvc
