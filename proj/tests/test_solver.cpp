#include <catch2/catch_amalgamated.hpp>

#include "nswvc/solver.hpp"
#include "nswvc/verifier.hpp"

using namespace nswvc;

namespace {

ReductionParams default_params() {
  return ReductionParams::make(mpq_class(1), mpq_class(1, 100));
}

AuctionInstance family_instance(const char* fam) {
  return build_instance(generate_family(fam), default_params());
}

}  // namespace

TEST_CASE("solve_bruteforce finds the known optima") {
  auto k4 = family_instance("k4");
  auto r = solve_bruteforce(k4);
  CHECK(r.value == NswPower::of(3, 1));
  CHECK(nsw_power(k4, r.alloc) == r.value);

  auto prism = family_instance("prism");
  CHECK(solve_bruteforce(prism).value == NswPower::of(3, 2));
}

TEST_CASE("brute-force budget guard") {
  auto big = build_instance(generate_family("random", 12, 5), default_params());
  CHECK_THROWS_AS(solve_bruteforce(big), BudgetError);
}

TEST_CASE("solver oracle equivalence") {
  std::vector<AuctionInstance> insts = {family_instance("k4"), family_instance("k33"),
                                        family_instance("prism")};
  for (std::uint64_t seed : {1, 2, 3, 4})
    for (int n : {6, 8})
      insts.push_back(build_instance(generate_family("random", n, seed),
                                     default_params()));
  for (auto& inst : insts) {
    auto bf = solve_bruteforce(inst);
    auto st = solve_structured(inst);
    CHECK(bf.value == st.value);
    CHECK(nsw_power(inst, st.alloc) == st.value);
    CHECK(opt_formula(inst) == bf.value);
  }
}

TEST_CASE("solve_structured on petersen matches the closed form") {
  auto pet = family_instance("petersen");
  auto r = solve_structured(pet);
  auto cstar = select_cstar(pet.graph);
  CHECK(r.value == NswPower::of(d_count(pet.graph, cstar), 4));
  CHECK(r.value == opt_formula(pet));
}

TEST_CASE("construct_from_cover") {
  auto k4 = family_instance("k4");
  auto a = construct_from_cover(k4, VertexSet(0b0111));
  CHECK(nsw_power(k4, a) == NswPower::of(3, 1));

  auto full = construct_from_cover(k4, VertexSet::full(4));
  CHECK(full.greedy_bundle.empty());
  CHECK(nsw_power(k4, full) == NswPower::of(6, 0));
  // the full-cover score never beats the optimum
  CHECK(compare(NswPower::of(6, 0), solve_bruteforce(k4).value, 6) <= 0);

  auto prism = family_instance("prism");
  auto mvc = minimum_vertex_covers(prism.graph);
  REQUIRE(mvc.size == 4);
  auto cover = select_cstar(prism.graph);
  CHECK(nsw_power(prism, construct_from_cover(prism, cover)) ==
        NswPower::of(d_count(prism.graph, cover), 2));

  CHECK_THROWS_AS(construct_from_cover(k4, VertexSet(0b0011)), AllocationError);
}

TEST_CASE("cover value formula matches direct evaluation for every cover") {
  for (const char* fam : {"k4", "k33", "prism"}) {
    auto inst = family_instance(fam);
    const int n = inst.graph.vertex_count;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      VertexSet c(bits);
      if (!is_vertex_cover(inst.graph, c)) continue;
      auto a = construct_from_cover(inst, c);
      CHECK(nsw_power(inst, a) == NswPower::of(d_count(inst.graph, c), n - c.size()));
      // V_E of the constructed allocation is the cover itself
      CHECK(decompose(inst, a).v_e == c);
    }
  }
}

TEST_CASE("improve_allocation drops a removable cover vertex") {
  auto k4 = family_instance("k4");
  auto a = construct_from_cover(k4, VertexSet::full(4));
  auto before = nsw_power(k4, a);
  auto improved = improve_allocation(k4, a, 3);
  auto after = nsw_power(k4, improved);
  CHECK(decompose(k4, improved).v_e == VertexSet(0b0111));
  CHECK(after.alpha_exp == before.alpha_exp + 1);
  // exact factor guarantees: NSW'^n * 8 >= alpha * NSW^n and NSW' > c * NSW
  mpq_class b = to_big_rational(before, k4.alpha);
  mpq_class af = to_big_rational(after, k4.alpha);
  CHECK(af * 8 >= k4.alpha * b);
  CHECK(af > pow_mpq(k4.params.c, k4.agent_count) * b);
}

TEST_CASE("improve_allocation rejects bad preconditions") {
  auto k4 = family_instance("k4");
  auto minimal = construct_from_cover(k4, VertexSet(0b0111));
  CHECK_THROWS_AS(improve_allocation(k4, minimal, 0), AllocationError);  // uncovers
  CHECK_THROWS_AS(improve_allocation(k4, minimal, 3), AllocationError);  // not in V_E
  Allocation to_g;
  to_g.edge_bundles.resize(6);
  for (int i = 0; i < k4.item_count(); ++i) to_g.greedy_bundle.add(i);
  CHECK_THROWS_AS(improve_allocation(k4, to_g, 0), AllocationError);  // zero NSW
}

TEST_CASE("improve_allocation on messy random allocations") {
  auto pet = family_instance("petersen");
  std::mt19937_64 rng(21);
  int applied = 0;
  while (applied < 50) {
    auto a = random_positive_allocation(pet, rng);
    auto d = decompose(pet, a);
    if (!d.positive) continue;
    int vbar = -1;
    for (int v : d.v_e.indices()) {
      VertexSet t = d.v_e;
      t.remove(v);
      if (is_vertex_cover(pet.graph, t)) {
        vbar = v;
        break;
      }
    }
    if (vbar < 0) continue;
    auto improved = improve_allocation(pet, a, vbar);
    mpq_class b = to_big_rational(nsw_power(pet, a), pet.alpha);
    mpq_class af = to_big_rational(nsw_power(pet, improved), pet.alpha);
    CHECK(af * 8 >= pet.alpha * b);
    ++applied;
  }
}

TEST_CASE("dominance: zero-marginal items move to the greedy agent for free") {
  for (const char* fam : {"k4", "prism"}) {
    auto inst = family_instance(fam);
    std::mt19937_64 rng(31);
    const int m = inst.graph.edge_count();
    for (int trial = 0; trial < 500; ++trial) {
      auto a = random_partition(inst, rng);
      auto base = nsw_power(inst, a);
      for (int e = 0; e < m; ++e) {
        for (int i : a.edge_bundles[e].indices()) {
          if (inst.item_to_edge[i] == e) continue;  // e values this item
          Allocation moved = a;
          moved.edge_bundles[e].remove(i);
          moved.greedy_bundle.add(i);
          CHECK(compare(nsw_power(inst, moved), base, m) >= 0);
        }
      }
    }
  }
}

TEST_CASE("allocation files round-trip and reject non-partitions") {
  auto k4 = family_instance("k4");
  auto a = solve_bruteforce(k4).alloc;
  auto text = serialize_allocation(k4, a);
  CHECK(parse_allocation(k4, text) == a);
  CHECK(serialize_allocation(k4, parse_allocation(k4, text)) == text);

  auto j = ordered_json::parse(text);
  auto missing = j;
  missing["greedy_bundle"] = ordered_json::array();
  CHECK_THROWS_AS(parse_allocation(k4, missing.dump()), AllocationError);
  // the explicit flag completes leftovers to the greedy agent
  auto completed = parse_allocation(k4, missing.dump(), true);
  CHECK(nsw_power(k4, completed).is_zero == false);

  auto dup = j;
  dup["greedy_bundle"].push_back(j["edge_bundles"][0][0]);
  CHECK_THROWS_AS(parse_allocation(k4, dup.dump(), true), AllocationError);
}

TEST_CASE("solvers are deterministic") {
  auto k33 = family_instance("k33");
  CHECK(solve_bruteforce(k33).alloc == solve_bruteforce(k33).alloc);
  CHECK(solve_structured(k33).alloc == solve_structured(k33).alloc);
}
