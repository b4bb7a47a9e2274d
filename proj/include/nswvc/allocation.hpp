#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nswvc/reduction.hpp"

namespace nswvc {

// Set of item indices, up to 128 items (N <= 42 vertices).
struct ItemSet {
  std::array<std::uint64_t, 2> w{0, 0};

  bool contains(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  void add(int i) { w[i >> 6] |= (1ull << (i & 63)); }
  void remove(int i) { w[i >> 6] &= ~(1ull << (i & 63)); }
  int size() const { return std::popcount(w[0]) + std::popcount(w[1]); }
  bool empty() const { return w[0] == 0 && w[1] == 0; }

  ItemSet operator&(ItemSet o) const { return {{w[0] & o.w[0], w[1] & o.w[1]}}; }
  ItemSet operator|(ItemSet o) const { return {{w[0] | o.w[0], w[1] | o.w[1]}}; }
  ItemSet minus(ItemSet o) const { return {{w[0] & ~o.w[0], w[1] & ~o.w[1]}}; }
  bool subset_of(ItemSet o) const { return (minus(o)).empty(); }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (int word = 0; word < 2; ++word)
      for (std::uint64_t b = w[word]; b; b &= b - 1)
        out.push_back(64 * word + std::countr_zero(b));
    return out;
  }

  static ItemSet of(std::initializer_list<int> items) {
    ItemSet s;
    for (int i : items) s.add(i);
    return s;
  }

  friend bool operator==(ItemSet a, ItemSet b) { return a.w == b.w; }
  friend bool operator!=(ItemSet a, ItemSet b) { return a.w != b.w; }
};

struct AllocationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A full partition of the instance's items: one bundle per edge agent plus
// the greedy bundle.
struct Allocation {
  std::vector<ItemSet> edge_bundles;
  ItemSet greedy_bundle;

  friend bool operator==(const Allocation& a, const Allocation& b) {
    return a.edge_bundles == b.edge_bundles && a.greedy_bundle == b.greedy_bundle;
  }
};

inline void require_partition(const AuctionInstance& inst, const Allocation& a) {
  if (static_cast<int>(a.edge_bundles.size()) != inst.graph.edge_count())
    throw AllocationError("allocation has " + std::to_string(a.edge_bundles.size()) +
                          " edge bundles, instance has " +
                          std::to_string(inst.graph.edge_count()) + " edges");
  std::vector<int> owner(inst.item_count(), -1);
  auto claim = [&](ItemSet s, int agent) {
    for (int i : s.indices()) {
      if (i >= inst.item_count())
        throw AllocationError("item index " + std::to_string(i) + " out of range");
      if (owner[i] != -1)
        throw AllocationError("item " + std::to_string(i) +
                              " assigned to more than one agent");
      owner[i] = agent;
    }
  };
  for (std::size_t e = 0; e < a.edge_bundles.size(); ++e)
    claim(a.edge_bundles[e], static_cast<int>(e));
  claim(a.greedy_bundle, inst.graph.edge_count());
  for (int i = 0; i < inst.item_count(); ++i)
    if (owner[i] == -1)
      throw AllocationError("item " + std::to_string(i) + " is unassigned");
}

inline std::string serialize_allocation(const AuctionInstance& inst,
                                        const Allocation& a) {
  require_partition(inst, a);
  ordered_json j;
  j["format"] = 1;
  j["edge_bundles"] = ordered_json::array();
  for (auto& b : a.edge_bundles) j["edge_bundles"].push_back(b.indices());
  j["greedy_bundle"] = a.greedy_bundle.indices();
  return j.dump(2) + "\n";
}

// complete_to_greedy: assign any unmentioned item to the greedy agent instead
// of rejecting the file. Duplicates are always an error.
inline Allocation parse_allocation(const AuctionInstance& inst,
                                   const std::string& text,
                                   bool complete_to_greedy = false) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("allocation file is not valid JSON: ") + e.what());
  }
  Allocation a;
  try {
    if (j.at("format").get<int>() != 1)
      throw FormatError("unsupported allocation format version");
    for (auto& bundle : j.at("edge_bundles")) {
      ItemSet s;
      for (auto& i : bundle) s.add(i.get<int>());
      a.edge_bundles.push_back(s);
    }
    for (auto& i : j.at("greedy_bundle")) a.greedy_bundle.add(i.get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed allocation file: ") + e.what());
  }
  if (complete_to_greedy) {
    ItemSet mentioned = a.greedy_bundle;
    for (auto& b : a.edge_bundles) mentioned = mentioned | b;
    for (int i = 0; i < inst.item_count(); ++i)
      if (!mentioned.contains(i)) a.greedy_bundle.add(i);
  }
  require_partition(inst, a);
  return a;
}

}  // namespace nswvc
