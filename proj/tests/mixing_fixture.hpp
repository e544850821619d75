#pragma once

// Hierarchies whose operators hash every input in the order received, so any
// dependence on sweep order or on union order shows up as a different state.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cogh/kernel/process.hpp"

namespace cogh::testing {

inline uint64_t mix(uint64_t h, uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

inline const Tag kMix = "mix";

inline Value mv(uint64_t x) { return Value::make(kMix, x); }
inline uint64_t num(const Value& v) { return v.as<uint64_t>(); }

inline CognitiveNodeSpec mixing_node(const std::string& id, uint64_t salt) {
  CognitiveNodeSpec n;
  n.id = NodeId(id);
  n.spaces = {kMix, kMix, kMix, kMix, kMix};
  n.policies["even"] = [salt](const Value& b) { return ValueSet{mv(mix(num(b), salt)), mv(salt)}; };
  n.policies["odd"] = [salt](const Value& b) { return ValueSet{mv(mix(salt, num(b)))}; };
  n.select_policy = [](const ValueSet& t) {
    uint64_t acc = 0;
    for (const auto& v : t) acc += num(v);
    return PolicyId(acc % 2 ? "odd" : "even");
  };
  n.observe = [salt](const ValueSet& obs, const Value& b) {
    uint64_t h = mix(num(b), salt ^ 0x1111);
    for (const auto& o : obs) h = mix(h, num(o));
    return mv(h);
  };
  n.predict = [salt](const ValueSet& ctx, const ValueSet& acts, const Value& b) {
    uint64_t h = mix(num(b), salt ^ 0x2222);
    for (const auto& c : ctx) h = mix(h, num(c));
    h = mix(h, 0xabcdef);
    for (const auto& a : acts) h = mix(h, num(a));
    return mv(h);
  };
  n.initial_belief = mv(salt);
  n.initial_policy = "even";
  return n;
}

inline EdgeTriple mixing_edge(const std::string& lower, const std::string& upper, uint64_t salt) {
  EdgeTriple e;
  e.lower = NodeId(lower);
  e.upper = NodeId(upper);
  e.sense = [salt](const Value& b) { return ValueSet{mv(mix(num(b), salt))}; };
  e.task_params = [salt](const ValueSet& acts) {
    ValueSet out;
    for (const auto& a : acts) out.push_back(mv(num(a) ^ salt));
    return out;
  };
  e.context = [salt](const Value& b) { return ValueSet{mv(num(b) >> 3), mv(salt)}; };
  return e;
}

inline WorldNodeSpec mixing_world(const std::string& id = "N0") {
  return WorldNodeSpec{NodeId(id), kMix, kMix, [](const ValueSet& t, const Value& s) {
                         uint64_t h = num(s);
                         for (const auto& v : t) h = mix(h, num(v));
                         return mv(h);
                       }};
}

/// Five nodes: N0 -> {A, B}, A -> C, B -> C, B -> D.
inline std::shared_ptr<const Hierarchy> five_node_fixture() {
  auto h = std::make_shared<Hierarchy>(mixing_world());
  uint64_t salt = 11;
  for (const char* id : {"A", "B", "C", "D"}) h->add_node(mixing_node(id, salt++));
  const std::pair<const char*, const char*> edges[] = {{"N0", "A"}, {"N0", "B"}, {"A", "C"}, {"B", "C"}, {"B", "D"}};
  for (const auto& [lo, up] : edges) h->add_edge(mixing_edge(lo, up, salt++));
  return h;
}

/// Random well-formed DAG over N0 plus `n` nodes: node i gets 1..3 lower
/// neighbours drawn from the world and nodes before it.
inline std::shared_ptr<const Hierarchy> random_fixture(uint64_t seed, size_t n) {
  std::mt19937_64 rng(seed);
  auto h = std::make_shared<Hierarchy>(mixing_world());
  std::vector<std::string> ids{"N0"};
  for (size_t i = 1; i <= n; ++i) {
    const std::string id = "X" + std::to_string(i);
    h->add_node(mixing_node(id, rng()));
    std::vector<std::string> pool = ids;
    std::shuffle(pool.begin(), pool.end(), rng);
    const size_t fan_in = std::uniform_int_distribution<size_t>(1, std::min<size_t>(3, pool.size()))(rng);
    for (size_t j = 0; j < fan_in; ++j) h->add_edge(mixing_edge(pool[j], id, rng()));
    ids.push_back(id);
  }
  return h;
}

}  // namespace cogh::testing
