#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgrid/graph.hpp"

namespace cgrid {

enum class AttackKind { random, targeted, mixed };

const char* to_string(AttackKind kind);
AttackKind attack_kind_from_string(const std::string& s);

struct AttackSpec {
    AttackKind kind = AttackKind::random;
    std::size_t count = 0;
    std::uint64_t seed = 0;
};

struct AttackResult {
    std::vector<NodeId> attacked;      // pick order, no repeats
    std::vector<double> weights_used;  // weight each node carried when picked
};

// x alive nodes uniformly at random, without replacement.
AttackResult sample_random(const Graph& g, const AttackSpec& spec);

// Sequential weighted sampling without replacement: at every step a node is
// picked with probability proportional to its degree among the not yet
// picked alive nodes. Weights are the alive-degrees frozen at entry, not
// updated as picked nodes drop out. Zero-degree nodes carry weight 0 and
// are drawn uniformly once all positive weight is exhausted, so the result
// always has exactly spec.count nodes.
AttackResult sample_targeted(const Graph& g, const AttackSpec& spec);

// ceil(x/2) targeted picks followed by floor(x/2) uniform picks from the
// remaining pool.
AttackResult sample_mixed(const Graph& g, const AttackSpec& spec);

// dispatch on spec.kind
AttackResult sample_attack(const Graph& g, const AttackSpec& spec);

}  // namespace cgrid
