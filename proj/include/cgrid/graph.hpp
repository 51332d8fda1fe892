#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace cgrid {

using NodeId = std::uint32_t;
using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

class DegreeDistribution;

// Undirected simple graph with an alive-mask. Node removal flips the mask
// instead of rewriting the adjacency, so the original topology (degrees,
// edge count) stays available to the attack sampler and the reporting code
// while queries see only the surviving subgraph.
class Graph {
public:
    Graph() = default;

    // Throws std::invalid_argument on an endpoint >= node_count, a
    // self-loop, or a duplicate edge.
    Graph(std::size_t node_count, const EdgeList& edges);

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<NodeId>& neighbors(NodeId v) const { return adjacency_[v]; }
    std::size_t degree(NodeId v) const { return adjacency_[v].size(); }

    // degree counting only alive endpoints on both sides
    std::size_t alive_degree(NodeId v) const;

    bool is_alive(NodeId v) const { return alive_[v] != 0; }
    std::size_t alive_count() const { return alive_count_; }

    // Throws std::invalid_argument if v is out of range or already dead.
    void kill(NodeId v);
    void revive_all();

    EdgeList edges() const;  // canonical (u < v) sorted order

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::uint8_t> alive_;
    std::size_t edge_count_ = 0;
    std::size_t alive_count_ = 0;
};

// Partition of the alive nodes into connected components. Labels are
// assigned in order of each component's lowest node index, so label 0 is
// the component containing the smallest alive node. Ties for the largest
// size resolve toward the lowest label, i.e. the component containing the
// smallest node index.
struct ComponentLabeling {
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    std::vector<std::uint32_t> component_id;  // per node; kNone for dead nodes
    std::vector<std::size_t> component_sizes; // indexed by label
    std::size_t largest_size = 0;
    std::uint32_t largest_label = kNone;
};

ComponentLabeling largest_component(const Graph& g);

// largest component size over `base_count` (the original network size, not
// the surviving count). Throws std::invalid_argument if base_count == 0.
double giant_fraction(const Graph& g, std::size_t base_count);

// Empirical PMF of alive-node degrees, counting only edges between alive
// nodes. Throws std::invalid_argument when no node is alive.
DegreeDistribution degree_distribution(const Graph& g);

// Edge-list text format: first line "n <node_count>", then one "u v" pair
// per line, 0-indexed. Lines starting with '#' are comments.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);
void save_edge_list(const Graph& g, const std::string& path);

}  // namespace cgrid
