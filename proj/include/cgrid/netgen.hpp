#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgrid/graph.hpp"

namespace cgrid {

class DegreeDistribution;

enum class NetworkKind { scale_free, erdos_renyi, barabasi_albert };

const char* to_string(NetworkKind kind);
NetworkKind network_kind_from_string(const std::string& s);

// Parameters of one network. scale_free draws a degree sequence from
// P(k) ~ k^-alpha on [min_degree, max_degree] and wires it with the
// configuration model; erdos_renyi includes each pair independently with
// probability p; barabasi_albert grows by preferential attachment with
// min_degree edges per new node.
struct NetworkRecipe {
    NetworkKind kind = NetworkKind::scale_free;
    std::size_t node_count = 0;
    double alpha = 2.5;          // power-law exponent (scale_free)
    std::size_t min_degree = 2;  // scale_free, barabasi_albert
    std::size_t max_degree = 0;  // scale_free; 0 = floor(sqrt(node_count))
    double p = 0.0;              // erdos_renyi edge probability, (0, 1]
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

// Deterministic under recipe.seed. Throws generation_error (a runtime_error)
// if a simple wiring cannot be found after the retry budget.
Graph generate_network(const NetworkRecipe& recipe);

struct generation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The two networks plus the support assignment between them. Every comm
// node is backed by exactly one power node; a power node is backed by the
// comm nodes assigned to it (possibly none).
struct InterdependentGrid {
    Graph comm;
    Graph power;
    std::vector<NodeId> support_of_comm;                   // comm -> power
    std::vector<std::vector<NodeId>> supporters_of_power;  // power -> comm list

    // Throws std::logic_error if the two maps disagree.
    void check_consistent() const;
};

// Assigns each comm node a power supporter uniformly at random (balls into
// bins), independently per node. Deterministic under seed.
InterdependentGrid assign_support_links(Graph comm, Graph power, std::uint64_t seed);

// Empirical PMF of supporter counts over power nodes.
DegreeDistribution support_degree_distribution(const InterdependentGrid& grid);

// Grid serialization: two edge-list files plus an interlink file with one
// "a b" line per comm node a supported by power node b.
void save_grid(const InterdependentGrid& grid, const std::string& comm_path,
               const std::string& power_path, const std::string& links_path);
InterdependentGrid load_grid(const std::string& comm_path,
                             const std::string& power_path,
                             const std::string& links_path);

}  // namespace cgrid
