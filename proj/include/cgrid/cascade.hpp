#pragma once

#include <iosfwd>
#include <vector>

#include "cgrid/netgen.hpp"

namespace cgrid {

enum class Side { comm, power };

const char* to_string(Side side);

// One stage of the cascade. removed_count covers the direct removals of the
// stage (the attack, or nodes losing their last support); alive_count and
// giant_size are measured after those removals but before the stage's
// giant-component pruning. Fractions are relative to the original side size.
struct StageRecord {
    int stage = 0;  // 1-based; odd = comm, even = power
    Side side = Side::comm;
    std::size_t removed_count = 0;
    std::size_t alive_count = 0;
    std::size_t giant_size = 0;
    double removed_fraction = 0.0;
    double functional_fraction = 0.0;
};

struct CascadeTrace {
    std::vector<StageRecord> records;
    bool converged = false;
    double final_mu_comm = 0.0;
    double final_mu_power = 0.0;
};

// Marks the attacked comm nodes dead. Throws std::invalid_argument when a
// node is out of range or already dead.
void apply_attack(InterdependentGrid& grid, const std::vector<NodeId>& attacked);

// Kills every alive node outside the largest connected component and
// returns the removed set. Ties go to the component containing the lowest
// node index (see ComponentLabeling).
std::vector<NodeId> prune_to_giant(Graph& g);

// Kills every alive power node with no alive supporter (including nodes
// that were never assigned one). Returns the removed set.
std::vector<NodeId> fail_unsupported_power(InterdependentGrid& grid);

// Kills every alive comm node whose single supplier is dead.
std::vector<NodeId> fail_unsupported_comm(InterdependentGrid& grid);

// Reduces the unattacked grid to mutually supported giant components:
// rounds of pruning and support failure until stable. Returns the number of
// nodes removed.
std::size_t settle_grid(InterdependentGrid& grid);

struct CascadeOptions {
    // When set, settle_grid runs before the attack is applied (an
    // unrecorded stage 0).
    bool prune_before_attack = false;
};

// Alternates comm and power stages until a full comm+power round removes
// nothing: stage 1 applies the attack and prunes the comm side to its giant
// component; even stages fail unsupported power nodes and prune the power
// side; later odd stages fail comm nodes whose supplier died and prune the
// comm side. Mutates `grid` to the fixpoint state.
CascadeTrace run_cascade(InterdependentGrid& grid, const std::vector<NodeId>& attacked,
                         const CascadeOptions& options = {});

// CSV with header "stage,side,removed_count,alive_count,giant_size,mu".
void write_trace_csv(const CascadeTrace& trace, std::ostream& out);

}  // namespace cgrid
