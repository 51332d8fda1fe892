#include "cgrid/cascade.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace cgrid {

const char* to_string(Side side) {
    return side == Side::comm ? "comm" : "power";
}

void apply_attack(InterdependentGrid& grid, const std::vector<NodeId>& attacked) {
    for (NodeId a : attacked) {
        if (a >= grid.comm.node_count())
            throw std::invalid_argument("apply_attack: node out of range");
        if (!grid.comm.is_alive(a))
            throw std::invalid_argument("apply_attack: node " + std::to_string(a) +
                                        " is already dead");
    }
    for (NodeId a : attacked) grid.comm.kill(a);
}

std::vector<NodeId> prune_to_giant(Graph& g) {
    std::vector<NodeId> removed;
    if (g.alive_count() == 0) return removed;
    const auto lab = largest_component(g);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (g.is_alive(v) && lab.component_id[v] != lab.largest_label) {
            g.kill(v);
            removed.push_back(v);
        }
    }
    return removed;
}

std::vector<NodeId> fail_unsupported_power(InterdependentGrid& grid) {
    std::vector<NodeId> removed;
    for (NodeId b = 0; b < grid.power.node_count(); ++b) {
        if (!grid.power.is_alive(b)) continue;
        bool supported = false;
        for (NodeId a : grid.supporters_of_power[b]) {
            if (grid.comm.is_alive(a)) {
                supported = true;
                break;
            }
        }
        if (!supported) {
            grid.power.kill(b);
            removed.push_back(b);
        }
    }
    return removed;
}

std::vector<NodeId> fail_unsupported_comm(InterdependentGrid& grid) {
    std::vector<NodeId> removed;
    for (NodeId a = 0; a < grid.comm.node_count(); ++a) {
        if (grid.comm.is_alive(a) && !grid.power.is_alive(grid.support_of_comm[a])) {
            grid.comm.kill(a);
            removed.push_back(a);
        }
    }
    return removed;
}

namespace {

StageRecord record_stage(int stage, Side side, std::size_t removed,
                         const Graph& g, std::size_t original_size) {
    StageRecord rec;
    rec.stage = stage;
    rec.side = side;
    rec.removed_count = removed;
    rec.alive_count = g.alive_count();
    rec.giant_size = largest_component(g).largest_size;
    rec.removed_fraction =
        static_cast<double>(removed) / static_cast<double>(original_size);
    rec.functional_fraction =
        static_cast<double>(rec.giant_size) / static_cast<double>(original_size);
    return rec;
}

}  // namespace

std::size_t settle_grid(InterdependentGrid& grid) {
    std::size_t total = 0;
    for (;;) {
        std::size_t changed = 0;
        changed += prune_to_giant(grid.comm).size();
        changed += fail_unsupported_power(grid).size();
        changed += prune_to_giant(grid.power).size();
        changed += fail_unsupported_comm(grid).size();
        if (changed == 0) break;
        total += changed;
    }
    return total;
}

CascadeTrace run_cascade(InterdependentGrid& grid, const std::vector<NodeId>& attacked,
                         const CascadeOptions& options) {
    const std::size_t n_comm = grid.comm.node_count();
    const std::size_t n_power = grid.power.node_count();

    if (options.prune_before_attack) settle_grid(grid);

    CascadeTrace trace;
    // every round before the last removes at least one node
    const int max_stages = 2 * static_cast<int>(n_comm + n_power + 1) + 2;
    int stage = 0;
    bool first_round = true;

    while (stage < max_stages) {
        std::size_t round_removed = 0;

        // comm stage (odd): attack at stage 1, support failures afterwards
        std::size_t direct;
        if (first_round) {
            apply_attack(grid, attacked);
            direct = attacked.size();
        } else {
            direct = fail_unsupported_comm(grid).size();
        }
        ++stage;
        trace.records.push_back(record_stage(stage, Side::comm, direct, grid.comm, n_comm));
        round_removed += direct + prune_to_giant(grid.comm).size();

        // power stage (even)
        const std::size_t power_failed = fail_unsupported_power(grid).size();
        ++stage;
        trace.records.push_back(
            record_stage(stage, Side::power, power_failed, grid.power, n_power));
        round_removed += power_failed + prune_to_giant(grid.power).size();

        first_round = false;
        if (round_removed == 0) {
            trace.converged = true;
            break;
        }
    }

    for (const auto& rec : trace.records) {
        if (rec.side == Side::comm)
            trace.final_mu_comm = rec.functional_fraction;
        else
            trace.final_mu_power = rec.functional_fraction;
    }
    return trace;
}

void write_trace_csv(const CascadeTrace& trace, std::ostream& out) {
    out << "stage,side,removed_count,alive_count,giant_size,mu\n";
    char buf[128];
    for (const auto& rec : trace.records) {
        std::snprintf(buf, sizeof(buf), "%d,%s,%zu,%zu,%zu,%.17g\n", rec.stage,
                      to_string(rec.side), rec.removed_count, rec.alive_count,
                      rec.giant_size, rec.functional_fraction);
        out << buf;
    }
}

}  // namespace cgrid
