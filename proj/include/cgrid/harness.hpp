#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgrid/attacks.hpp"
#include "cgrid/netgen.hpp"

namespace cgrid {

// Full sweep description. JSON schema:
//   {"comm": {"kind","n","alpha","min_degree","p","seed"},
//    "power": {...},
//    "attacks": ["targeted","random","mixed"],
//    "x_values": [0, 100, ...],
//    "replications": 50,
//    "base_seed": 1,
//    "output": "out/fig"}
// plus optional "threads", "regenerate_grid_per_replication",
// "prune_before_attack" and per-recipe "max_degree".
struct ExperimentConfig {
    NetworkRecipe comm_recipe;
    NetworkRecipe power_recipe;
    std::vector<AttackKind> attack_kinds;
    std::vector<std::size_t> x_values;
    std::size_t replications = 50;
    std::uint64_t base_seed = 0;
    std::string output_path;
    bool regenerate_grid_per_replication = false;
    bool prune_before_attack = false;
    // Reporting threshold ("giant_threshold" in JSON): a component counts as
    // giant only if its fraction reaches c; below that mu is reported as 0.
    // Default 0 reports the raw largest-component fraction.
    double giant_threshold_c = 0.0;
    int threads = 0;  // 0 = OpenMP default; 1 = serial reference path

    void validate() const;  // throws std::invalid_argument
};

ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct SweepRow {
    AttackKind kind;
    std::size_t x;
    std::size_t rep;
    double mu_comm;
    double mu_power;
    std::size_t stages;
};

struct SweepAggregate {
    AttackKind kind;
    std::size_t x;
    double mean_mu_comm;
    double std_mu_comm;
    double mean_mu_power;
    double std_mu_power;
    std::size_t n;
};

struct SweepResult {
    std::vector<SweepRow> rows;           // ordered by (kind, x, rep)
    std::vector<SweepAggregate> aggregates;
};

// The interlink seed is derived from base_seed, so a config fully
// determines the grid.
InterdependentGrid build_grid(const ExperimentConfig& config);

// Generates the grid once, then runs one cascade per (kind, x, replication)
// on a fresh copy with attack seed derive_seed(base_seed, kind, x, rep).
// Rows come back in deterministic (kind, x, rep) order regardless of the
// thread count.
SweepResult run_experiment(const ExperimentConfig& config);

// recompute aggregates from raw rows (ordered reduction)
std::vector<SweepAggregate> aggregate_rows(const std::vector<SweepRow>& rows);

// Writes "<stem>.raw.csv" with header kind,x,rep,mu_A,mu_B,stages and
// "<stem>.agg.csv" with header kind,x,mean_mu_A,std_mu_A,mean_mu_B,std_mu_B,n.
// Returns the two paths written.
std::pair<std::string, std::string> emit_csv(const SweepResult& result,
                                             const std::string& path_stem);

std::string raw_csv_text(const SweepResult& result);
std::string agg_csv_text(const SweepResult& result);

struct AnalyticComparisonRow {
    AttackKind kind;
    std::size_t x;
    double mu_sim;
    double mu_analytic;
    double delta;
};

// Steady-state prediction from the grid's empirical degree distributions
// against the simulated sweep means, for the random and targeted kinds in
// the config (mixed has no analytic counterpart and is skipped).
std::vector<AnalyticComparisonRow> compare_analytic(const ExperimentConfig& config);
std::vector<AnalyticComparisonRow> compare_analytic(const InterdependentGrid& grid,
                                                    const SweepResult& result);

void write_comparison_csv(const std::vector<AnalyticComparisonRow>& rows,
                          const std::string& path);

}  // namespace cgrid
