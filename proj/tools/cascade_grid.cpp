// cascade-grid: build interdependent comm/power networks, attack them,
// propagate failures to the fixpoint, and sweep attack sizes with seeded
// replications. The analytic subcommand evaluates the generating-function
// percolation equations on degree PMFs instead of simulating.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgrid/analytic.hpp"
#include "cgrid/attacks.hpp"
#include "cgrid/cascade.hpp"
#include "cgrid/harness.hpp"
#include "cgrid/netgen.hpp"

namespace {

using namespace cgrid;

int cmd_generate(const std::string& config_path, const std::string& out_prefix) {
    const ExperimentConfig cfg = load_config(config_path);
    const InterdependentGrid grid = build_grid(cfg);
    const std::string comm_path = out_prefix + ".comm.edges";
    const std::string power_path = out_prefix + ".power.edges";
    const std::string links_path = out_prefix + ".links";
    save_grid(grid, comm_path, power_path, links_path);
    std::cout << "wrote " << comm_path << " (" << grid.comm.node_count() << " nodes, "
              << grid.comm.edge_count() << " edges)\n"
              << "wrote " << power_path << " (" << grid.power.node_count()
              << " nodes, " << grid.power.edge_count() << " edges)\n"
              << "wrote " << links_path << "\n";
    return 0;
}

int cmd_attack(const std::string& graph_path, const std::string& kind_name,
               std::size_t x, std::uint64_t seed, const std::string& out_path) {
    const Graph g = load_edge_list(graph_path);
    AttackSpec spec;
    spec.kind = attack_kind_from_string(kind_name);
    spec.count = x;
    spec.seed = seed;
    const AttackResult result = sample_attack(g, spec);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot write: " + out_path);
        out = &file;
    }
    for (NodeId v : result.attacked) *out << v << "\n";
    return 0;
}

int cmd_cascade(const std::string& comm_path, const std::string& power_path,
                const std::string& links_path, const std::string& kind_name,
                std::size_t x, std::uint64_t seed, const std::string& out_path,
                bool prune_first) {
    InterdependentGrid grid = load_grid(comm_path, power_path, links_path);
    if (prune_first) settle_grid(grid);

    AttackSpec spec;
    spec.kind = attack_kind_from_string(kind_name);
    spec.count = x;
    spec.seed = seed;
    const AttackResult attack = sample_attack(grid.comm, spec);
    const CascadeTrace trace = run_cascade(grid, attack.attacked);

    if (out_path.empty()) {
        write_trace_csv(trace, std::cout);
    } else {
        std::ofstream file(out_path);
        if (!file) throw std::runtime_error("cannot write: " + out_path);
        write_trace_csv(trace, file);
    }
    std::cerr << "final mu_comm " << trace.final_mu_comm << ", mu_power "
              << trace.final_mu_power << ", " << trace.records.size() << " stages\n";
    return 0;
}

int cmd_analytic_removal(const std::string& dist_path, double phi) {
    const DegreeDistribution dist = load_pmf_csv(dist_path);
    const GenFnSet fns = GenFnSet::plain(dist);
    const double u = solve_u(fns, phi);
    const double mu = giant_random_removal(fns, phi);
    std::cout << "u " << u << "\n"
              << "mu " << mu << "\n";
    return 0;
}

// config: {"comm_pmf": path, "power_pmf": path, "support_pmf": path,
//          "kind": "random"|"targeted", "x": count, "n": comm node count,
//          "edges": optional comm edge count}
int cmd_analytic_cascade(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config: " + config_path);
    nlohmann::json j;
    in >> j;

    const auto comm = load_pmf_csv(j.at("comm_pmf").get<std::string>());
    const auto power = load_pmf_csv(j.at("power_pmf").get<std::string>());
    const auto support = load_pmf_csv(j.at("support_pmf").get<std::string>());
    const auto kind = attack_kind_from_string(j.at("kind").get<std::string>());
    const double x = j.at("x").get<double>();
    const double n = j.at("n").get<double>();

    std::vector<double> phi;
    if (kind == AttackKind::random) {
        phi.assign(comm.pmf().size(), 1.0 - x / n);
    } else if (kind == AttackKind::targeted) {
        if (j.contains("edges"))
            phi = targeted_survival_profile_edges(comm, x, j.at("edges").get<double>());
        else
            phi = targeted_survival_profile(comm, x, n);
    } else {
        throw std::invalid_argument("analytic cascade supports random and targeted only");
    }

    const auto pred = stage_recursion(GenFnSet::with_survival_profile(comm, phi),
                                      GenFnSet::plain(power), support);
    std::cout << "stage,side,mu,removed_fraction\n";
    for (const auto& st : pred.stages)
        std::cout << st.stage << "," << (st.stage % 2 == 1 ? "comm" : "power") << ","
                  << st.mu << "," << st.removed_fraction << "\n";
    std::cout << "steady mu_comm " << pred.steady_mu_comm << "\n"
              << "steady mu_power " << pred.steady_mu_power << "\n";
    return 0;
}

int cmd_experiment(const std::string& config_path, int threads_override,
                   bool with_comparison) {
    ExperimentConfig cfg = load_config(config_path);
    if (threads_override >= 0) cfg.threads = threads_override;
    if (cfg.output_path.empty())
        throw std::invalid_argument("config: \"output\" path is required");

    const SweepResult result = run_experiment(cfg);
    const auto [raw_path, agg_path] = emit_csv(result, cfg.output_path);
    std::cout << "wrote " << raw_path << " (" << result.rows.size() << " rows)\n"
              << "wrote " << agg_path << " (" << result.aggregates.size() << " rows)\n";

    if (with_comparison) {
        const InterdependentGrid grid = build_grid(cfg);
        const auto rows = compare_analytic(grid, result);
        const std::string cmp_path = cfg.output_path + ".analytic.csv";
        write_comparison_csv(rows, cmp_path);
        std::cout << "wrote " << cmp_path << " (" << rows.size() << " rows)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cascading-failure simulator for interdependent networks"};
    app.require_subcommand(1);

    std::string config_path, out_prefix = "grid";
    auto* generate = app.add_subcommand("generate", "build a grid and write it out");
    generate->add_option("--config", config_path, "experiment config JSON")->required();
    generate->add_option("--out", out_prefix, "output path prefix");

    std::string graph_path, kind_name = "random", out_path;
    std::size_t x = 0;
    std::uint64_t seed = 0;
    auto* attack = app.add_subcommand("attack", "sample an attacked node set");
    attack->add_option("--graph", graph_path, "edge-list file")->required();
    attack->add_option("--attack", kind_name, "random|targeted|mixed");
    attack->add_option("--x", x, "number of nodes to attack")->required();
    attack->add_option("--seed", seed, "rng seed");
    attack->add_option("--out", out_path, "write indices here instead of stdout");

    std::string comm_path, power_path, links_path;
    bool prune_first = false;
    auto* cascade = app.add_subcommand("cascade", "run one cascade to its fixpoint");
    cascade->add_option("--comm", comm_path, "comm edge-list file")->required();
    cascade->add_option("--power", power_path, "power edge-list file")->required();
    cascade->add_option("--links", links_path, "interlink file")->required();
    cascade->add_option("--attack", kind_name, "random|targeted|mixed");
    cascade->add_option("--x", x, "number of nodes to attack")->required();
    cascade->add_option("--seed", seed, "rng seed");
    cascade->add_option("--out", out_path, "trace CSV path (default stdout)");
    cascade->add_flag("--prune-first", prune_first,
                      "settle the grid before attacking");

    std::string dist_path;
    double phi = 1.0;
    auto* analytic = app.add_subcommand("analytic", "generating-function solver");
    analytic->add_option("--dist", dist_path, "degree pmf CSV (k,probability)");
    analytic->add_option("--phi", phi, "surviving fraction after random removal");
    std::string analytic_config;
    auto* analytic_cascade =
        analytic->add_subcommand("cascade", "stage recursion to steady state");
    analytic_cascade->add_option("--config", analytic_config, "analytic config JSON")
        ->required();

    int threads_override = -1;
    bool with_comparison = false;
    auto* experiment = app.add_subcommand("experiment", "replicated attack sweep");
    experiment->add_option("--config", config_path, "experiment config JSON")->required();
    experiment->add_option("--threads", threads_override, "worker threads (1 = serial)");
    experiment->add_flag("--compare-analytic", with_comparison,
                         "also write steady-state predictions");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(config_path, out_prefix);
        if (attack->parsed()) return cmd_attack(graph_path, kind_name, x, seed, out_path);
        if (cascade->parsed())
            return cmd_cascade(comm_path, power_path, links_path, kind_name, x, seed,
                               out_path, prune_first);
        if (analytic->parsed()) {
            if (analytic_cascade->parsed()) return cmd_analytic_cascade(analytic_config);
            if (dist_path.empty())
                throw CLI::RequiredError("analytic: --dist (or the cascade subcommand)");
            return cmd_analytic_removal(dist_path, phi);
        }
        if (experiment->parsed())
            return cmd_experiment(config_path, threads_override, with_comparison);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
