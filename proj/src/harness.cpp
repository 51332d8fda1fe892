#include "cgrid/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cgrid/analytic.hpp"
#include "cgrid/cascade.hpp"
#include "cgrid/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cgrid {

namespace {

// seed-derivation tags, fixed forever for reproducibility
constexpr std::uint64_t kLinkSeedTag = 0x6C696E6B;   // interlink assignment
constexpr std::uint64_t kGridSeedTag = 0x67726964;   // per-replication regen

std::uint64_t kind_id(AttackKind kind) {
    return static_cast<std::uint64_t>(kind);
}

NetworkRecipe recipe_from_json(const nlohmann::json& j) {
    NetworkRecipe r;
    r.kind = network_kind_from_string(j.at("kind").get<std::string>());
    r.node_count = j.at("n").get<std::size_t>();
    if (j.contains("alpha")) r.alpha = j.at("alpha").get<double>();
    if (j.contains("min_degree")) r.min_degree = j.at("min_degree").get<std::size_t>();
    if (j.contains("max_degree")) r.max_degree = j.at("max_degree").get<std::size_t>();
    if (j.contains("p")) r.p = j.at("p").get<double>();
    if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
    r.validate();
    return r;
}

}  // namespace

void ExperimentConfig::validate() const {
    comm_recipe.validate();
    power_recipe.validate();
    if (replications < 1)
        throw std::invalid_argument("config: replications must be >= 1");
    for (std::size_t x : x_values)
        if (x > comm_recipe.node_count)
            throw std::invalid_argument("config: x value " + std::to_string(x) +
                                        " exceeds comm node count");
    if (giant_threshold_c < 0.0 || giant_threshold_c > 1.0)
        throw std::invalid_argument("config: giant_threshold must lie in [0,1]");
    if (threads < 0)
        throw std::invalid_argument("config: threads must be >= 0");
}

ExperimentConfig config_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    ExperimentConfig cfg;
    cfg.comm_recipe = recipe_from_json(j.at("comm"));
    cfg.power_recipe = recipe_from_json(j.at("power"));
    for (const auto& k : j.at("attacks"))
        cfg.attack_kinds.push_back(attack_kind_from_string(k.get<std::string>()));
    for (const auto& x : j.at("x_values"))
        cfg.x_values.push_back(x.get<std::size_t>());
    if (j.contains("replications"))
        cfg.replications = j.at("replications").get<std::size_t>();
    if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("output")) cfg.output_path = j.at("output").get<std::string>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    if (j.contains("regenerate_grid_per_replication"))
        cfg.regenerate_grid_per_replication =
            j.at("regenerate_grid_per_replication").get<bool>();
    if (j.contains("prune_before_attack"))
        cfg.prune_before_attack = j.at("prune_before_attack").get<bool>();
    if (j.contains("giant_threshold"))
        cfg.giant_threshold_c = j.at("giant_threshold").get<double>();
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return config_from_json_text(buf.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

InterdependentGrid build_grid(const ExperimentConfig& config) {
    Graph comm = generate_network(config.comm_recipe);
    Graph power = generate_network(config.power_recipe);
    const std::uint64_t link_seed = derive_seed(config.base_seed, kLinkSeedTag, 0, 0);
    return assign_support_links(std::move(comm), std::move(power), link_seed);
}

namespace {

InterdependentGrid build_grid_for_rep(const ExperimentConfig& config, std::size_t rep) {
    ExperimentConfig local = config;
    local.comm_recipe.seed = derive_seed(config.comm_recipe.seed, kGridSeedTag, rep, 0);
    local.power_recipe.seed = derive_seed(config.power_recipe.seed, kGridSeedTag, rep, 1);
    local.base_seed = derive_seed(config.base_seed, kGridSeedTag, rep, 2);
    return build_grid(local);
}

SweepRow run_one(const InterdependentGrid& pristine, const ExperimentConfig& config,
                 AttackKind kind, std::size_t x, std::size_t rep) {
    InterdependentGrid grid = pristine;
    if (config.prune_before_attack) settle_grid(grid);

    AttackSpec spec;
    spec.kind = kind;
    spec.count = std::min(x, grid.comm.alive_count());
    spec.seed = derive_seed(config.base_seed, kind_id(kind), x, rep);
    const AttackResult attack = sample_attack(grid.comm, spec);

    const CascadeTrace trace = run_cascade(grid, attack.attacked);
    const double c = config.giant_threshold_c;
    const double mu_comm = trace.final_mu_comm >= c ? trace.final_mu_comm : 0.0;
    const double mu_power = trace.final_mu_power >= c ? trace.final_mu_power : 0.0;
    return SweepRow{kind, x, rep, mu_comm, mu_power, trace.records.size()};
}

}  // namespace

std::vector<SweepAggregate> aggregate_rows(const std::vector<SweepRow>& rows) {
    std::vector<SweepAggregate> aggs;
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        while (j < rows.size() && rows[j].kind == rows[i].kind && rows[j].x == rows[i].x)
            ++j;
        const std::size_t n = j - i;
        double mean_c = 0, mean_p = 0;
        for (std::size_t k = i; k < j; ++k) {
            mean_c += rows[k].mu_comm;
            mean_p += rows[k].mu_power;
        }
        mean_c /= static_cast<double>(n);
        mean_p /= static_cast<double>(n);
        double var_c = 0, var_p = 0;
        if (n > 1) {
            for (std::size_t k = i; k < j; ++k) {
                var_c += (rows[k].mu_comm - mean_c) * (rows[k].mu_comm - mean_c);
                var_p += (rows[k].mu_power - mean_p) * (rows[k].mu_power - mean_p);
            }
            var_c /= static_cast<double>(n - 1);
            var_p /= static_cast<double>(n - 1);
        }
        aggs.push_back({rows[i].kind, rows[i].x, mean_c, std::sqrt(var_c), mean_p,
                        std::sqrt(var_p), n});
        i = j;
    }
    return aggs;
}

SweepResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const InterdependentGrid pristine =
        config.regenerate_grid_per_replication ? InterdependentGrid{} : build_grid(config);

    struct Job {
        AttackKind kind;
        std::size_t x;
        std::size_t rep;
    };
    std::vector<Job> jobs;
    jobs.reserve(config.attack_kinds.size() * config.x_values.size() *
                 config.replications);
    for (AttackKind kind : config.attack_kinds)
        for (std::size_t x : config.x_values)
            for (std::size_t rep = 0; rep < config.replications; ++rep)
                jobs.push_back({kind, x, rep});

    SweepResult result;
    result.rows.resize(jobs.size());

    // Jobs are independent and write to disjoint slots, so the schedule and
    // thread count never change the result.
    const auto count = static_cast<std::ptrdiff_t>(jobs.size());
    std::string first_error;
#ifdef _OPENMP
    const int requested = config.threads;
#pragma omp parallel for schedule(dynamic) num_threads( \
        requested > 0 ? requested : omp_get_max_threads())
#endif
    for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
        try {
            const Job& job = jobs[static_cast<std::size_t>(idx)];
            if (config.regenerate_grid_per_replication) {
                const InterdependentGrid grid = build_grid_for_rep(config, job.rep);
                result.rows[static_cast<std::size_t>(idx)] =
                    run_one(grid, config, job.kind, job.x, job.rep);
            } else {
                result.rows[static_cast<std::size_t>(idx)] =
                    run_one(pristine, config, job.kind, job.x, job.rep);
            }
        } catch (const std::exception& e) {
            // exceptions must not escape the parallel region
#ifdef _OPENMP
#pragma omp critical
#endif
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (!first_error.empty())
        throw std::runtime_error("experiment job failed: " + first_error);

    result.aggregates = aggregate_rows(result.rows);
    return result;
}

std::string raw_csv_text(const SweepResult& result) {
    std::string out = "kind,x,rep,mu_A,mu_B,stages\n";
    char buf[192];
    for (const auto& r : result.rows) {
        std::snprintf(buf, sizeof(buf), "%s,%zu,%zu,%.17g,%.17g,%zu\n",
                      to_string(r.kind), r.x, r.rep, r.mu_comm, r.mu_power, r.stages);
        out += buf;
    }
    return out;
}

std::string agg_csv_text(const SweepResult& result) {
    std::string out = "kind,x,mean_mu_A,std_mu_A,mean_mu_B,std_mu_B,n\n";
    char buf[256];
    for (const auto& a : result.aggregates) {
        std::snprintf(buf, sizeof(buf), "%s,%zu,%.17g,%.17g,%.17g,%.17g,%zu\n",
                      to_string(a.kind), a.x, a.mean_mu_comm, a.std_mu_comm,
                      a.mean_mu_power, a.std_mu_power, a.n);
        out += buf;
    }
    return out;
}

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write: " + path);
    out << text;
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::pair<std::string, std::string> emit_csv(const SweepResult& result,
                                             const std::string& path_stem) {
    const std::string raw_path = path_stem + ".raw.csv";
    const std::string agg_path = path_stem + ".agg.csv";
    write_file(raw_path, raw_csv_text(result));
    write_file(agg_path, agg_csv_text(result));
    return {raw_path, agg_path};
}

std::vector<AnalyticComparisonRow> compare_analytic(const InterdependentGrid& grid,
                                                    const SweepResult& result) {
    const DegreeDistribution comm_dist = degree_distribution(grid.comm);
    const DegreeDistribution power_dist = degree_distribution(grid.power);
    const DegreeDistribution support_pmf = support_degree_distribution(grid);
    const GenFnSet power_fns = GenFnSet::plain(power_dist);
    const double n_comm = static_cast<double>(grid.comm.node_count());

    std::vector<AnalyticComparisonRow> rows;
    for (const auto& agg : result.aggregates) {
        if (agg.kind == AttackKind::mixed) continue;  // no analytic counterpart
        std::vector<double> phi;
        if (agg.kind == AttackKind::random) {
            phi.assign(comm_dist.pmf().size(),
                       1.0 - static_cast<double>(agg.x) / n_comm);
        } else {
            // inclusion law of the sequential sampler the sweep actually ran
            phi = sequential_attack_profile(comm_dist, static_cast<double>(agg.x),
                                            n_comm);
        }
        const GenFnSet comm_fns = GenFnSet::with_survival_profile(comm_dist, phi);
        const CascadePrediction pred = stage_recursion(comm_fns, power_fns, support_pmf);
        rows.push_back({agg.kind, agg.x, agg.mean_mu_comm, pred.steady_mu_comm,
                        agg.mean_mu_comm - pred.steady_mu_comm});
    }
    return rows;
}

std::vector<AnalyticComparisonRow> compare_analytic(const ExperimentConfig& config) {
    const InterdependentGrid grid = build_grid(config);
    const SweepResult result = run_experiment(config);
    return compare_analytic(grid, result);
}

void write_comparison_csv(const std::vector<AnalyticComparisonRow>& rows,
                          const std::string& path) {
    std::string text = "kind,x,mu_sim,mu_analytic,delta\n";
    char buf[192];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%zu,%.17g,%.17g,%.17g\n", to_string(r.kind),
                      r.x, r.mu_sim, r.mu_analytic, r.delta);
        text += buf;
    }
    write_file(path, text);
}

}  // namespace cgrid
