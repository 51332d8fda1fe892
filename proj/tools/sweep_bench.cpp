// Benchmark of the replication sweep: serial reference path (threads = 1)
// against the OpenMP path, verifying that both produce identical rows.

#include <chrono>
#include <cstdio>
#include <iostream>

#include "cgrid/harness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace cgrid;

namespace {

double time_sweep(ExperimentConfig cfg, int threads, SweepResult& out) {
    cfg.threads = threads;
    const auto start = std::chrono::steady_clock::now();
    out = run_experiment(cfg);
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n_comm = 4000;
    std::size_t reps = 20;
    if (argc > 1) n_comm = static_cast<std::size_t>(std::atoll(argv[1]));
    if (argc > 2) reps = static_cast<std::size_t>(std::atoll(argv[2]));

    ExperimentConfig cfg;
    cfg.comm_recipe.kind = NetworkKind::scale_free;
    cfg.comm_recipe.node_count = n_comm;
    cfg.comm_recipe.alpha = 2.5;
    cfg.comm_recipe.min_degree = 2;
    cfg.comm_recipe.seed = 1;
    cfg.power_recipe = cfg.comm_recipe;
    cfg.power_recipe.node_count = n_comm / 4;
    cfg.power_recipe.seed = 2;
    cfg.attack_kinds = {AttackKind::targeted, AttackKind::random, AttackKind::mixed};
    cfg.x_values = {n_comm / 10, n_comm / 5, 3 * n_comm / 10, 2 * n_comm / 5};
    cfg.replications = reps;
    cfg.base_seed = 99;

    const std::size_t jobs = cfg.attack_kinds.size() * cfg.x_values.size() * reps;
    std::printf("sweep: n_comm=%zu n_power=%zu jobs=%zu\n", cfg.comm_recipe.node_count,
                cfg.power_recipe.node_count, jobs);

    SweepResult serial, parallel;
    const double t_serial = time_sweep(cfg, 1, serial);
    std::printf("serial    %8.3f s  (%7.1f cascades/s)\n", t_serial, jobs / t_serial);

#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif
    const double t_parallel = time_sweep(cfg, max_threads, parallel);
    std::printf("parallel  %8.3f s  (%7.1f cascades/s)  threads=%d  speedup=%.2fx\n",
                t_parallel, jobs / t_parallel, max_threads, t_serial / t_parallel);

    if (raw_csv_text(serial) != raw_csv_text(parallel)) {
        std::fprintf(stderr, "FAIL: serial and parallel sweeps disagree\n");
        return 1;
    }
    std::printf("serial and parallel rows identical\n");
    return 0;
}
