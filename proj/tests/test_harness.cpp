#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cgrid/harness.hpp"
#include "cgrid/rng.hpp"

using namespace cgrid;

namespace {

const char* kSmallConfig = R"({
  "comm":  {"kind": "erdos_renyi", "n": 300, "p": 0.02, "seed": 11},
  "power": {"kind": "erdos_renyi", "n": 60, "p": 0.08, "seed": 12},
  "attacks": ["targeted", "random"],
  "x_values": [0, 30, 90],
  "replications": 10,
  "base_seed": 5,
  "output": "sweep_tmp"
})";

}  // namespace

TEST_CASE("seed derivation: splitmix64 reference vectors and stability") {
    // reference outputs of the SplitMix64 generator from state 0
    std::uint64_t s = 0;
    CHECK(splitmix64(s) == 0xE220A8397B1DCDAFULL);
    CHECK(splitmix64(s) == 0x6E789E6AA1B965F4ULL);
    CHECK(splitmix64(s) == 0x06C45D188009454FULL);

    CHECK(derive_seed(1, 2, 3, 4) == derive_seed(1, 2, 3, 4));
    CHECK(derive_seed(1, 2, 3, 4) != derive_seed(1, 2, 3, 5));
    CHECK(derive_seed(1, 2, 3, 4) != derive_seed(1, 2, 4, 3));
    CHECK(derive_seed(1, 2, 3, 4) != derive_seed(2, 2, 3, 4));
}

TEST_CASE("config parsing and validation") {
    auto cfg = config_from_json_text(kSmallConfig);
    CHECK(cfg.comm_recipe.node_count == 300);
    CHECK(cfg.power_recipe.p == doctest::Approx(0.08));
    CHECK(cfg.attack_kinds.size() == 2);
    CHECK(cfg.x_values == std::vector<std::size_t>{0, 30, 90});
    CHECK(cfg.replications == 10);
    CHECK(cfg.output_path == "sweep_tmp");

    CHECK_THROWS(config_from_json_text("{"));
    CHECK_THROWS(config_from_json_text("{}"));

    // x beyond n_comm rejected
    std::string bad = kSmallConfig;
    const auto pos = bad.find("[0, 30, 90]");
    bad.replace(pos, 11, "[301]");
    CHECK_THROWS_AS(config_from_json_text(bad), std::invalid_argument);
}

TEST_CASE("x = 0 sweep reproduces the no-attack baseline with zero spread") {
    auto cfg = config_from_json_text(kSmallConfig);
    cfg.x_values = {0};
    cfg.attack_kinds = {AttackKind::random};
    cfg.replications = 5;
    auto result = run_experiment(cfg);
    REQUIRE(result.rows.size() == 5);
    for (const auto& row : result.rows) {
        CHECK(row.mu_comm == result.rows[0].mu_comm);
        CHECK(row.mu_power == result.rows[0].mu_power);
    }
    REQUIRE(result.aggregates.size() == 1);
    CHECK(result.aggregates[0].std_mu_comm == doctest::Approx(0.0));
    CHECK(result.aggregates[0].std_mu_power == doctest::Approx(0.0));
}

TEST_CASE("row and aggregate counts") {
    auto cfg = config_from_json_text(kSmallConfig);
    cfg.attack_kinds = {AttackKind::random};
    cfg.x_values = {10, 20};
    cfg.replications = 50;
    auto result = run_experiment(cfg);
    CHECK(result.rows.size() == 100);
    CHECK(result.aggregates.size() == 2);
    for (const auto& agg : result.aggregates) {
        CHECK(agg.n == 50);
        CHECK(agg.mean_mu_comm >= 0.0);
        CHECK(agg.mean_mu_comm <= 1.0);
    }

    // empty sweep: header-only files
    cfg.x_values = {};
    auto empty = run_experiment(cfg);
    CHECK(empty.rows.empty());
    CHECK(raw_csv_text(empty) == "kind,x,rep,mu_A,mu_B,stages\n");
    CHECK(agg_csv_text(empty) ==
          "kind,x,mean_mu_A,std_mu_A,mean_mu_B,std_mu_B,n\n");
}

TEST_CASE("csv round trip: parse raw rows, recompute aggregates") {
    auto cfg = config_from_json_text(kSmallConfig);
    cfg.replications = 8;
    auto result = run_experiment(cfg);
    const std::string raw = raw_csv_text(result);

    // parse the emitted text back
    std::istringstream in(raw);
    std::string line;
    std::getline(in, line);
    REQUIRE(line == "kind,x,rep,mu_A,mu_B,stages");
    std::vector<SweepRow> parsed;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        SweepRow row;
        char kind[32];
        std::size_t x, rep, stages;
        double mu_a, mu_b;
        REQUIRE(std::sscanf(line.c_str(), "%31[^,],%zu,%zu,%lf,%lf,%zu", kind, &x, &rep,
                            &mu_a, &mu_b, &stages) == 6);
        row.kind = attack_kind_from_string(kind);
        row.x = x;
        row.rep = rep;
        row.mu_comm = mu_a;
        row.mu_power = mu_b;
        row.stages = stages;
        parsed.push_back(row);
    }
    REQUIRE(parsed.size() == result.rows.size());

    auto recomputed = aggregate_rows(parsed);
    REQUIRE(recomputed.size() == result.aggregates.size());
    for (std::size_t i = 0; i < recomputed.size(); ++i) {
        CHECK(std::abs(recomputed[i].mean_mu_comm - result.aggregates[i].mean_mu_comm) <
              1e-12);
        CHECK(std::abs(recomputed[i].std_mu_comm - result.aggregates[i].std_mu_comm) <
              1e-12);
        CHECK(std::abs(recomputed[i].mean_mu_power - result.aggregates[i].mean_mu_power) <
              1e-12);
    }
}

TEST_CASE("identical configs give byte-identical raw csv") {
    auto cfg = config_from_json_text(kSmallConfig);
    auto r1 = run_experiment(cfg);
    auto r2 = run_experiment(cfg);
    CHECK(raw_csv_text(r1) == raw_csv_text(r2));
    CHECK(agg_csv_text(r1) == agg_csv_text(r2));
}

TEST_CASE("serial and parallel sweeps agree byte for byte") {
    auto cfg = config_from_json_text(kSmallConfig);
    cfg.threads = 1;
    const std::string serial = raw_csv_text(run_experiment(cfg));
    cfg.threads = 4;
    const std::string parallel = raw_csv_text(run_experiment(cfg));
    CHECK(serial == parallel);
}

TEST_CASE("emit_csv writes the two files") {
    auto cfg = config_from_json_text(kSmallConfig);
    cfg.x_values = {0};
    cfg.replications = 2;
    auto result = run_experiment(cfg);
    auto [raw_path, agg_path] = emit_csv(result, "sweep_tmp");
    std::ifstream raw(raw_path), agg(agg_path);
    REQUIRE(raw.good());
    REQUIRE(agg.good());
    std::string line;
    std::getline(raw, line);
    CHECK(line == "kind,x,rep,mu_A,mu_B,stages");
    std::getline(agg, line);
    CHECK(line == "kind,x,mean_mu_A,std_mu_A,mean_mu_B,std_mu_B,n");
    std::remove(raw_path.c_str());
    std::remove(agg_path.c_str());
}

TEST_CASE("mean degradation is monotone in x per kind") {
    auto cfg = config_from_json_text(kSmallConfig);
    cfg.x_values = {0, 50, 100, 150, 200};
    cfg.replications = 12;
    auto result = run_experiment(cfg);
    for (AttackKind kind : cfg.attack_kinds) {
        double prev = 2.0;
        for (std::size_t x : cfg.x_values) {
            for (const auto& agg : result.aggregates) {
                if (agg.kind != kind || agg.x != x) continue;
                CHECK(agg.mean_mu_comm <= prev + 0.01);
                prev = agg.mean_mu_comm;
            }
        }
    }
}

TEST_CASE("compare_analytic: baseline and random attack track theory") {
    ExperimentConfig cfg = config_from_json_text(kSmallConfig);
    cfg.comm_recipe.node_count = 10000;
    cfg.comm_recipe.p = 4.0 / 9999.0;  // <k> = 4
    cfg.power_recipe.node_count = 1000;
    cfg.power_recipe.p = 4.0 / 999.0;
    cfg.attack_kinds = {AttackKind::random};
    cfg.x_values = {0, 2000, 4000};
    cfg.replications = 10;

    const auto grid = build_grid(cfg);
    const auto result = run_experiment(cfg);
    const auto rows = compare_analytic(grid, result);
    REQUIRE(rows.size() == 3);
    CHECK(std::abs(rows[0].delta) < 0.01);  // x = 0 baseline
    for (const auto& row : rows) {
        CHECK(std::abs(row.delta) < 0.02);
        CHECK(row.delta == doctest::Approx(row.mu_sim - row.mu_analytic));
    }
}

TEST_CASE("giant_threshold zeroes sub-threshold fractions in reports") {
    auto cfg = config_from_json_text(kSmallConfig);
    cfg.attack_kinds = {AttackKind::targeted};
    cfg.x_values = {0, 240};
    cfg.replications = 4;
    auto raw = run_experiment(cfg);

    cfg.giant_threshold_c = 0.9;
    auto thresholded = run_experiment(cfg);
    REQUIRE(thresholded.rows.size() == raw.rows.size());
    for (std::size_t i = 0; i < raw.rows.size(); ++i) {
        const double expect = raw.rows[i].mu_comm >= 0.9 ? raw.rows[i].mu_comm : 0.0;
        CHECK(thresholded.rows[i].mu_comm == doctest::Approx(expect));
    }
    // the attacked sweep point falls below the cutoff on this grid
    CHECK(thresholded.aggregates[1].mean_mu_comm == doctest::Approx(0.0));

    cfg.giant_threshold_c = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("ER comm variants degrade comparably; SF is the fragile one") {
    // three comm models over the same power side: scale-free, ER p=0.01,
    // ER p=0.005. In the regime before either ER variant reaches its
    // collapse point the two ER curves track each other closely, and both
    // resist targeted attacks far better than the scale-free grid.
    SweepResult results[3];
    for (int model = 0; model < 3; ++model) {
        ExperimentConfig cfg;
        cfg.comm_recipe.node_count = 2000;
        if (model == 0) {
            cfg.comm_recipe.kind = NetworkKind::scale_free;
            cfg.comm_recipe.alpha = 2.5;
            cfg.comm_recipe.min_degree = 2;
        } else {
            cfg.comm_recipe.kind = NetworkKind::erdos_renyi;
            cfg.comm_recipe.p = model == 1 ? 0.01 : 0.005;
        }
        cfg.comm_recipe.seed = 500 + model;
        cfg.power_recipe = cfg.comm_recipe;
        cfg.power_recipe.node_count = 1000;
        cfg.power_recipe.seed = 600 + model;
        cfg.attack_kinds = {AttackKind::targeted, AttackKind::random};
        cfg.x_values = {0, 400, 800, 1200};
        cfg.replications = 10;
        cfg.base_seed = 17;
        results[model] = run_experiment(cfg);
    }
    REQUIRE(results[1].aggregates.size() == results[2].aggregates.size());
    for (std::size_t i = 0; i < results[1].aggregates.size(); ++i) {
        CHECK(std::abs(results[1].aggregates[i].mean_mu_comm -
                       results[2].aggregates[i].mean_mu_comm) <= 0.10);
    }
    // targeted attacks at 20% and 40%: ER keeps a big giant, SF does not
    auto mu_at = [](const SweepResult& r, AttackKind kind, std::size_t x) {
        for (const auto& a : r.aggregates)
            if (a.kind == kind && a.x == x) return a.mean_mu_comm;
        return -1.0;
    };
    for (std::size_t x : {std::size_t{400}, std::size_t{800}}) {
        CHECK(mu_at(results[1], AttackKind::targeted, x) >
              mu_at(results[0], AttackKind::targeted, x) + 0.1);
        CHECK(mu_at(results[2], AttackKind::targeted, x) >
              mu_at(results[0], AttackKind::targeted, x) + 0.1);
    }
}

TEST_CASE("regenerate_grid_per_replication varies the baseline") {
    auto cfg = config_from_json_text(kSmallConfig);
    cfg.x_values = {0};
    cfg.attack_kinds = {AttackKind::random};
    cfg.replications = 6;
    cfg.regenerate_grid_per_replication = true;
    auto result = run_experiment(cfg);
    bool any_differs = false;
    for (const auto& row : result.rows)
        if (row.mu_comm != result.rows[0].mu_comm) any_differs = true;
    CHECK(any_differs);
}
