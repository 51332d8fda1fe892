#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "cgrid/degree_distribution.hpp"

namespace cgrid {

struct numerical_error : std::runtime_error {
    numerical_error(const std::string& what, double last)
        : std::runtime_error(what), last_iterate(last) {}
    double last_iterate;
};

// Degree-distribution generating functions, optionally weighted by a
// per-degree survival profile phi_k:
//   g0(z) = sum_k P(k) z^k          g1(z) = sum_k q_k z^k,  q_k = (k+1)P(k+1)/<k>
//   f0(z) = sum_k P(k) phi_k z^k    f1(z) = sum_k q_k phi_{k+1} z^k = f0'(z)/g0'(1)
class GenFnSet {
public:
    static GenFnSet plain(DegreeDistribution dist);

    // phi[k] is the survival probability of a degree-k node; entries beyond
    // the profile default to 1. Values must lie in [0, 1].
    static GenFnSet with_survival_profile(DegreeDistribution dist,
                                          std::vector<double> phi);

    double g0(double z) const;
    double g1(double z) const;
    double f0(double z) const;
    double f1(double z) const;
    double f0_prime(double z) const;

    double mean_degree() const { return dist_.mean_degree(); }
    const DegreeDistribution& dist() const { return dist_; }
    double survival(std::size_t k) const {
        return k < phi_.size() ? phi_[k] : 1.0;
    }
    bool has_profile() const { return !phi_.empty(); }

    // same distribution with every phi_k multiplied by `factor` (clamped to
    // [0,1]); used by the stage recursion to fold in support survival
    GenFnSet scaled_profile(double factor) const;

private:
    DegreeDistribution dist_;
    std::vector<double> phi_;
};

// Survival profile of a degree-proportional attack of `attack_count` nodes,
// first-order form: phi_k = 1 - attack_count * k / (2m), clamped to [0, 1],
// with 2m = node_count * mean_degree unless an explicit edge count is given.
// Accurate for attack_count * k << 2m; overshoots on hubs for large attacks.
std::vector<double> targeted_survival_profile(const DegreeDistribution& dist,
                                              double attack_count,
                                              double node_count);
std::vector<double> targeted_survival_profile_edges(const DegreeDistribution& dist,
                                                    double attack_count,
                                                    double edge_count);

// Inclusion probabilities of sequential degree-weighted sampling without
// replacement (exponential-clock representation): phi_k = exp(-k T) with T
// solving sum_k n P(k) (1 - e^{-kT}) = attack_count. Once every
// positive-degree node is exhausted the remainder falls uniformly on
// degree-0 nodes, mirroring the sampler. Use this profile when comparing
// against the sequential targeted sampler.
std::vector<double> sequential_attack_profile(const DegreeDistribution& dist,
                                              double attack_count,
                                              double node_count);

inline constexpr double kFixpointTolerance = 1e-12;
inline constexpr long kFixpointMaxIterations = 1'000'000;

// Smallest fixed point of u = 1 - phi + phi*g1(u) in [0,1], by monotone
// iteration from u = 0. Returns 1 when no nontrivial fixed point exists.
// Throws numerical_error if the iteration fails to settle.
double solve_u(const GenFnSet& fns, double phi);

// Giant-component fraction phi * (1 - g0(u)) after uniform random removal
// leaving a phi fraction of nodes.
double giant_random_removal(const GenFnSet& fns, double phi);

struct Stage1Result {
    double mu = 0.0;
    double u = 1.0;
};

// Giant-component fraction immediately after a degree-profiled attack:
// u = smallest fixed point of 1 - f1(1) + f1(u), mu = f0(1) - f0(u).
// With a constant profile this reduces exactly to giant_random_removal.
Stage1Result targeted_stage1(const GenFnSet& fns);

// Fraction of nodes whose every supporter lies outside the functional set:
// sum_k P(k) (1 - mu_other)^k, the support PGF at 1 - mu_other.
double support_fail_fraction(const DegreeDistribution& support_pmf, double mu_other);

struct PredictedStage {
    int stage = 0;  // odd = comm, even = power
    double mu = 0.0;
    double removed_fraction = 0.0;
};

struct CascadePrediction {
    std::vector<PredictedStage> stages;
    double steady_mu_comm = 0.0;
    double steady_mu_power = 0.0;
    int iterations = 0;
};

inline constexpr double kStageTolerance = 1e-10;
inline constexpr int kMaxPredictionStages = 10'000;

// Stage recursion to steady state. comm_fns carries the attack profile
// (all-ones for no attack); every comm node has exactly one supplier, so the
// comm-side support failure fraction is 1 - mu_power. Odd stages evaluate
// the profiled fixed point with the profile scaled by the surviving support
// fraction; even stages remove the unsupported fraction and percolate the
// power side. Throws numerical_error when the stage cap is hit.
CascadePrediction stage_recursion(const GenFnSet& comm_fns, const GenFnSet& power_fns,
                                  const DegreeDistribution& power_support_pmf);

// Smallest x in [0, n] with steady_mu(x) < threshold, by bisection;
// steady_mu must be non-increasing in x.
std::size_t critical_attack_size(const std::function<double(std::size_t)>& steady_mu,
                                 std::size_t n, double threshold = 0.01);

}  // namespace cgrid
