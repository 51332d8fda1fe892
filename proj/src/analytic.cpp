#include "cgrid/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cgrid {

GenFnSet GenFnSet::plain(DegreeDistribution dist) {
    GenFnSet fns;
    fns.dist_ = std::move(dist);
    return fns;
}

GenFnSet GenFnSet::with_survival_profile(DegreeDistribution dist,
                                         std::vector<double> phi) {
    for (double p : phi)
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("survival profile entries must lie in [0,1]");
    GenFnSet fns;
    fns.dist_ = std::move(dist);
    fns.phi_ = std::move(phi);
    return fns;
}

double GenFnSet::g0(double z) const { return dist_.pgf(z); }

double GenFnSet::g1(double z) const {
    // sum_k q_k z^k with q_k = (k+1) P(k+1) / <k>; an edgeless distribution
    // has no excess-degree series, so treat it as identically zero
    if (dist_.mean_degree() <= 0.0) return 0.0;
    const auto& pmf = dist_.pmf();
    double acc = 0.0;
    for (std::size_t k = pmf.size(); k-- > 1;)
        acc = acc * z + static_cast<double>(k) * pmf[k];
    return acc / dist_.mean_degree();
}

double GenFnSet::f0(double z) const {
    const auto& pmf = dist_.pmf();
    double acc = 0.0;
    for (std::size_t k = pmf.size(); k-- > 0;)
        acc = acc * z + pmf[k] * survival(k);
    return acc;
}

double GenFnSet::f1(double z) const {
    if (dist_.mean_degree() <= 0.0) return 0.0;
    const auto& pmf = dist_.pmf();
    double acc = 0.0;
    for (std::size_t k = pmf.size(); k-- > 1;)
        acc = acc * z + static_cast<double>(k) * pmf[k] * survival(k);
    return acc / dist_.mean_degree();
}

double GenFnSet::f0_prime(double z) const {
    const auto& pmf = dist_.pmf();
    double acc = 0.0;
    for (std::size_t k = pmf.size(); k-- > 1;)
        acc = acc * z + static_cast<double>(k) * pmf[k] * survival(k);
    return acc;
}

GenFnSet GenFnSet::scaled_profile(double factor) const {
    std::vector<double> phi(dist_.pmf().size());
    for (std::size_t k = 0; k < phi.size(); ++k)
        phi[k] = std::clamp(survival(k) * factor, 0.0, 1.0);
    GenFnSet fns;
    fns.dist_ = dist_;
    fns.phi_ = std::move(phi);
    return fns;
}

std::vector<double> targeted_survival_profile_edges(const DegreeDistribution& dist,
                                                    double attack_count,
                                                    double edge_count) {
    if (edge_count <= 0.0)
        throw std::invalid_argument("targeted profile: edge count must be positive");
    std::vector<double> phi(dist.pmf().size());
    for (std::size_t k = 0; k < phi.size(); ++k)
        phi[k] = std::clamp(
            1.0 - attack_count * static_cast<double>(k) / (2.0 * edge_count), 0.0, 1.0);
    return phi;
}

std::vector<double> targeted_survival_profile(const DegreeDistribution& dist,
                                              double attack_count, double node_count) {
    return targeted_survival_profile_edges(dist, attack_count,
                                           dist.mean_degree() * node_count / 2.0);
}

std::vector<double> sequential_attack_profile(const DegreeDistribution& dist,
                                              double attack_count, double node_count) {
    if (node_count <= 0.0)
        throw std::invalid_argument("sequential profile: node count must be positive");
    const auto& pmf = dist.pmf();
    std::vector<double> phi(pmf.size(), 1.0);
    const double weighted_nodes = node_count * (1.0 - dist.p(0));
    if (attack_count >= weighted_nodes) {
        // every positive-degree node goes; the rest is drawn uniformly from
        // the degree-0 pool
        for (std::size_t k = 1; k < phi.size(); ++k) phi[k] = 0.0;
        const double zero_pool = node_count * dist.p(0);
        phi[0] = zero_pool > 0.0
                     ? std::clamp(1.0 - (attack_count - weighted_nodes) / zero_pool,
                                  0.0, 1.0)
                     : 1.0;
        return phi;
    }

    const auto removed_at = [&](double t) {
        double total = 0.0;
        for (std::size_t k = 1; k < pmf.size(); ++k)
            total += node_count * pmf[k] * (1.0 - std::exp(-static_cast<double>(k) * t));
        return total;
    };
    double lo = 0.0, hi = 1.0;
    while (removed_at(hi) < attack_count) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (removed_at(mid) < attack_count ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    for (std::size_t k = 1; k < phi.size(); ++k)
        phi[k] = std::exp(-static_cast<double>(k) * t);
    return phi;
}

namespace {

// monotone iteration from 0 for maps h with h(u) >= 0 and h nondecreasing;
// converges to the smallest fixed point in [0, 1]
double smallest_fixpoint(const std::function<double(double)>& h) {
    double u = 0.0;
    for (long i = 0; i < kFixpointMaxIterations; ++i) {
        const double next = std::min(h(u), 1.0);
        if (std::abs(next - u) < kFixpointTolerance) return next;
        u = next;
    }
    throw numerical_error(
        "fixed-point iteration did not converge within " +
            std::to_string(kFixpointMaxIterations) + " iterations (last u = " +
            std::to_string(u) + ")",
        u);
}

}  // namespace

double solve_u(const GenFnSet& fns, double phi) {
    if (phi < 0.0 || phi > 1.0)
        throw std::invalid_argument("solve_u: phi must lie in [0,1]");
    return smallest_fixpoint([&](double u) { return 1.0 - phi + phi * fns.g1(u); });
}

double giant_random_removal(const GenFnSet& fns, double phi) {
    const double u = solve_u(fns, phi);
    return phi * (1.0 - fns.g0(u));
}

Stage1Result targeted_stage1(const GenFnSet& fns) {
    const double f1_at_1 = fns.f1(1.0);
    Stage1Result res;
    res.u = smallest_fixpoint([&](double u) { return 1.0 - f1_at_1 + fns.f1(u); });
    res.mu = fns.f0(1.0) - fns.f0(res.u);
    return res;
}

double support_fail_fraction(const DegreeDistribution& support_pmf, double mu_other) {
    if (mu_other < 0.0 || mu_other > 1.0)
        throw std::invalid_argument("support_fail_fraction: mu must lie in [0,1]");
    return support_pmf.pgf(1.0 - mu_other);
}

CascadePrediction stage_recursion(const GenFnSet& comm_fns, const GenFnSet& power_fns,
                                  const DegreeDistribution& power_support_pmf) {
    CascadePrediction pred;
    double mu_comm_prev = -1.0, mu_power_prev = -1.0;
    double mu_comm = 0.0, mu_power = 1.0;
    // The support assignment is one shared map: the supporters of a power
    // node are exactly the comm nodes it supplies. Two consequences for the
    // mean-field stages:
    //  - a functional comm node is itself a live supporter of its supplier,
    //    so the supplier can only die of power-side pruning; the supplier
    //    survival factor is the conditional giant membership 1 - g_B0(u_B)
    //    of a power survivor, not the unconditional power fraction;
    //  - a power node's supporters can die of the attack or of comm-side
    //    pruning but never of their own support rule while that power node
    //    stands, so the support-failure fraction uses the attack+pruning
    //    survival nu (profile without the supplier factor, giant membership
    //    from the full percolation), not the full mu_comm.
    // Without both corrections the recursion compounds phantom removals and
    // collapses on low-mean support distributions where the simulation holds.
    double supplier_survival = 1.0;
    int stage = 0;

    while (stage < kMaxPredictionStages) {
        // odd stage: comm side, attack profile scaled by supplier survival
        const GenFnSet stage_fns = comm_fns.scaled_profile(supplier_survival);
        const auto s1 = targeted_stage1(stage_fns);
        mu_comm = s1.mu;
        const double nu_comm =
            std::clamp(comm_fns.f0(1.0) - comm_fns.f0(s1.u), 0.0, 1.0);
        // stage 1 removes the attacked fraction; later odd stages remove the
        // nodes whose supplier fell out of the power giant
        const double r_comm =
            (stage == 0) ? 1.0 - stage_fns.f0(1.0) : 1.0 - supplier_survival;
        ++stage;
        pred.stages.push_back({stage, mu_comm, r_comm});

        // even stage: power side loses nodes whose supporters all failed for
        // external reasons, then percolates as a random removal. The clamp
        // absorbs the ulp of pgf drift at the endpoints.
        const double r_power =
            std::clamp(support_fail_fraction(power_support_pmf, nu_comm), 0.0, 1.0);
        const double phi_power = 1.0 - r_power;
        const double u_power = solve_u(power_fns, phi_power);
        supplier_survival = 1.0 - power_fns.g0(u_power);
        mu_power = phi_power * supplier_survival;
        ++stage;
        pred.stages.push_back({stage, mu_power, r_power});

        if (mu_comm_prev >= 0.0 && std::abs(mu_comm - mu_comm_prev) < kStageTolerance &&
            std::abs(mu_power - mu_power_prev) < kStageTolerance)
            break;
        mu_comm_prev = mu_comm;
        mu_power_prev = mu_power;
    }
    if (stage >= kMaxPredictionStages)
        throw numerical_error("stage recursion did not reach a steady state (last mu = " +
                                  std::to_string(mu_comm) + ")",
                              mu_comm);
    pred.steady_mu_comm = mu_comm;
    pred.steady_mu_power = mu_power;
    pred.iterations = stage;
    return pred;
}

std::size_t critical_attack_size(const std::function<double(std::size_t)>& steady_mu,
                                 std::size_t n, double threshold) {
    if (steady_mu(0) < threshold) return 0;
    std::size_t lo = 0, hi = n;  // steady_mu(lo) >= threshold, steady_mu(n) assumed below
    while (lo + 1 < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (steady_mu(mid) < threshold)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace cgrid
