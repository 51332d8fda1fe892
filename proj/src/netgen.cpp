#include "cgrid/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "cgrid/degree_distribution.hpp"
#include "cgrid/rng.hpp"

namespace cgrid {

const char* to_string(NetworkKind kind) {
    switch (kind) {
        case NetworkKind::scale_free: return "scale_free";
        case NetworkKind::erdos_renyi: return "erdos_renyi";
        case NetworkKind::barabasi_albert: return "barabasi_albert";
    }
    return "?";
}

NetworkKind network_kind_from_string(const std::string& s) {
    if (s == "scale_free" || s == "sf") return NetworkKind::scale_free;
    if (s == "erdos_renyi" || s == "er") return NetworkKind::erdos_renyi;
    if (s == "barabasi_albert" || s == "ba") return NetworkKind::barabasi_albert;
    throw std::invalid_argument("unknown network kind: " + s);
}

void NetworkRecipe::validate() const {
    if (node_count == 0)
        throw std::invalid_argument("recipe: node_count must be positive");
    switch (kind) {
        case NetworkKind::scale_free: {
            if (alpha <= 1.0)
                throw std::invalid_argument("recipe: alpha must exceed 1");
            if (min_degree < 1)
                throw std::invalid_argument("recipe: min_degree must be >= 1");
            const std::size_t kmax =
                max_degree ? max_degree
                           : static_cast<std::size_t>(std::floor(std::sqrt(
                                 static_cast<double>(node_count))));
            if (kmax < min_degree || kmax >= node_count)
                throw std::invalid_argument("recipe: degree bounds infeasible");
            break;
        }
        case NetworkKind::erdos_renyi:
            if (!(p > 0.0) || p > 1.0)
                throw std::invalid_argument("recipe: p must lie in (0, 1]");
            break;
        case NetworkKind::barabasi_albert:
            if (min_degree < 1 || min_degree >= node_count)
                throw std::invalid_argument("recipe: min_degree infeasible for BA");
            break;
    }
}

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Degree sampler for P(k) ~ k^-alpha on [kmin, kmax]: inverse CDF lookup.
class PowerLawSampler {
public:
    PowerLawSampler(std::size_t kmin, std::size_t kmax, double alpha) : kmin_(kmin) {
        cumulative_.reserve(kmax - kmin + 1);
        double sum = 0.0;
        for (std::size_t k = kmin; k <= kmax; ++k) {
            sum += std::pow(static_cast<double>(k), -alpha);
            cumulative_.push_back(sum);
        }
        for (double& c : cumulative_) c /= sum;
        cumulative_.back() = 1.0;
    }

    std::size_t draw(Rng& rng) const {
        const double u = rng.uniform01();
        const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
        return kmin_ + static_cast<std::size_t>(it - cumulative_.begin());
    }

private:
    std::size_t kmin_;
    std::vector<double> cumulative_;
};

// Stub-matching configuration model. Colliding pairs (self-loops and
// duplicates) are repaired by swapping against randomly chosen good edges,
// which preserves the degree sequence exactly. A full reshuffle is the
// fallback when a pair resists repair.
Graph configuration_model(const std::vector<std::size_t>& degrees, Rng& rng) {
    const std::size_t n = degrees.size();
    std::vector<NodeId> stubs;
    for (NodeId v = 0; v < n; ++v)
        stubs.insert(stubs.end(), degrees[v], v);
    if (stubs.size() % 2 != 0)
        throw generation_error("configuration model: odd total degree");

    constexpr int kMaxReshuffles = 60;
    constexpr int kSwapTriesPerPair = 400;

    for (int attempt = 0; attempt < kMaxReshuffles; ++attempt) {
        // Fisher-Yates
        for (std::size_t i = stubs.size(); i > 1; --i)
            std::swap(stubs[i - 1], stubs[rng.uniform_below(i)]);

        std::unordered_set<std::uint64_t> seen;
        seen.reserve(stubs.size());
        EdgeList good;
        good.reserve(stubs.size() / 2);
        EdgeList bad;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            const NodeId u = stubs[i], v = stubs[i + 1];
            if (u != v && seen.insert(edge_key(u, v)).second)
                good.emplace_back(u, v);
            else
                bad.emplace_back(u, v);
        }

        bool repaired = true;
        for (const auto& [u, v] : bad) {
            bool placed = false;
            for (int t = 0; t < kSwapTriesPerPair && !placed; ++t) {
                const std::size_t j = rng.uniform_below(good.size());
                const auto [x, y] = good[j];
                // rewire (u,v) + (x,y) into (u,x) + (v,y)
                if (u == x || v == y) continue;
                const auto k1 = edge_key(u, x), k2 = edge_key(v, y);
                if (k1 == k2 || seen.count(k1) || seen.count(k2)) continue;
                seen.erase(edge_key(x, y));
                seen.insert(k1);
                seen.insert(k2);
                good[j] = {u, x};
                good.emplace_back(v, y);
                placed = true;
            }
            if (!placed) {
                repaired = false;
                break;
            }
        }
        if (repaired) return Graph(n, good);
    }
    throw generation_error("configuration model: no simple wiring found after " +
                           std::to_string(kMaxReshuffles) + " reshuffles");
}

Graph generate_scale_free(const NetworkRecipe& r, Rng& rng) {
    const std::size_t kmax =
        r.max_degree ? r.max_degree
                     : static_cast<std::size_t>(
                           std::floor(std::sqrt(static_cast<double>(r.node_count))));
    const PowerLawSampler sampler(r.min_degree, kmax, r.alpha);

    std::vector<std::size_t> degrees(r.node_count);
    std::size_t total = 0;
    for (auto& d : degrees) {
        d = sampler.draw(rng);
        total += d;
    }
    // configuration model needs an even stub count; resample single nodes
    // until parity flips
    int parity_tries = 0;
    while (total % 2 != 0) {
        if (++parity_tries > 10000)
            throw generation_error("scale-free degrees: could not reach even sum");
        const std::size_t i = rng.uniform_below(r.node_count);
        total -= degrees[i];
        degrees[i] = sampler.draw(rng);
        total += degrees[i];
    }
    return configuration_model(degrees, rng);
}

Graph generate_erdos_renyi(const NetworkRecipe& r, Rng& rng) {
    const std::size_t n = r.node_count;
    EdgeList edges;
    if (r.p >= 1.0) {
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        return Graph(n, edges);
    }
    // skip-sampling over the C(n,2) pair indices: geometric gaps between
    // successive included pairs (Batagelj-Brandes)
    const double log_q = std::log1p(-r.p);
    const double total_pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    edges.reserve(static_cast<std::size_t>(total_pairs * r.p * 1.1) + 16);
    std::uint64_t u = 1, v = 0;  // current row/col in the lower triangle
    std::uint64_t idx = 0;
    const std::uint64_t last = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    while (true) {
        double draw = rng.uniform01();
        const double g = std::floor(std::log1p(-draw) / log_q);
        idx += static_cast<std::uint64_t>(g) + 1;
        if (idx > last) break;
        // advance (u, v) to the 0-based pair number idx-1 in v < u order
        const std::uint64_t remaining = idx - 1;
        while (remaining >= (static_cast<std::uint64_t>(u) * (u + 1)) / 2) ++u;
        v = remaining - (static_cast<std::uint64_t>(u) * (u - 1)) / 2;
        edges.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(u));
    }
    return Graph(n, edges);
}

Graph generate_barabasi_albert(const NetworkRecipe& r, Rng& rng) {
    const std::size_t n = r.node_count;
    const std::size_t m = r.min_degree;
    EdgeList edges;
    std::vector<NodeId> endpoint_pool;  // repeated endpoints, degree-proportional

    // seed: clique on m+1 nodes
    const std::size_t seed_n = std::min(n, m + 1);
    for (NodeId u = 0; u < seed_n; ++u)
        for (NodeId v = u + 1; v < seed_n; ++v) {
            edges.emplace_back(u, v);
            endpoint_pool.push_back(u);
            endpoint_pool.push_back(v);
        }

    std::unordered_set<NodeId> targets;
    for (NodeId w = static_cast<NodeId>(seed_n); w < n; ++w) {
        targets.clear();
        while (targets.size() < m)
            targets.insert(endpoint_pool[rng.uniform_below(endpoint_pool.size())]);
        for (NodeId t : targets) {
            edges.emplace_back(w, t);
            endpoint_pool.push_back(w);
            endpoint_pool.push_back(t);
        }
    }
    return Graph(n, edges);
}

}  // namespace

Graph generate_network(const NetworkRecipe& recipe) {
    recipe.validate();
    Rng rng(recipe.seed);
    switch (recipe.kind) {
        case NetworkKind::scale_free: return generate_scale_free(recipe, rng);
        case NetworkKind::erdos_renyi: return generate_erdos_renyi(recipe, rng);
        case NetworkKind::barabasi_albert: return generate_barabasi_albert(recipe, rng);
    }
    throw std::logic_error("unreachable");
}

void InterdependentGrid::check_consistent() const {
    if (support_of_comm.size() != comm.node_count() ||
        supporters_of_power.size() != power.node_count())
        throw std::logic_error("grid: support map sizes disagree with graphs");
    std::size_t total = 0;
    for (NodeId b = 0; b < supporters_of_power.size(); ++b) {
        for (NodeId a : supporters_of_power[b]) {
            if (a >= support_of_comm.size() || support_of_comm[a] != b)
                throw std::logic_error("grid: support maps inconsistent");
            ++total;
        }
    }
    if (total != comm.node_count())
        throw std::logic_error("grid: supporter lists do not cover every comm node");
}

InterdependentGrid assign_support_links(Graph comm, Graph power, std::uint64_t seed) {
    if (comm.node_count() == 0 || power.node_count() == 0)
        throw std::invalid_argument("assign_support_links: both graphs must be nonempty");
    InterdependentGrid grid;
    grid.support_of_comm.resize(comm.node_count());
    grid.supporters_of_power.resize(power.node_count());
    Rng rng(seed);
    for (NodeId a = 0; a < comm.node_count(); ++a) {
        const auto b = static_cast<NodeId>(rng.uniform_below(power.node_count()));
        grid.support_of_comm[a] = b;
        grid.supporters_of_power[b].push_back(a);
    }
    grid.comm = std::move(comm);
    grid.power = std::move(power);
    return grid;
}

DegreeDistribution support_degree_distribution(const InterdependentGrid& grid) {
    std::vector<std::size_t> counts;
    for (const auto& supporters : grid.supporters_of_power) {
        const std::size_t k = supporters.size();
        if (k >= counts.size()) counts.resize(k + 1, 0);
        ++counts[k];
    }
    return DegreeDistribution::from_counts(counts);
}

void save_grid(const InterdependentGrid& grid, const std::string& comm_path,
               const std::string& power_path, const std::string& links_path) {
    save_edge_list(grid.comm, comm_path);
    save_edge_list(grid.power, power_path);
    std::ofstream out(links_path);
    if (!out)
        throw std::runtime_error("cannot write interlink file: " + links_path);
    for (NodeId a = 0; a < grid.support_of_comm.size(); ++a)
        out << a << " " << grid.support_of_comm[a] << "\n";
    if (!out)
        throw std::runtime_error("write failed: " + links_path);
}

InterdependentGrid load_grid(const std::string& comm_path,
                             const std::string& power_path,
                             const std::string& links_path) {
    InterdependentGrid grid;
    grid.comm = load_edge_list(comm_path);
    grid.power = load_edge_list(power_path);
    grid.support_of_comm.assign(grid.comm.node_count(), 0);
    grid.supporters_of_power.resize(grid.power.node_count());
    std::vector<bool> assigned(grid.comm.node_count(), false);

    std::ifstream in(links_path);
    if (!in)
        throw std::runtime_error("cannot open interlink file: " + links_path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::uint64_t a, b;
        ls >> a >> b;
        if (ls.fail() || a >= grid.comm.node_count() || b >= grid.power.node_count())
            throw std::runtime_error(links_path + " line " + std::to_string(lineno) +
                                     ": bad interlink");
        if (assigned[a])
            throw std::runtime_error(links_path + " line " + std::to_string(lineno) +
                                     ": comm node assigned twice");
        assigned[a] = true;
        grid.support_of_comm[a] = static_cast<NodeId>(b);
        grid.supporters_of_power[b].push_back(static_cast<NodeId>(a));
    }
    for (std::size_t a = 0; a < assigned.size(); ++a)
        if (!assigned[a])
            throw std::runtime_error(links_path + ": comm node " + std::to_string(a) +
                                     " has no supporter");
    grid.check_consistent();
    return grid;
}

}  // namespace cgrid
