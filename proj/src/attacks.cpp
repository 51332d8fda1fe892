#include "cgrid/attacks.hpp"

#include <algorithm>
#include <stdexcept>

#include "cgrid/rng.hpp"

namespace cgrid {

const char* to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::random: return "random";
        case AttackKind::targeted: return "targeted";
        case AttackKind::mixed: return "mixed";
    }
    return "?";
}

AttackKind attack_kind_from_string(const std::string& s) {
    if (s == "random") return AttackKind::random;
    if (s == "targeted") return AttackKind::targeted;
    if (s == "mixed") return AttackKind::mixed;
    throw std::invalid_argument("unknown attack kind: " + s);
}

namespace {

// Fenwick tree over per-node weights; supports prefix-sum search for
// weighted picks and zeroing a picked node's weight.
class FenwickSampler {
public:
    explicit FenwickSampler(std::vector<double> weights)
        : weight_(std::move(weights)), tree_(weight_.size() + 1, 0.0) {
        for (std::size_t i = 0; i < weight_.size(); ++i) {
            total_ += weight_[i];
            std::size_t pos = i + 1;
            tree_[pos] += weight_[i];
            const std::size_t parent = pos + (pos & (~pos + 1));
            if (parent < tree_.size()) tree_[parent] += tree_[pos];
        }
    }

    double total() const { return total_; }

    // index with smallest prefix sum exceeding `target` (0 <= target < total)
    std::size_t find(double target) const {
        std::size_t pos = 0;
        std::size_t mask = 1;
        while (mask * 2 <= weight_.size()) mask *= 2;
        for (; mask > 0; mask /= 2) {
            const std::size_t next = pos + mask;
            if (next < tree_.size() && tree_[next] <= target) {
                target -= tree_[next];
                pos = next;
            }
        }
        return pos;  // 0-based index
    }

    void remove(std::size_t i) {
        const double w = weight_[i];
        weight_[i] = 0.0;
        total_ -= w;
        for (std::size_t pos = i + 1; pos < tree_.size(); pos += pos & (~pos + 1))
            tree_[pos] -= w;
    }

    double weight(std::size_t i) const { return weight_[i]; }

private:
    std::vector<double> weight_;
    std::vector<double> tree_;
    double total_ = 0.0;
};

void check_count(const Graph& g, const AttackSpec& spec) {
    if (spec.count > g.alive_count())
        throw std::invalid_argument("attack count " + std::to_string(spec.count) +
                                    " exceeds alive node count " +
                                    std::to_string(g.alive_count()));
}

std::vector<NodeId> alive_nodes(const Graph& g) {
    std::vector<NodeId> nodes;
    nodes.reserve(g.alive_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (g.is_alive(v)) nodes.push_back(v);
    return nodes;
}

// partial Fisher-Yates over `pool`, appending picks to `out`
void draw_uniform(std::vector<NodeId>& pool, std::size_t count, Rng& rng,
                  AttackResult& out) {
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.uniform_below(pool.size() - i);
        std::swap(pool[i], pool[j]);
        out.attacked.push_back(pool[i]);
        out.weights_used.push_back(1.0);
    }
    pool.erase(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
}

// sequential degree-proportional picks; falls back to uniform picks over the
// zero-weight remainder once total weight is gone
void draw_targeted(const Graph& g, std::vector<NodeId>& pool, std::size_t count,
                   Rng& rng, AttackResult& out) {
    std::vector<double> weights(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
        weights[i] = static_cast<double>(g.alive_degree(pool[i]));
    FenwickSampler sampler(std::move(weights));

    std::vector<bool> picked(pool.size(), false);
    std::size_t drawn = 0;
    while (drawn < count && sampler.total() > 1e-12) {
        const double target = rng.uniform01() * sampler.total();
        const std::size_t i = sampler.find(target);
        if (i >= picked.size() || picked[i] || sampler.weight(i) <= 0.0)
            continue;  // fp boundary; redraw
        picked[i] = true;
        out.attacked.push_back(pool[i]);
        out.weights_used.push_back(sampler.weight(i));
        sampler.remove(i);
        ++drawn;
    }
    // compact the pool, then top up uniformly (only zero-degree nodes remain
    // unpicked when the loop above ran out of weight)
    std::vector<NodeId> rest;
    rest.reserve(pool.size() - drawn);
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (!picked[i]) rest.push_back(pool[i]);
    pool = std::move(rest);
    if (drawn < count) {
        AttackResult uniform_part;
        draw_uniform(pool, count - drawn, rng, uniform_part);
        for (std::size_t i = 0; i < uniform_part.attacked.size(); ++i) {
            out.attacked.push_back(uniform_part.attacked[i]);
            out.weights_used.push_back(0.0);
        }
    }
}

}  // namespace

AttackResult sample_random(const Graph& g, const AttackSpec& spec) {
    check_count(g, spec);
    AttackResult out;
    Rng rng(spec.seed);
    auto pool = alive_nodes(g);
    draw_uniform(pool, spec.count, rng, out);
    return out;
}

AttackResult sample_targeted(const Graph& g, const AttackSpec& spec) {
    check_count(g, spec);
    AttackResult out;
    Rng rng(spec.seed);
    auto pool = alive_nodes(g);
    draw_targeted(g, pool, spec.count, rng, out);
    return out;
}

AttackResult sample_mixed(const Graph& g, const AttackSpec& spec) {
    check_count(g, spec);
    AttackResult out;
    Rng rng(spec.seed);
    auto pool = alive_nodes(g);
    const std::size_t targeted_half = spec.count - spec.count / 2;  // odd -> targeted
    draw_targeted(g, pool, targeted_half, rng, out);
    draw_uniform(pool, spec.count / 2, rng, out);
    return out;
}

AttackResult sample_attack(const Graph& g, const AttackSpec& spec) {
    switch (spec.kind) {
        case AttackKind::random: return sample_random(g, spec);
        case AttackKind::targeted: return sample_targeted(g, spec);
        case AttackKind::mixed: return sample_mixed(g, spec);
    }
    throw std::logic_error("unreachable");
}

}  // namespace cgrid
