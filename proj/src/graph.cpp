#include "cgrid/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "cgrid/degree_distribution.hpp"

namespace cgrid {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

Graph::Graph(std::size_t node_count, const EdgeList& edges)
    : adjacency_(node_count), alive_(node_count, 1), alive_count_(node_count) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count)
            throw std::invalid_argument("edge endpoint out of range: " +
                                        std::to_string(u) + "-" + std::to_string(v));
        if (u == v)
            throw std::invalid_argument("self-loop at node " + std::to_string(u));
        if (!seen.insert(edge_key(u, v)).second)
            throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" +
                                        std::to_string(v));
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    edge_count_ = edges.size();
}

std::size_t Graph::alive_degree(NodeId v) const {
    if (!is_alive(v)) return 0;
    std::size_t d = 0;
    for (NodeId w : adjacency_[v])
        if (is_alive(w)) ++d;
    return d;
}

void Graph::kill(NodeId v) {
    if (v >= node_count())
        throw std::invalid_argument("kill: node out of range");
    if (!alive_[v])
        throw std::invalid_argument("kill: node " + std::to_string(v) + " already dead");
    alive_[v] = 0;
    --alive_count_;
}

void Graph::revive_all() {
    std::fill(alive_.begin(), alive_.end(), std::uint8_t{1});
    alive_count_ = node_count();
}

EdgeList Graph::edges() const {
    EdgeList out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u)
        for (NodeId v : adjacency_[u])
            if (u < v) out.emplace_back(u, v);
    std::sort(out.begin(), out.end());
    return out;
}

ComponentLabeling largest_component(const Graph& g) {
    const std::size_t n = g.node_count();
    ComponentLabeling lab;
    lab.component_id.assign(n, ComponentLabeling::kNone);

    std::vector<NodeId> queue;
    queue.reserve(n);
    for (NodeId seed = 0; seed < n; ++seed) {
        if (!g.is_alive(seed) || lab.component_id[seed] != ComponentLabeling::kNone)
            continue;
        const auto label = static_cast<std::uint32_t>(lab.component_sizes.size());
        std::size_t size = 0;
        queue.clear();
        queue.push_back(seed);
        lab.component_id[seed] = label;
        while (!queue.empty()) {
            const NodeId v = queue.back();
            queue.pop_back();
            ++size;
            for (NodeId w : g.neighbors(v)) {
                if (g.is_alive(w) && lab.component_id[w] == ComponentLabeling::kNone) {
                    lab.component_id[w] = label;
                    queue.push_back(w);
                }
            }
        }
        lab.component_sizes.push_back(size);
        // strict > keeps the earliest label on ties; labels are assigned in
        // order of lowest contained node index
        if (size > lab.largest_size) {
            lab.largest_size = size;
            lab.largest_label = label;
        }
    }
    return lab;
}

double giant_fraction(const Graph& g, std::size_t base_count) {
    if (base_count == 0)
        throw std::invalid_argument("giant_fraction: base_count must be positive");
    return static_cast<double>(largest_component(g).largest_size) /
           static_cast<double>(base_count);
}

DegreeDistribution degree_distribution(const Graph& g) {
    if (g.alive_count() == 0)
        throw std::invalid_argument("degree_distribution: no alive nodes");
    std::vector<std::size_t> counts;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!g.is_alive(v)) continue;
        const std::size_t d = g.alive_degree(v);
        if (d >= counts.size()) counts.resize(d + 1, 0);
        ++counts[d];
    }
    return DegreeDistribution::from_counts(counts);
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t node_count = 0;
    bool have_header = false;
    EdgeList edges;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string tag;
            ls >> tag >> node_count;
            if (tag != "n" || ls.fail())
                throw std::runtime_error("edge list line " + std::to_string(lineno) +
                                         ": expected header 'n <node_count>'");
            have_header = true;
            continue;
        }
        std::uint64_t u, v;
        ls >> u >> v;
        if (ls.fail())
            throw std::runtime_error("edge list line " + std::to_string(lineno) +
                                     ": expected 'u v'");
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    if (!have_header)
        throw std::runtime_error("edge list: missing 'n <node_count>' header");
    return Graph(node_count, edges);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open edge list: " + path);
    try {
        return read_edge_list(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << "n " << g.node_count() << "\n";
    for (const auto& [u, v] : g.edges())
        out << u << " " << v << "\n";
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write edge list: " + path);
    write_edge_list(g, out);
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

}  // namespace cgrid
