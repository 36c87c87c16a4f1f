#include "fogcache/model.hpp"

#include <algorithm>
#include <cmath>

#include "fogcache/random.hpp"

namespace fogcache {

const Scenario& validate_scenario(const Scenario& s) {
    auto fail = [](const std::string& what) { throw ValidationError(what); };
    if (s.M < 1) fail("M must be at least 1");
    if (s.F < 1) fail("F must be at least 1");
    if (s.K < 1) fail("K must be at least 1");
    if (s.K > s.F) fail("K exceeds F");
    if (!(s.L > 0.0) || !std::isfinite(s.L)) fail("L must be positive");
    if (static_cast<int>(s.positions.size()) != s.M) fail("positions length mismatch");
    if (static_cast<int>(s.rates.size()) != s.M) fail("rates length mismatch");
    for (const auto& p : s.positions) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail("positions must be finite");
    }
    for (double r : s.rates) {
        if (!(r > 0.0) || !std::isfinite(r)) fail("rates must be positive");
    }
    if (!(s.gamma_d >= 0.0)) fail("gamma_d must be non-negative");
    if (!(s.gamma_l >= 0.0)) fail("gamma_l must be non-negative");
    if (!(s.zipf_z >= 0.0) || !std::isfinite(s.zipf_z)) fail("zipf_z must be non-negative");
    if (s.cluster_size_cap < 2) fail("cluster_size_cap must be at least 2");
    if (!(s.locality >= 0.0 && s.locality <= 1.0)) fail("locality must lie in [0, 1]");
    return s;
}

double distance(const Scenario& s, NodeId a, NodeId b) {
    const auto& pa = s.positions.at(a);
    const auto& pb = s.positions.at(b);
    return std::hypot(pa.x - pb.x, pa.y - pb.y);
}

bool can_cooperate(const Scenario& s, NodeId a, NodeId b) {
    if (a < 0 || b < 0 || a >= s.M || b >= s.M) throw std::out_of_range("node id out of range");
    if (a == b) throw std::invalid_argument("a node does not cooperate with itself");
    const double load_diff = std::abs(s.rates[a] - s.rates[b]);
    return distance(s, a, b) <= s.gamma_d && load_diff >= s.gamma_l;
}

std::size_t NodeGraph::num_edges() const {
    std::size_t deg = 0;
    for (const auto& nb : adjacency) deg += nb.size();
    return deg / 2;
}

bool NodeGraph::adjacent(NodeId a, NodeId b) const {
    const auto& nb = adjacency.at(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<std::pair<NodeId, NodeId>> NodeGraph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId m = 0; m < num_vertices; ++m) {
        for (NodeId n : adjacency[m]) {
            if (n > m) out.emplace_back(m, n);
        }
    }
    return out;
}

NodeGraph NodeGraph::empty(int n) {
    NodeGraph g;
    g.num_vertices = n;
    g.adjacency.assign(n, {});
    return g;
}

NodeGraph NodeGraph::from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    NodeGraph g = empty(n);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n) throw std::out_of_range("edge endpoint out of range");
        if (a == b) throw std::invalid_argument("self-loop");
        g.adjacency[a].push_back(b);
        g.adjacency[b].push_back(a);
    }
    for (auto& nb : g.adjacency) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return g;
}

NodeGraph build_node_graph(const Scenario& s) {
    validate_scenario(s);
    NodeGraph g = NodeGraph::empty(s.M);
    for (NodeId a = 0; a < s.M; ++a) {
        for (NodeId b = a + 1; b < s.M; ++b) {
            if (can_cooperate(s, a, b)) {
                g.adjacency[a].push_back(b);
                g.adjacency[b].push_back(a);
            }
        }
    }
    // Pairs are visited in increasing order, so each list is already sorted.
    return g;
}

Scenario generate_scenario(const GeneratorConfig& cfg, std::uint64_t seed) {
    if (cfg.M < 1) throw ValidationError("M must be at least 1");
    if (!(cfg.area_side >= 0.0)) throw ValidationError("area_side must be non-negative");
    if (!(cfg.rate_min > 0.0) || !(cfg.rate_max >= cfg.rate_min))
        throw ValidationError("rate interval must satisfy 0 < rate_min <= rate_max");

    Scenario s;
    s.M = cfg.M;
    s.F = cfg.F;
    s.K = cfg.K;
    s.L = cfg.L;
    s.gamma_d = cfg.gamma_d;
    s.gamma_l = cfg.gamma_l;
    s.zipf_z = cfg.zipf_z;
    s.seed = seed;
    s.cluster_size_cap = cfg.cluster_size_cap;
    s.locality = cfg.locality;

    auto rng = make_rng(seed, Stream::Geometry);
    s.positions.reserve(cfg.M);
    s.rates.reserve(cfg.M);
    for (int m = 0; m < cfg.M; ++m) {
        const double x = uniform_real(rng, 0.0, cfg.area_side);
        const double y = uniform_real(rng, 0.0, cfg.area_side);
        s.positions.push_back({x, y});
    }
    for (int m = 0; m < cfg.M; ++m) {
        s.rates.push_back(uniform_real(rng, cfg.rate_min, cfg.rate_max));
    }
    return validate_scenario(s);
}

}  // namespace fogcache
