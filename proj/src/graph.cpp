#include "fogcache/graph.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

namespace fogcache {

std::vector<AdjacencyTable> adjacency_tables(const NodeGraph& g) {
    std::vector<AdjacencyTable> tables;
    tables.reserve(g.num_vertices);
    for (NodeId m = 0; m < g.num_vertices; ++m) {
        AdjacencyTable t;
        t.owner = m;
        t.members.push_back(m);
        for (NodeId n : g.adjacency[m]) {
            if (n > m) t.members.push_back(n);
        }
        tables.push_back(std::move(t));
    }
    return tables;
}

namespace {

class CliqueSearch {
public:
    explicit CliqueSearch(const NodeGraph& g) : g_(g), adj_(g.num_vertices, std::vector<char>(g.num_vertices, 0)) {
        for (NodeId m = 0; m < g.num_vertices; ++m) {
            for (NodeId n : g.adjacency[m]) adj_[m][n] = 1;
        }
    }

    void search_table(const AdjacencyTable& table) {
        const NodeId owner = table.owner;
        std::vector<NodeId> candidates(table.members.begin() + 1, table.members.end());
        std::vector<NodeId> excluded;
        for (NodeId n : g_.adjacency[owner]) {
            if (n < owner) excluded.push_back(n);
        }
        std::vector<NodeId> clique{owner};
        expand(clique, candidates, excluded);
    }

    std::vector<VertexSet> take() {
        std::sort(found_.begin(), found_.end());
        return std::move(found_);
    }

private:
    std::vector<NodeId> restrict_to_neighbours(const std::vector<NodeId>& set, NodeId v) const {
        std::vector<NodeId> out;
        for (NodeId u : set) {
            if (adj_[v][u]) out.push_back(u);
        }
        return out;
    }

    void expand(std::vector<NodeId>& clique, std::vector<NodeId> candidates, std::vector<NodeId> excluded) {
        if (candidates.empty()) {
            if (excluded.empty() && clique.size() >= 2) {
                VertexSet c = clique;
                std::sort(c.begin(), c.end());
                found_.push_back(std::move(c));
            }
            return;
        }
        // Tomita pivot: the vertex covering most candidates.
        NodeId pivot = candidates.front();
        std::size_t best = 0;
        for (const auto* pool : {&candidates, &excluded}) {
            for (NodeId u : *pool) {
                std::size_t cover = 0;
                for (NodeId v : candidates) cover += adj_[u][v];
                if (cover > best || (cover == best && u < pivot)) {
                    best = cover;
                    pivot = u;
                }
            }
        }
        std::vector<NodeId> branch;
        for (NodeId v : candidates) {
            if (!adj_[pivot][v]) branch.push_back(v);
        }
        for (NodeId v : branch) {
            clique.push_back(v);
            expand(clique, restrict_to_neighbours(candidates, v), restrict_to_neighbours(excluded, v));
            clique.pop_back();
            candidates.erase(std::find(candidates.begin(), candidates.end(), v));
            excluded.push_back(v);
        }
    }

    const NodeGraph& g_;
    std::vector<std::vector<char>> adj_;
    std::vector<VertexSet> found_;
};

}  // namespace

std::vector<VertexSet> maximal_cliques(const NodeGraph& g) {
    CliqueSearch search(g);
    for (const auto& table : adjacency_tables(g)) {
        // A table of size 1 can only produce a singleton.
        if (table.size() < 2) continue;
        search.search_table(table);
    }
    return search.take();
}

std::vector<VertexSet> enumerate_complete_subgraphs(const std::vector<VertexSet>& cliques, int cap) {
    if (cap < 2) throw std::invalid_argument("cluster size cap must be at least 2");
    std::set<VertexSet> seen;
    VertexSet pick;
    for (const auto& clique : cliques) {
        const int n = static_cast<int>(clique.size());
        const int top = std::min(n, cap);
        // Grow subsets in index order; every prefix of size >= 2 is emitted.
        auto rec = [&](auto&& self, int start) -> void {
            if (pick.size() >= 2) seen.insert(pick);
            if (static_cast<int>(pick.size()) == top) return;
            for (int i = start; i < n; ++i) {
                pick.push_back(clique[i]);
                self(self, i + 1);
                pick.pop_back();
            }
        };
        rec(rec, 0);
    }
    std::vector<VertexSet> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) { return a.size() < b.size(); });
    return out;
}

bool WeightedGraph::adjacent(int a, int b) const {
    const auto& nb = adjacency.at(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::size_t WeightedGraph::num_edges() const {
    std::size_t deg = 0;
    for (const auto& nb : adjacency) deg += nb.size();
    return deg / 2;
}

WeightedGraph build_weighted_graph(const std::vector<VertexSet>& candidates, const std::vector<double>& weights) {
    if (candidates.size() != weights.size()) throw std::invalid_argument("candidate and weight counts differ");
    WeightedGraph g;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!(weights[i] > 0.0)) continue;
        g.vertices.push_back(candidates[i]);
        g.weights.push_back(weights[i]);
        g.source_index.push_back(static_cast<int>(i));
    }
    const int n = g.size();
    g.adjacency.assign(n, {});

    // Index candidates by member node so only pairs sharing a node are tested.
    std::vector<std::vector<int>> by_node;
    for (int i = 0; i < n; ++i) {
        for (NodeId m : g.vertices[i]) {
            if (m >= static_cast<NodeId>(by_node.size())) by_node.resize(m + 1);
            by_node[m].push_back(i);
        }
    }
    for (const auto& group : by_node) {
        for (std::size_t a = 0; a < group.size(); ++a) {
            for (std::size_t b = a + 1; b < group.size(); ++b) {
                g.adjacency[group[a]].push_back(group[b]);
                g.adjacency[group[b]].push_back(group[a]);
            }
        }
    }
    for (auto& nb : g.adjacency) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return g;
}

WeightedGraph make_weighted_graph(std::vector<double> weights, const std::vector<std::pair<int, int>>& edges) {
    WeightedGraph g;
    const int n = static_cast<int>(weights.size());
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("weights must be non-negative");
    }
    g.weights = std::move(weights);
    g.vertices.assign(n, {});
    g.source_index.resize(n);
    std::iota(g.source_index.begin(), g.source_index.end(), 0);
    g.adjacency.assign(n, {});
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw std::invalid_argument("bad edge");
        g.adjacency[a].push_back(b);
        g.adjacency[b].push_back(a);
    }
    for (auto& nb : g.adjacency) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return g;
}

namespace {

std::vector<int> weight_order(const WeightedGraph& g) {
    std::vector<int> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.weights[a] > g.weights[b]; });
    return order;
}

IndependentSet pass_with_order(const WeightedGraph& g, const std::vector<int>& order, int seed, std::vector<char>& removed) {
    std::fill(removed.begin(), removed.end(), 0);
    IndependentSet out;
    auto take = [&](int v) {
        out.vertices.push_back(v);
        out.weight += g.weights[v];
        removed[v] = 1;
        for (int u : g.adjacency[v]) removed[u] = 1;
    };
    take(seed);
    for (int v : order) {
        if (!removed[v]) take(v);
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    return out;
}

}  // namespace

IndependentSet greedy_pass(const WeightedGraph& g, int seed) {
    if (seed < 0 || seed >= g.size()) throw std::out_of_range("seed vertex out of range");
    std::vector<char> removed(g.size());
    return pass_with_order(g, weight_order(g), seed, removed);
}

IndependentSet single_start_greedy_mwis(const WeightedGraph& g) {
    if (g.size() == 0) return {};
    return greedy_pass(g, weight_order(g).front());
}

IndependentSet greedy_mwis(const WeightedGraph& g, int threads) {
    const int n = g.size();
    if (n == 0) return {};
    const auto order = weight_order(g);

    const int workers = std::clamp(threads, 1, n);
    std::vector<int> best_seed(workers, -1);
    std::vector<IndependentSet> best_set(workers);
    std::atomic<int> next{0};

    auto work = [&](int w) {
        std::vector<char> removed(n);
        for (int seed = next++; seed < n; seed = next++) {
            auto res = pass_with_order(g, order, seed, removed);
            const bool take = best_seed[w] < 0 || res.weight > best_set[w].weight ||
                              (res.weight == best_set[w].weight && seed < best_seed[w]);
            if (take) {
                best_seed[w] = seed;
                best_set[w] = std::move(res);
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    int winner = -1;
    for (int w = 0; w < workers; ++w) {
        if (best_seed[w] < 0) continue;
        if (winner < 0 || best_set[w].weight > best_set[winner].weight ||
            (best_set[w].weight == best_set[winner].weight && best_seed[w] < best_seed[winner])) {
            winner = w;
        }
    }
    return best_set[winner];
}

IndependentSet exact_mwis(const WeightedGraph& g, int limit) {
    const int n = g.size();
    if (n > limit || n > 63) throw std::length_error("graph too large for exact MWIS");
    if (n == 0) return {};

    std::vector<std::uint64_t> nbr(n, 0);
    for (int v = 0; v < n; ++v) {
        for (int u : g.adjacency[v]) nbr[v] |= std::uint64_t{1} << u;
    }
    std::vector<double> suffix(n + 1, 0.0);
    for (int v = n - 1; v >= 0; --v) suffix[v] = suffix[v + 1] + g.weights[v];

    IndependentSet best;
    bool have_best = false;
    std::vector<int> current;

    auto rec = [&](auto&& self, int i, std::uint64_t blocked, double weight) -> void {
        if (have_best && weight + suffix[i] < best.weight) return;
        if (i == n) {
            if (!have_best || weight > best.weight ||
                (weight == best.weight && current < best.vertices)) {
                best.vertices = current;
                best.weight = weight;
                have_best = true;
            }
            return;
        }
        if (!(blocked >> i & 1)) {
            current.push_back(i);
            self(self, i + 1, blocked | nbr[i], weight + g.weights[i]);
            current.pop_back();
        }
        self(self, i + 1, blocked, weight);
    };
    rec(rec, 0, 0, 0.0);
    return best;
}

bool is_independent(const WeightedGraph& g, const std::vector<int>& set) {
    for (std::size_t a = 0; a < set.size(); ++a) {
        for (std::size_t b = a + 1; b < set.size(); ++b) {
            if (g.adjacent(set[a], set[b])) return false;
        }
    }
    return true;
}

void write_adjacency_list(std::ostream& out, const std::vector<std::vector<int>>& adjacency) {
    for (std::size_t v = 0; v < adjacency.size(); ++v) {
        out << v << ':';
        for (int u : adjacency[v]) out << ' ' << u;
        out << '\n';
    }
}

}  // namespace fogcache
