#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "fogcache/model.hpp"

namespace fogcache {

using VertexSet = std::vector<NodeId>;  // sorted ascending

/// T_m = {m} plus every higher-numbered neighbour of m.
struct AdjacencyTable {
    NodeId owner = 0;
    VertexSet members;

    std::size_t size() const { return members.size(); }
};

std::vector<AdjacencyTable> adjacency_tables(const NodeGraph& g);

/// All maximal cliques with at least two vertices, each sorted, the list
/// sorted lexicographically.
///
/// Every clique is searched inside the adjacency table of its smallest
/// vertex: the table owner seeds the clique, its higher neighbours are the
/// candidates, and its lower neighbours are the exclusion set that rejects
/// non-maximal results. Inside a table the search is Bron-Kerbosch with
/// Tomita pivoting.
std::vector<VertexSet> maximal_cliques(const NodeGraph& g);

/// Every subset of size 2..cap of every input clique, deduplicated. Sorted
/// by size, then lexicographically. Throws std::invalid_argument if cap < 2.
std::vector<VertexSet> enumerate_complete_subgraphs(const std::vector<VertexSet>& cliques, int cap);

/// Conflict graph over candidate clusters: two candidates are adjacent when
/// their member sets intersect. `source_index[i]` maps vertex i back into
/// the candidate list handed to build_weighted_graph.
struct WeightedGraph {
    std::vector<VertexSet> vertices;
    std::vector<double> weights;
    std::vector<std::vector<int>> adjacency;  // sorted
    std::vector<int> source_index;

    int size() const { return static_cast<int>(vertices.size()); }
    bool adjacent(int a, int b) const;
    std::size_t num_edges() const;
};

/// Drops candidates whose weight is <= 0, then links every intersecting
/// pair. Throws std::invalid_argument on length mismatch.
WeightedGraph build_weighted_graph(const std::vector<VertexSet>& candidates, const std::vector<double>& weights);

/// Builds the graph from explicit edges, no pruning. Weights must be >= 0.
WeightedGraph make_weighted_graph(std::vector<double> weights, const std::vector<std::pair<int, int>>& edges);

struct IndependentSet {
    std::vector<int> vertices;  // sorted
    double weight = 0.0;
};

/// One greedy pass seeded at `seed`: repeatedly take the heaviest remaining
/// vertex (lowest index on ties) and drop its neighbours.
IndependentSet greedy_pass(const WeightedGraph& g, int seed);

/// Classic greedy: a single pass seeded at the heaviest vertex.
IndependentSet single_start_greedy_mwis(const WeightedGraph& g);

/// Multi-start greedy: one pass per seed vertex, keep the heaviest result
/// (earliest seed on ties). `threads` > 1 runs passes concurrently; the
/// reduction is order-independent.
IndependentSet greedy_mwis(const WeightedGraph& g, int threads = 1);

/// Exact maximum-weight independent set by branch and bound. Among equal
/// optima the lexicographically smallest index vector wins. Throws
/// std::length_error when the graph exceeds `limit` vertices.
IndependentSet exact_mwis(const WeightedGraph& g, int limit = 20);

bool is_independent(const WeightedGraph& g, const std::vector<int>& set);

/// Debug dump: one line per vertex, "v: n1 n2 ...".
void write_adjacency_list(std::ostream& out, const std::vector<std::vector<int>>& adjacency);

}  // namespace fogcache
