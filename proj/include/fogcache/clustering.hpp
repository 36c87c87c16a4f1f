#pragma once

#include <cstddef>
#include <vector>

#include "fogcache/graph.hpp"
#include "fogcache/model.hpp"
#include "fogcache/workload.hpp"

namespace fogcache {

/// A clique of the node graph considered (or chosen) as a cluster. Its
/// members pool storage: capacity = size * K files.
struct CandidateCluster {
    VertexSet members;
    int capacity = 0;
    std::vector<double> popularity;  // rate-weighted mixture of member rows
    double weight = 0.0;             // incremental offloaded traffic (bits/s)

    int size() const { return static_cast<int>(members.size()); }
};

/// Cooperators of one node split by where they sit relative to the chosen
/// clusters. For a clustered node: intra = rest of its cluster, inter =
/// cooperators in other clusters, nonclustered = cooperators outside every
/// cluster. A nonclustered node keeps every cooperator in `inter`.
struct CooperatorPartition {
    std::vector<NodeId> intra;
    std::vector<NodeId> inter;
    std::vector<NodeId> nonclustered;
};

struct ClusteringResult {
    std::vector<CandidateCluster> clusters;
    std::vector<NodeId> nonclustered;
    std::vector<int> cluster_of;  // cluster index per node, -1 if nonclustered
    std::vector<CooperatorPartition> partition;
    double objective = 0.0;       // sum of chosen cluster weights

    std::size_t maximal_clique_count = 0;
    std::size_t candidate_count = 0;
    std::size_t weighted_vertex_count = 0;

    bool clustered(NodeId m) const { return cluster_of.at(m) >= 0; }
};

/// p_nf = sum_m p_mf w_m / sum_m w_m over the members. Throws
/// std::invalid_argument for an empty member set.
std::vector<double> cluster_popularity(const VertexSet& members, const PopularityModel& pop);

/// sum_{m in c} lambda_m (top-K_n mass of p_n - top-K mass of p_m) L, with
/// K_n clamped to F.
double incremental_traffic(const CandidateCluster& c, const Scenario& s, const PopularityModel& pop);

/// Fills popularity, capacity and weight for a member set.
CandidateCluster make_candidate(const VertexSet& members, const Scenario& s, const PopularityModel& pop);

/// Assembles a ClusteringResult from chosen member sets. Each set must be a
/// clique of `g` with at least two members, and the sets must be disjoint;
/// std::invalid_argument otherwise.
ClusteringResult make_clustering(const NodeGraph& g, const Scenario& s, const PopularityModel& pop,
                                 const std::vector<VertexSet>& chosen);

struct ClusteringOptions {
    int threads = 1;
    bool multi_start = true;  // false: single-start greedy, for comparisons
};

/// Node graph -> maximal cliques -> complete subgraphs up to the size cap ->
/// incremental-traffic weights -> conflict graph -> greedy MWIS.
ClusteringResult solve_clustering(const Scenario& s, const PopularityModel& pop, const ClusteringOptions& opts = {});
ClusteringResult solve_clustering(const Scenario& s, const PopularityModel& pop, const NodeGraph& g,
                                  const ClusteringOptions& opts = {});

/// Most popular files per chosen cluster (min(K_n, F) of them) and per
/// nonclustered node (K of them), in descending popularity, ties by id.
/// node_files is indexed by node and empty for clustered nodes.
struct PopularFileSets {
    std::vector<std::vector<FileId>> cluster_files;
    std::vector<std::vector<FileId>> node_files;
};

PopularFileSets popular_file_sets(const ClusteringResult& r, const PopularityModel& pop, const Scenario& s);

}  // namespace fogcache
