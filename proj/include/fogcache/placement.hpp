#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fogcache/clustering.hpp"
#include "fogcache/graph.hpp"
#include "fogcache/model.hpp"
#include "fogcache/workload.hpp"

namespace fogcache {

using CacheMatrix = std::vector<std::vector<std::uint8_t>>;  // M x F, 0/1

/// Binary caching decisions. With cooperation disabled every node is
/// evaluated as if it had no cooperators.
struct Placement {
    CacheMatrix x;
    bool cooperation = true;
    std::string scheme;

    int num_nodes() const { return static_cast<int>(x.size()); }
    int num_files() const { return x.empty() ? 0 : static_cast<int>(x.front().size()); }
    int load(NodeId m) const;
    std::vector<FileId> files_at(NodeId m) const;

    static Placement empty(int M, int F);
};

/// x_nf = 1 - prod_{m in cluster} (1 - x_mf), one row per cluster.
CacheMatrix cluster_state(const Placement& p, const ClusteringResult& r);

/// x^l_mf = x_mf + (1 - x_mf)(1 - prod_{m' in S_m}(1 - x_m'f)). S_m is
/// empty for every node when cooperation is off.
CacheMatrix local_state(const Placement& p, const NodeGraph& g);

bool respects_capacity(const Placement& p, int K);

/// Sparse CSV "node_id,file_id", one row per cached (node, file).
void write_placement_csv(std::ostream& out, const Placement& p);
Placement read_placement_csv(std::istream& in, int M, int F);

// ---------------------------------------------------------------------------
// Redundancy graph

struct RedundancyEdge {
    NodeId a = 0;  // a < b
    NodeId b = 0;
    std::vector<FileId> duplicates;  // popular at both ends, sorted by id
    std::vector<FileId> redundant;   // filled by separate_duplicates, sorted by id
};

/// Node-graph edges minus those inside a chosen cluster. Edges are sorted by
/// (a, b); `adjacency[m]` lists (neighbour, edge index) sorted by neighbour.
struct RedundancyGraph {
    int num_vertices = 0;
    std::vector<RedundancyEdge> edges;
    std::vector<std::vector<std::pair<NodeId, int>>> adjacency;
    std::vector<int> remaining_capacity;

    int edge_index(NodeId u, NodeId v) const;  // -1 when absent

    /// Tables {m} + higher neighbours with at least one edge, largest first,
    /// ties by lower owner.
    std::vector<AdjacencyTable> ordered_tables() const;
};

/// Duplicate sets by endpoint kind: cluster-vs-nonclustered intersects the
/// cluster set with the node set, cluster-vs-cluster the two cluster sets,
/// and nonclustered-vs-nonclustered the two node sets.
RedundancyGraph build_redundancy_graph(const NodeGraph& g, const ClusteringResult& r, const PopularFileSets& sets,
                                       int K);

/// Splits each duplicate set down to the files that would really be cached
/// twice. Tables are processed largest first; for owner m with common
/// duplicates I (the intersection over its edges) and remaining room K_m:
/// if |I| >= K_m every edge gets the same K_m random files of I, otherwise
/// I plus floor((K_m - |I|) / edges) random files of that edge's other
/// duplicates. Each fixed set is charged against the neighbour's room and
/// removed from the neighbour's other duplicate sets.
RedundancyGraph separate_duplicates(RedundancyGraph rg, std::uint64_t seed);

/// Three-valued enhancement directives and the working capacities.
struct EnhancementState {
    std::vector<std::vector<std::int8_t>> delta;  // -1 forbidden, 0 open, +1 cache here
    std::vector<int> remaining_capacity;
    std::vector<std::vector<FileId>> remaining_cluster_files;
    std::size_t writes = 0;  // each cell is written at most once
};

struct EnhanceOptions {
    bool random_cluster_fill = true;  // false: fill clusters by descending p_nf
    bool top_up_clustered = true;     // fill leftover room at clustered nodes
};

struct EnhanceResult {
    Placement placement;
    EnhancementState state;
};

/// Resolves every redundant file to a single endpoint, spreads each
/// cluster's popular files over its members, fills nonclustered nodes with
/// the most popular files not already cached next door, then reads x off
/// the +1 directives.
EnhanceResult enhance_decisions(const RedundancyGraph& rg, const ClusteringResult& r, const PopularFileSets& sets,
                                const Scenario& s, const PopularityModel& pop, const NodeGraph& g,
                                const EnhanceOptions& opts = {});

/// Placement implied directly by the popular-file sets: each cluster's
/// files are dealt round-robin over its members in popularity order and
/// each nonclustered node caches its own top-K.
Placement knapsack_placement(const ClusteringResult& r, const PopularFileSets& sets, const Scenario& s);

/// Each node caches its local top-K; cooperation on.
Placement baseline_lpc(const Scenario& s, const PopularityModel& pop);

/// Each node caches the global top-K; cooperation off.
Placement baseline_gpc(const Scenario& s, const PopularityModel& pop);

/// Everything the proposed scheme produces on the way to a placement.
struct ProposedRun {
    NodeGraph graph;
    ClusteringResult clustering;
    PopularFileSets sets;
    RedundancyGraph redundancy;
    EnhanceResult enhanced;
};

ProposedRun run_proposed(const Scenario& s, const PopularityModel& pop, const ClusteringOptions& copts = {},
                         const EnhanceOptions& eopts = {});

}  // namespace fogcache
