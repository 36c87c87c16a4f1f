#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fogcache {

using NodeId = int;
using FileId = int;

/// Raised when a scenario, popularity matrix, or experiment fails validation.
/// The message names the first violated invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

/// One problem instance: node geometry and loads, library, storage, and
/// the cooperation thresholds. File ids are 0-based throughout.
struct Scenario {
    int M = 1;                 // cache nodes
    int F = 1;                 // library size (files)
    int K = 1;                 // per-node storage (files)
    double L = 1.0;            // file size (bits)
    std::vector<Point> positions;
    std::vector<double> rates; // aggregate request rate per node (req/s)
    double gamma_d = 0.0;      // distance threshold (m)
    double gamma_l = 0.0;      // load-difference threshold (req/s)
    double zipf_z = 0.6;
    std::uint64_t seed = 0;
    int cluster_size_cap = 5;  // S_max
    double locality = 0.3;     // popularity reshuffle strength in [0, 1]

    bool operator==(const Scenario&) const = default;
};

/// Returns `s` unchanged if every invariant holds, otherwise throws
/// ValidationError naming the first one violated.
const Scenario& validate_scenario(const Scenario& s);

double distance(const Scenario& s, NodeId a, NodeId b);

/// Distance within gamma_d and load difference at least gamma_l.
/// Throws std::out_of_range for bad ids and std::invalid_argument if a == b.
bool can_cooperate(const Scenario& s, NodeId a, NodeId b);

/// Undirected cooperation graph. adjacency[m] is the cooperator set S_m,
/// sorted ascending.
struct NodeGraph {
    int num_vertices = 0;
    std::vector<std::vector<NodeId>> adjacency;

    std::size_t num_edges() const;
    bool adjacent(NodeId a, NodeId b) const;
    /// Edges as (lo, hi) pairs, sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    static NodeGraph from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges);
    static NodeGraph empty(int n);

    bool operator==(const NodeGraph&) const = default;
};

NodeGraph build_node_graph(const Scenario& s);

/// Parameters for drawing positions and rates when a scenario is generated
/// rather than loaded.
struct GeneratorConfig {
    int M = 10;
    int F = 500;
    int K = 25;
    double L = 2e9;
    double gamma_d = 20.0;
    double gamma_l = 0.0;
    double zipf_z = 0.6;
    int cluster_size_cap = 5;
    double locality = 0.3;
    double area_side = 50.0;
    double rate_min = 50.0;
    double rate_max = 150.0;

    bool operator==(const GeneratorConfig&) const = default;
};

/// Positions uniform in [0, area_side]^2 and rates uniform in
/// [rate_min, rate_max], drawn from `seed`. Geometry depends only on
/// (seed, M, area_side, rate bounds), so sweeping K, F, z or gamma_d keeps
/// the same deployment.
Scenario generate_scenario(const GeneratorConfig& cfg, std::uint64_t seed);

}  // namespace fogcache
