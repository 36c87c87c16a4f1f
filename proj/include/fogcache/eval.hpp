#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fogcache/clustering.hpp"
#include "fogcache/model.hpp"
#include "fogcache/placement.hpp"
#include "fogcache/workload.hpp"

namespace fogcache {

/// Offloaded traffic in bits/s. The decomposition terms are present only
/// when a clustering was supplied: T_c is served by the requesting node or
/// its cluster, T_n by inter-cluster and nonclustered cooperators, and T_d
/// counts files reachable both ways, so T = T_c + T_n - T_d.
struct TrafficReport {
    std::string scheme;
    double T = 0.0;
    std::vector<double> per_node;
    std::optional<double> T_c;
    std::optional<double> T_n;
    std::optional<double> T_d;
};

/// Throws std::invalid_argument when the placement shape does not match
/// the scenario. With `cooperation` false every S_m is empty.
TrafficReport offloaded_traffic(const Placement& p, const Scenario& s, const PopularityModel& pop, const NodeGraph& g,
                                bool cooperation, const ClusteringResult* clustering = nullptr);

/// Uses p.cooperation.
TrafficReport offloaded_traffic(const Placement& p, const Scenario& s, const PopularityModel& pop, const NodeGraph& g,
                                const ClusteringResult* clustering = nullptr);

struct DecompositionTerms {
    double T_c = 0.0;
    double T_n = 0.0;
    double T_d = 0.0;
};

/// Term-by-term evaluation of the three components from the cooperator
/// partition in `r`. Cooperators are taken from r.partition, so passing a
/// clustering built on an empty graph turns cooperation off.
DecompositionTerms decompose(const Placement& p, const ClusteringResult& r, const Scenario& s,
                             const PopularityModel& pop);

struct AuditResult {
    bool passed = false;
    double max_state_residual = 0.0;  // clustered local-state identity, per cell
    double relative_residual = 0.0;   // |T - (T_c + T_n - T_d)| / max(T, eps)
    double T = 0.0;
    DecompositionTerms terms;
};

/// Checks, for an arbitrary placement, that every clustered node's local
/// state equals x_nf + (1 - x_nf)[1 - prod over inter and nonclustered
/// cooperators], and that T = T_c + T_n - T_d.
AuditResult decomposition_audit(const Placement& p, const ClusteringResult& r, const Scenario& s,
                                const PopularityModel& pop, const NodeGraph& g, double tolerance = 1e-9);

/// Duplicate term with the file sums restricted to the popular-file sets.
/// Equals decompose().T_d when p caches exactly those sets.
double restricted_duplicate_traffic(const Placement& p, const ClusteringResult& r, const PopularFileSets& sets,
                                    const Scenario& s, const PopularityModel& pop);

struct OracleResult {
    Placement placement;
    double T = 0.0;
    std::uint64_t evaluated = 0;
};

/// Exhaustive maximisation of T over placements that fill every node to
/// exactly K files (T never decreases when a file is added, so full caches
/// suffice). The first optimum in lexicographic enumeration order is kept.
/// Throws std::length_error when C(F, K)^M exceeds `budget`.
OracleResult exact_placement_oracle(const Scenario& s, const PopularityModel& pop, const NodeGraph& g,
                                    std::uint64_t budget = 5'000'000);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);

}  // namespace fogcache
