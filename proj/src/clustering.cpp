#include "fogcache/clustering.hpp"

#include <algorithm>
#include <stdexcept>

namespace fogcache {

std::vector<double> cluster_popularity(const VertexSet& members, const PopularityModel& pop) {
    if (members.empty()) throw std::invalid_argument("cluster has no members");
    const int F = pop.num_files();
    double wsum = 0.0;
    for (NodeId m : members) wsum += pop.weights.at(m);
    std::vector<double> out(F, 0.0);
    for (NodeId m : members) {
        const double share = pop.weights[m] / wsum;
        const auto& row = pop.local[m];
        for (int f = 0; f < F; ++f) out[f] += row[f] * share;
    }
    return out;
}

namespace {

double incremental_traffic_with(const CandidateCluster& c, const Scenario& s, const std::vector<double>& node_top_k) {
    const double pooled = top_k_mass(c.popularity, c.capacity);
    double sum = 0.0;
    for (NodeId m : c.members) sum += s.rates[m] * (pooled - node_top_k[m]);
    return sum * s.L;
}

std::vector<double> node_top_k_masses(const Scenario& s, const PopularityModel& pop) {
    std::vector<double> out(s.M);
    for (int m = 0; m < s.M; ++m) out[m] = top_k_mass(pop.local[m], s.K);
    return out;
}

CandidateCluster candidate_shell(const VertexSet& members, const Scenario& s, const PopularityModel& pop) {
    CandidateCluster c;
    c.members = members;
    c.capacity = std::min(static_cast<int>(members.size()) * s.K, s.F);
    c.popularity = cluster_popularity(members, pop);
    return c;
}

}  // namespace

double incremental_traffic(const CandidateCluster& c, const Scenario& s, const PopularityModel& pop) {
    return incremental_traffic_with(c, s, node_top_k_masses(s, pop));
}

CandidateCluster make_candidate(const VertexSet& members, const Scenario& s, const PopularityModel& pop) {
    auto c = candidate_shell(members, s, pop);
    c.weight = incremental_traffic(c, s, pop);
    return c;
}

ClusteringResult make_clustering(const NodeGraph& g, const Scenario& s, const PopularityModel& pop,
                                 const std::vector<VertexSet>& chosen) {
    ClusteringResult r;
    r.cluster_of.assign(s.M, -1);
    for (std::size_t n = 0; n < chosen.size(); ++n) {
        const auto& members = chosen[n];
        if (members.size() < 2) throw std::invalid_argument("a cluster needs at least two members");
        if (!std::is_sorted(members.begin(), members.end())) throw std::invalid_argument("cluster members must be sorted");
        for (std::size_t i = 0; i < members.size(); ++i) {
            const NodeId m = members[i];
            if (m < 0 || m >= s.M) throw std::invalid_argument("cluster member out of range");
            if (r.cluster_of[m] >= 0) throw std::invalid_argument("clusters overlap");
            r.cluster_of[m] = static_cast<int>(n);
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (!g.adjacent(m, members[j])) throw std::invalid_argument("cluster is not a clique of the node graph");
            }
        }
        r.clusters.push_back(make_candidate(members, s, pop));
        r.objective += r.clusters.back().weight;
    }
    for (NodeId m = 0; m < s.M; ++m) {
        if (r.cluster_of[m] < 0) r.nonclustered.push_back(m);
    }

    r.partition.resize(s.M);
    for (NodeId m = 0; m < s.M; ++m) {
        auto& part = r.partition[m];
        const int own = r.cluster_of[m];
        for (NodeId n : g.adjacency[m]) {
            if (own < 0) {
                part.inter.push_back(n);
            } else if (r.cluster_of[n] == own) {
                part.intra.push_back(n);
            } else if (r.cluster_of[n] >= 0) {
                part.inter.push_back(n);
            } else {
                part.nonclustered.push_back(n);
            }
        }
    }
    return r;
}

ClusteringResult solve_clustering(const Scenario& s, const PopularityModel& pop, const ClusteringOptions& opts) {
    return solve_clustering(s, pop, build_node_graph(s), opts);
}

ClusteringResult solve_clustering(const Scenario& s, const PopularityModel& pop, const NodeGraph& g,
                                  const ClusteringOptions& opts) {
    validate_scenario(s);
    const auto cliques = maximal_cliques(g);
    const auto candidates = enumerate_complete_subgraphs(cliques, s.cluster_size_cap);

    const auto node_top_k = node_top_k_masses(s, pop);
    std::vector<double> weights(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        weights[i] = incremental_traffic_with(candidate_shell(candidates[i], s, pop), s, node_top_k);
    }

    const auto wg = build_weighted_graph(candidates, weights);
    const auto picked = opts.multi_start ? greedy_mwis(wg, opts.threads) : single_start_greedy_mwis(wg);

    std::vector<VertexSet> chosen;
    for (int v : picked.vertices) chosen.push_back(wg.vertices[v]);
    std::sort(chosen.begin(), chosen.end());

    auto r = make_clustering(g, s, pop, chosen);
    r.maximal_clique_count = cliques.size();
    r.candidate_count = candidates.size();
    r.weighted_vertex_count = static_cast<std::size_t>(wg.size());
    return r;
}

PopularFileSets popular_file_sets(const ClusteringResult& r, const PopularityModel& pop, const Scenario& s) {
    PopularFileSets out;
    for (const auto& c : r.clusters) {
        auto ranked = rank_files(c.popularity);
        ranked.resize(std::min(c.capacity, s.F));
        out.cluster_files.push_back(std::move(ranked));
    }
    out.node_files.resize(s.M);
    for (NodeId m : r.nonclustered) {
        auto ranked = rank_files(pop.local[m]);
        ranked.resize(std::min(s.K, s.F));
        out.node_files[m] = std::move(ranked);
    }
    return out;
}

}  // namespace fogcache
