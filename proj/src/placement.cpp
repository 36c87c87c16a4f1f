#include "fogcache/placement.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fogcache/random.hpp"

namespace fogcache {

int Placement::load(NodeId m) const {
    const auto& row = x.at(m);
    return static_cast<int>(std::count(row.begin(), row.end(), std::uint8_t{1}));
}

std::vector<FileId> Placement::files_at(NodeId m) const {
    std::vector<FileId> out;
    const auto& row = x.at(m);
    for (std::size_t f = 0; f < row.size(); ++f) {
        if (row[f]) out.push_back(static_cast<FileId>(f));
    }
    return out;
}

Placement Placement::empty(int M, int F) {
    Placement p;
    p.x.assign(M, std::vector<std::uint8_t>(F, 0));
    return p;
}

CacheMatrix cluster_state(const Placement& p, const ClusteringResult& r) {
    const int F = p.num_files();
    CacheMatrix out(r.clusters.size(), std::vector<std::uint8_t>(F, 0));
    for (std::size_t n = 0; n < r.clusters.size(); ++n) {
        for (int f = 0; f < F; ++f) {
            int miss = 1;
            for (NodeId m : r.clusters[n].members) miss *= 1 - p.x[m][f];
            out[n][f] = static_cast<std::uint8_t>(1 - miss);
        }
    }
    return out;
}

CacheMatrix local_state(const Placement& p, const NodeGraph& g) {
    const int M = p.num_nodes();
    const int F = p.num_files();
    CacheMatrix out(M, std::vector<std::uint8_t>(F, 0));
    for (NodeId m = 0; m < M; ++m) {
        for (int f = 0; f < F; ++f) {
            int miss = 1;
            if (p.cooperation) {
                for (NodeId n : g.adjacency[m]) miss *= 1 - p.x[n][f];
            }
            const int own = p.x[m][f];
            out[m][f] = static_cast<std::uint8_t>(own + (1 - own) * (1 - miss));
        }
    }
    return out;
}

bool respects_capacity(const Placement& p, int K) {
    for (NodeId m = 0; m < p.num_nodes(); ++m) {
        if (p.load(m) > K) return false;
    }
    return true;
}

void write_placement_csv(std::ostream& out, const Placement& p) {
    out << "node_id,file_id\n";
    for (NodeId m = 0; m < p.num_nodes(); ++m) {
        for (FileId f : p.files_at(m)) out << m << ',' << f << '\n';
    }
}

Placement read_placement_csv(std::istream& in, int M, int F) {
    Placement p = Placement::empty(M, F);
    std::string line;
    if (!std::getline(in, line) || line.rfind("node_id,file_id", 0) != 0)
        throw ValidationError("placement CSV must start with header node_id,file_id");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ValidationError("placement CSV row needs two columns");
        int m = 0;
        int f = 0;
        try {
            m = std::stoi(line.substr(0, comma));
            f = std::stoi(line.substr(comma + 1));
        } catch (const std::logic_error&) {
            throw ValidationError("placement CSV holds a non-integer cell");
        }
        if (m < 0 || m >= M || f < 0 || f >= F) throw ValidationError("placement CSV id out of range");
        p.x[m][f] = 1;
    }
    return p;
}

// ---------------------------------------------------------------------------

int RedundancyGraph::edge_index(NodeId u, NodeId v) const {
    for (auto [n, e] : adjacency.at(u)) {
        if (n == v) return e;
    }
    return -1;
}

std::vector<AdjacencyTable> RedundancyGraph::ordered_tables() const {
    std::vector<AdjacencyTable> tables;
    for (NodeId m = 0; m < num_vertices; ++m) {
        AdjacencyTable t;
        t.owner = m;
        t.members.push_back(m);
        for (auto [n, e] : adjacency[m]) {
            if (n > m) t.members.push_back(n);
        }
        if (t.size() >= 2) tables.push_back(std::move(t));
    }
    std::stable_sort(tables.begin(), tables.end(),
                     [](const AdjacencyTable& a, const AdjacencyTable& b) { return a.size() > b.size(); });
    return tables;
}

namespace {

std::vector<FileId> sorted_copy(std::vector<FileId> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<FileId> intersect(const std::vector<FileId>& a, const std::vector<FileId>& b) {
    std::vector<FileId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<FileId> subtract(const std::vector<FileId>& a, const std::vector<FileId>& b) {
    std::vector<FileId> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool contains(const std::vector<FileId>& sorted, FileId f) {
    return std::binary_search(sorted.begin(), sorted.end(), f);
}

}  // namespace

RedundancyGraph build_redundancy_graph(const NodeGraph& g, const ClusteringResult& r, const PopularFileSets& sets,
                                       int K) {
    RedundancyGraph rg;
    rg.num_vertices = g.num_vertices;
    rg.adjacency.assign(g.num_vertices, {});
    rg.remaining_capacity.assign(g.num_vertices, K);

    auto popular = [&](NodeId m) {
        const int c = r.cluster_of[m];
        return sorted_copy(c >= 0 ? sets.cluster_files[c] : sets.node_files[m]);
    };

    for (auto [a, b] : g.edges()) {
        const int ca = r.cluster_of[a];
        if (ca >= 0 && ca == r.cluster_of[b]) continue;
        RedundancyEdge e;
        e.a = a;
        e.b = b;
        e.duplicates = intersect(popular(a), popular(b));
        const int idx = static_cast<int>(rg.edges.size());
        rg.edges.push_back(std::move(e));
        rg.adjacency[a].emplace_back(b, idx);
        rg.adjacency[b].emplace_back(a, idx);
    }
    for (auto& nb : rg.adjacency) std::sort(nb.begin(), nb.end());
    return rg;
}

RedundancyGraph separate_duplicates(RedundancyGraph rg, std::uint64_t seed) {
    auto rng = make_rng(seed, Stream::Separation);
    std::vector<std::vector<FileId>> work;
    work.reserve(rg.edges.size());
    for (auto& e : rg.edges) {
        work.push_back(e.duplicates);
        e.redundant.clear();
    }
    auto& room = rg.remaining_capacity;

    for (const auto& table : rg.ordered_tables()) {
        const NodeId m = table.owner;
        std::vector<int> table_edges;
        for (std::size_t i = 1; i < table.members.size(); ++i) table_edges.push_back(rg.edge_index(m, table.members[i]));

        std::vector<FileId> common = work[table_edges.front()];
        for (std::size_t i = 1; i < table_edges.size(); ++i) common = intersect(common, work[table_edges[i]]);

        const int cap = std::max(room[m], 0);
        std::vector<FileId> shared_pick;
        if (static_cast<int>(common.size()) >= cap) {
            shared_pick = sorted_copy(sample_without_replacement(common, cap, rng));
        }
        const int per_edge_extra = static_cast<int>(common.size()) >= cap
                                       ? 0
                                       : (cap - static_cast<int>(common.size())) / static_cast<int>(table_edges.size());

        for (std::size_t i = 0; i < table_edges.size(); ++i) {
            const int ei = table_edges[i];
            const NodeId other = table.members[i + 1];
            auto& edge = rg.edges[ei];
            if (static_cast<int>(common.size()) >= cap) {
                edge.redundant = shared_pick;
            } else {
                auto extra = sample_without_replacement(subtract(work[ei], common), per_edge_extra, rng);
                extra.insert(extra.end(), common.begin(), common.end());
                edge.redundant = sorted_copy(std::move(extra));
            }
            room[other] = std::max(0, room[other] - static_cast<int>(edge.redundant.size()));
            for (auto [n, ej] : rg.adjacency[other]) {
                if (ej != ei) work[ej] = subtract(work[ej], edge.redundant);
            }
        }
    }
    return rg;
}

// ---------------------------------------------------------------------------

namespace {

class Enhancer {
public:
    Enhancer(const RedundancyGraph& rg, const ClusteringResult& r, const PopularFileSets& sets, const Scenario& s,
             const PopularityModel& pop, const NodeGraph& g, const EnhanceOptions& opts)
        : rg_(rg), r_(r), s_(s), pop_(pop), g_(g), opts_(opts) {
        st_.delta.assign(s.M, std::vector<std::int8_t>(s.F, 0));
        st_.remaining_capacity.assign(s.M, s.K);
        st_.remaining_cluster_files = sets.cluster_files;
        cluster_has_.assign(r.clusters.size(), std::vector<char>(s.F, 0));
    }

    EnhanceResult run() {
        resolve_edges();
        assign_clusters();
        fill_nonclustered();
        if (opts_.top_up_clustered) top_up_clustered();

        EnhanceResult out;
        out.placement = Placement::empty(s_.M, s_.F);
        out.placement.scheme = "proposed";
        for (NodeId m = 0; m < s_.M; ++m) {
            for (int f = 0; f < s_.F; ++f) out.placement.x[m][f] = st_.delta[m][f] == 1;
        }
        out.state = std::move(st_);
        return out;
    }

private:
    void write(NodeId m, FileId f, std::int8_t v) {
        if (st_.delta[m][f] != 0) throw std::logic_error("enhancement cell rewritten");
        st_.delta[m][f] = v;
        ++st_.writes;
    }

    void forbid(NodeId m, FileId f) {
        if (st_.delta[m][f] == 0) write(m, f, -1);
    }

    /// Marks f for caching at m if the cell is open, m has room and m's
    /// cluster does not hold f yet. Every redundancy neighbour sharing f in
    /// its redundant set is forbidden from caching it.
    bool place(NodeId m, FileId f) {
        if (st_.delta[m][f] != 0 || st_.remaining_capacity[m] <= 0) return false;
        const int c = r_.cluster_of[m];
        if (c >= 0 && cluster_has_[c][f]) return false;
        write(m, f, 1);
        --st_.remaining_capacity[m];
        if (c >= 0) {
            cluster_has_[c][f] = 1;
            auto& rest = st_.remaining_cluster_files[c];
            rest.erase(std::remove(rest.begin(), rest.end(), f), rest.end());
        }
        for (auto [n, e] : rg_.adjacency[m]) {
            if (contains(rg_.edges[e].redundant, f)) forbid(n, f);
        }
        return true;
    }

    /// Request mass for f over m and all of its cooperators, in bits/s.
    double neighbourhood_traffic(NodeId m, FileId f) const {
        double sum = s_.rates[m] * pop_.local[m][f];
        for (NodeId n : g_.adjacency[m]) sum += s_.rates[n] * pop_.local[n][f];
        return sum * s_.L;
    }

    void resolve_edges() {
        for (const auto& table : rg_.ordered_tables()) {
            const NodeId m = table.owner;
            for (std::size_t i = 1; i < table.members.size(); ++i) {
                const NodeId other = table.members[i];
                resolve_edge(m, other, rg_.edges[rg_.edge_index(m, other)].redundant);
            }
        }
    }

    void resolve_edge(NodeId m, NodeId other, const std::vector<FileId>& redundant) {
        std::vector<FileId> open;
        for (FileId f : redundant) {
            const auto here = st_.delta[m][f];
            const auto there = st_.delta[other][f];
            if (here == 1) {
                forbid(other, f);
            } else if (here == -1) {
                place(other, f);
            } else if (there != 1) {
                open.push_back(f);
            }
        }
        if (open.empty()) return;

        double gain_m = 0.0;
        double gain_other = 0.0;
        for (FileId f : open) {
            gain_m += neighbourhood_traffic(m, f);
            gain_other += neighbourhood_traffic(other, f);
        }
        const NodeId winner = gain_m >= gain_other ? m : other;
        const NodeId loser = winner == m ? other : m;

        std::vector<double> score(open.size());
        for (std::size_t i = 0; i < open.size(); ++i) score[i] = neighbourhood_traffic(winner, open[i]);
        std::vector<std::size_t> order(open.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

        for (std::size_t i : order) {
            if (!place(winner, open[i])) place(loser, open[i]);
        }
    }

    bool forbidden_in_cluster(const CandidateCluster& c, FileId f) const {
        return std::any_of(c.members.begin(), c.members.end(), [&](NodeId u) { return st_.delta[u][f] == -1; });
    }

    void assign_clusters() {
        auto rng = make_rng(s_.seed, Stream::ClusterFill);
        for (std::size_t n = 0; n < r_.clusters.size(); ++n) {
            const auto& c = r_.clusters[n];
            // Files barred somewhere in the cluster go first, to the lowest
            // member that may still take them.
            for (NodeId m : c.members) {
                const auto pending = st_.remaining_cluster_files[n];
                for (FileId f : pending) {
                    if (forbidden_in_cluster(c, f)) place(m, f);
                }
            }
            for (NodeId m : c.members) {
                const int room = st_.remaining_capacity[m];
                if (room <= 0) continue;
                std::vector<FileId> pool;
                for (FileId f : st_.remaining_cluster_files[n]) {
                    if (st_.delta[m][f] == 0) pool.push_back(f);
                }
                auto picks = opts_.random_cluster_fill ? sample_without_replacement(pool, room, rng)
                                                       : std::vector<FileId>(pool.begin(), pool.begin() + std::min<std::size_t>(room, pool.size()));
                for (FileId f : picks) place(m, f);
            }
        }
    }

    /// Most popular files (by `probs`) not cached at m or any cooperator.
    void fill_from_ranking(NodeId m, const std::vector<double>& probs) {
        std::vector<char> cached_nearby(s_.F, 0);
        auto mark = [&](NodeId u) {
            for (int f = 0; f < s_.F; ++f) {
                if (st_.delta[u][f] == 1) cached_nearby[f] = 1;
            }
        };
        mark(m);
        for (NodeId u : g_.adjacency[m]) mark(u);
        for (FileId f : rank_files(probs)) {
            if (st_.remaining_capacity[m] <= 0) break;
            if (!cached_nearby[f]) place(m, f);
        }
    }

    void fill_nonclustered() {
        for (NodeId m : r_.nonclustered) {
            if (st_.remaining_capacity[m] > 0) fill_from_ranking(m, pop_.local[m]);
        }
    }

    void top_up_clustered() {
        for (const auto& c : r_.clusters) {
            for (NodeId m : c.members) {
                if (st_.remaining_capacity[m] > 0) fill_from_ranking(m, c.popularity);
            }
        }
    }

    const RedundancyGraph& rg_;
    const ClusteringResult& r_;
    const Scenario& s_;
    const PopularityModel& pop_;
    const NodeGraph& g_;
    EnhanceOptions opts_;
    EnhancementState st_;
    std::vector<std::vector<char>> cluster_has_;
};

}  // namespace

EnhanceResult enhance_decisions(const RedundancyGraph& rg, const ClusteringResult& r, const PopularFileSets& sets,
                                const Scenario& s, const PopularityModel& pop, const NodeGraph& g,
                                const EnhanceOptions& opts) {
    return Enhancer(rg, r, sets, s, pop, g, opts).run();
}

Placement knapsack_placement(const ClusteringResult& r, const PopularFileSets& sets, const Scenario& s) {
    Placement p = Placement::empty(s.M, s.F);
    p.scheme = "knapsack";
    for (std::size_t n = 0; n < r.clusters.size(); ++n) {
        const auto& members = r.clusters[n].members;
        const auto& files = sets.cluster_files[n];
        for (std::size_t i = 0; i < files.size(); ++i) p.x[members[i % members.size()]][files[i]] = 1;
    }
    for (NodeId m : r.nonclustered) {
        for (FileId f : sets.node_files[m]) p.x[m][f] = 1;
    }
    return p;
}

namespace {

Placement top_k_everywhere(const Scenario& s, const std::vector<std::vector<double>>& rows) {
    Placement p = Placement::empty(s.M, s.F);
    for (NodeId m = 0; m < s.M; ++m) {
        auto ranked = rank_files(rows[m]);
        for (int i = 0; i < s.K; ++i) p.x[m][ranked[i]] = 1;
    }
    return p;
}

}  // namespace

Placement baseline_lpc(const Scenario& s, const PopularityModel& pop) {
    auto p = top_k_everywhere(s, pop.local);
    p.scheme = "lpc";
    p.cooperation = true;
    return p;
}

Placement baseline_gpc(const Scenario& s, const PopularityModel& pop) {
    auto p = top_k_everywhere(s, std::vector<std::vector<double>>(s.M, pop.global));
    p.scheme = "gpc";
    p.cooperation = false;
    return p;
}

ProposedRun run_proposed(const Scenario& s, const PopularityModel& pop, const ClusteringOptions& copts,
                         const EnhanceOptions& eopts) {
    ProposedRun run;
    run.graph = build_node_graph(s);
    run.clustering = solve_clustering(s, pop, run.graph, copts);
    run.sets = popular_file_sets(run.clustering, pop, s);
    run.redundancy = separate_duplicates(build_redundancy_graph(run.graph, run.clustering, run.sets, s.K), s.seed);
    run.enhanced = enhance_decisions(run.redundancy, run.clustering, run.sets, s, pop, run.graph, eopts);
    return run;
}

}  // namespace fogcache
