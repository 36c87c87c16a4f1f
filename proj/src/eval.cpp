#include "fogcache/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fogcache {

namespace {

void check_shape(const Placement& p, const Scenario& s, const PopularityModel& pop, const NodeGraph& g) {
    if (p.num_nodes() != s.M || p.num_files() != s.F) throw std::invalid_argument("placement shape does not match scenario");
    if (pop.num_nodes() != s.M || pop.num_files() != s.F) throw std::invalid_argument("popularity shape does not match scenario");
    if (g.num_vertices != s.M) throw std::invalid_argument("node graph size does not match scenario");
}

/// 1 if any listed node caches f.
int any_cached(const Placement& p, const std::vector<NodeId>& nodes, int f) {
    int miss = 1;
    for (NodeId u : nodes) miss *= 1 - p.x[u][f];
    return 1 - miss;
}

DecompositionTerms decompose_impl(const Placement& p, const ClusteringResult& r, const Scenario& s,
                                  const PopularityModel& pop, bool cooperation) {
    const auto x_n = cluster_state(p, r);
    const std::vector<NodeId> none;
    double t_c = 0.0;
    double t_n = 0.0;
    double t_d = 0.0;
    for (NodeId m = 0; m < s.M; ++m) {
        const int c = r.cluster_of[m];
        const auto& part = r.partition[m];
        std::vector<NodeId> outside;  // S^2 u S^3 for clustered, S^2 otherwise
        if (cooperation) {
            outside = part.inter;
            if (c >= 0) outside.insert(outside.end(), part.nonclustered.begin(), part.nonclustered.end());
        }
        const auto& row = pop.local[m];
        double own = 0.0;
        double via = 0.0;
        double dup = 0.0;
        for (int f = 0; f < s.F; ++f) {
            const int held = c >= 0 ? x_n[c][f] : p.x[m][f];
            const int reach = any_cached(p, outside, f);
            own += row[f] * held;
            via += row[f] * reach;
            dup += row[f] * held * reach;
        }
        t_c += s.rates[m] * own;
        t_n += s.rates[m] * via;
        t_d += s.rates[m] * dup;
    }
    return {t_c * s.L, t_n * s.L, t_d * s.L};
}

}  // namespace

TrafficReport offloaded_traffic(const Placement& p, const Scenario& s, const PopularityModel& pop, const NodeGraph& g,
                                bool cooperation, const ClusteringResult* clustering) {
    check_shape(p, s, pop, g);
    Placement view = p;
    view.cooperation = cooperation;
    const auto xl = local_state(view, g);

    TrafficReport rep;
    rep.scheme = p.scheme;
    rep.per_node.resize(s.M);
    for (NodeId m = 0; m < s.M; ++m) {
        double sum = 0.0;
        for (int f = 0; f < s.F; ++f) sum += pop.local[m][f] * xl[m][f];
        rep.per_node[m] = s.rates[m] * sum * s.L;
        rep.T += rep.per_node[m];
    }
    if (clustering) {
        const auto terms = decompose_impl(p, *clustering, s, pop, cooperation);
        rep.T_c = terms.T_c;
        rep.T_n = terms.T_n;
        rep.T_d = terms.T_d;
    }
    return rep;
}

TrafficReport offloaded_traffic(const Placement& p, const Scenario& s, const PopularityModel& pop, const NodeGraph& g,
                                const ClusteringResult* clustering) {
    return offloaded_traffic(p, s, pop, g, p.cooperation, clustering);
}

DecompositionTerms decompose(const Placement& p, const ClusteringResult& r, const Scenario& s,
                             const PopularityModel& pop) {
    return decompose_impl(p, r, s, pop, true);
}

AuditResult decomposition_audit(const Placement& p, const ClusteringResult& r, const Scenario& s,
                                const PopularityModel& pop, const NodeGraph& g, double tolerance) {
    Placement coop = p;
    coop.cooperation = true;
    const auto xl = local_state(coop, g);
    const auto x_n = cluster_state(p, r);

    AuditResult out;
    for (NodeId m = 0; m < s.M; ++m) {
        const int c = r.cluster_of[m];
        const auto& part = r.partition[m];
        std::vector<NodeId> outside = part.inter;
        if (c >= 0) outside.insert(outside.end(), part.nonclustered.begin(), part.nonclustered.end());
        for (int f = 0; f < s.F; ++f) {
            const int held = c >= 0 ? x_n[c][f] : p.x[m][f];
            const int reach = any_cached(p, outside, f);
            const int split_state = held + (1 - held) * reach;
            out.max_state_residual = std::max(out.max_state_residual, std::abs(double(split_state - xl[m][f])));
        }
    }

    out.T = offloaded_traffic(coop, s, pop, g, true).T;
    out.terms = decompose(p, r, s, pop);
    const double rebuilt = out.terms.T_c + out.terms.T_n - out.terms.T_d;
    const double scale = std::max(std::abs(out.T), std::numeric_limits<double>::min());
    out.relative_residual = std::abs(out.T - rebuilt) / scale;
    out.passed = out.max_state_residual == 0.0 && out.relative_residual < tolerance;
    return out;
}

double restricted_duplicate_traffic(const Placement& p, const ClusteringResult& r, const PopularFileSets& sets,
                                    const Scenario& s, const PopularityModel& pop) {
    double total = 0.0;
    for (NodeId m = 0; m < s.M; ++m) {
        const int c = r.cluster_of[m];
        const auto& part = r.partition[m];
        std::vector<NodeId> outside = part.inter;
        if (c >= 0) outside.insert(outside.end(), part.nonclustered.begin(), part.nonclustered.end());
        const auto& files = c >= 0 ? sets.cluster_files[c] : sets.node_files[m];
        double sum = 0.0;
        for (FileId f : files) sum += pop.local[m][f] * any_cached(p, outside, f);
        total += s.rates[m] * sum;
    }
    return total * s.L;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc);
}

namespace {

std::vector<std::vector<FileId>> all_combinations(int F, int K) {
    std::vector<std::vector<FileId>> out;
    std::vector<FileId> pick(K);
    for (int i = 0; i < K; ++i) pick[i] = i;
    while (true) {
        out.push_back(pick);
        int i = K - 1;
        while (i >= 0 && pick[i] == F - K + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < K; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

}  // namespace

OracleResult exact_placement_oracle(const Scenario& s, const PopularityModel& pop, const NodeGraph& g,
                                    std::uint64_t budget) {
    validate_scenario(s);
    const std::uint64_t per_node = binomial(s.F, s.K);
    std::uint64_t total = 1;
    for (int m = 0; m < s.M; ++m) {
        if (per_node != 0 && total > budget / per_node) throw std::length_error("placement oracle budget exceeded");
        total *= per_node;
    }
    if (total > budget) throw std::length_error("placement oracle budget exceeded");

    const auto combos = all_combinations(s.F, s.K);
    std::vector<std::size_t> digit(s.M, 0);
    Placement current = Placement::empty(s.M, s.F);
    current.scheme = "oracle";
    auto apply = [&](NodeId m, std::size_t idx, std::uint8_t v) {
        for (FileId f : combos[idx]) current.x[m][f] = v;
    };
    for (NodeId m = 0; m < s.M; ++m) apply(m, 0, 1);

    OracleResult best;
    bool have = false;
    while (true) {
        const double t = offloaded_traffic(current, s, pop, g, true).T;
        ++best.evaluated;
        if (!have || t > best.T) {
            best.T = t;
            best.placement = current;
            have = true;
        }
        // Odometer with node 0 as the most significant digit.
        int m = s.M - 1;
        while (m >= 0 && digit[m] + 1 == combos.size()) {
            apply(m, digit[m], 0);
            digit[m] = 0;
            apply(m, 0, 1);
            --m;
        }
        if (m < 0) break;
        apply(m, digit[m], 0);
        ++digit[m];
        apply(m, digit[m], 1);
    }
    return best;
}

}  // namespace fogcache
