#include <doctest.h>

#include <map>
#include <numeric>
#include <sstream>

#include "fogcache/eval.hpp"
#include "fogcache/placement.hpp"
#include "oracles.hpp"

using namespace fogcache;

namespace {

RedundancyGraph make_rg(int n, int K, const std::vector<std::tuple<int, int, std::vector<FileId>>>& edges) {
    RedundancyGraph rg;
    rg.num_vertices = n;
    rg.adjacency.resize(n);
    rg.remaining_capacity.assign(n, K);
    for (const auto& [a, b, dup] : edges) {
        rg.edges.push_back({a, b, dup, {}});
        const int e = static_cast<int>(rg.edges.size()) - 1;
        rg.adjacency[a].emplace_back(b, e);
        rg.adjacency[b].emplace_back(a, e);
    }
    for (auto& adj : rg.adjacency) std::sort(adj.begin(), adj.end());
    return rg;
}

std::vector<std::uint8_t> row_of(const std::vector<FileId>& files, int F) {
    std::vector<std::uint8_t> r(F, 0);
    for (int f : files) r[f] = 1;
    return r;
}

struct Instance {
    Scenario s;
    PopularityModel pop;
    ProposedRun run;
};

Instance desk_instance(std::uint64_t seed, int M = 10, int F = 500, int K = 25) {
    GeneratorConfig cfg;
    cfg.M = M;
    cfg.F = F;
    cfg.K = K;
    Instance in;
    in.s = generate_scenario(cfg, seed);
    in.pop = synthesize_local_popularity(in.s);
    in.run = run_proposed(in.s, in.pop);
    return in;
}

}  // namespace

TEST_CASE("placement CSV round trip") {
    auto p = Placement::empty(3, 5);
    p.x[0][1] = p.x[2][4] = p.x[2][0] = 1;
    std::stringstream ss;
    write_placement_csv(ss, p);
    CHECK(ss.str() == "node_id,file_id\n0,1\n2,0\n2,4\n");
    const auto back = read_placement_csv(ss, 3, 5);
    CHECK(back.x == p.x);
    CHECK(back.load(2) == 2);
    CHECK(back.files_at(2) == std::vector<FileId>{0, 4});

    std::stringstream bad("node_id,file_id\n3,0\n");
    CHECK_THROWS_AS(read_placement_csv(bad, 3, 5), ValidationError);
    std::stringstream junk("node_id,file_id\nx,0\n");
    CHECK_THROWS_AS(read_placement_csv(junk, 3, 5), ValidationError);
}

TEST_CASE("cluster and local states") {
    const auto s = oracle::scenario(3, 3, 1, {{0, 0}, {4, 0}, {8, 0}}, {1, 2, 3}, 5);
    const auto pop = make_popularity(s, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const auto g = build_node_graph(s);
    const auto r = make_clustering(g, s, pop, {{0, 1}});
    auto p = Placement::empty(3, 3);
    p.x[0][0] = p.x[1][1] = p.x[2][2] = 1;
    const auto xn = cluster_state(p, r);
    CHECK(xn == CacheMatrix{{1, 1, 0}});
    const auto xl = local_state(p, g);
    CHECK(xl == CacheMatrix{{1, 1, 0}, {1, 1, 1}, {0, 1, 1}});
    CHECK(local_state(p, NodeGraph::empty(3)) == p.x);
}

TEST_CASE("redundancy graph fixtures") {
    const auto s = oracle::scenario(3, 4, 1, {{0, 0}, {4, 0}, {8, 0}}, {1, 2, 3}, 5);
    const auto pop = make_popularity(s, std::vector<std::vector<double>>(3, std::vector<double>(4, 0.25)));
    const auto g = build_node_graph(s);

    auto r = make_clustering(g, s, pop, {{0, 1}});
    PopularFileSets sets{{{0, 1}}, {{}, {}, {1, 2}}};
    auto rg = build_redundancy_graph(g, r, sets, s.K);
    REQUIRE(rg.edges.size() == 1);
    CHECK(rg.edges[0].a == 1);
    CHECK(rg.edges[0].b == 2);
    CHECK(rg.edges[0].duplicates == std::vector<FileId>{1});
    CHECK(rg.edge_index(2, 1) == 0);
    CHECK(rg.edge_index(0, 1) == -1);

    const auto tri = oracle::scenario(3, 4, 1, {{0, 0}, {1, 0}, {0, 1}}, {1, 2, 3}, 5);
    const auto tg = build_node_graph(tri);
    r = make_clustering(tg, tri, pop, {{0, 1, 2}});
    sets = popular_file_sets(r, pop, tri);
    CHECK(build_redundancy_graph(tg, r, sets, tri.K).edges.empty());
}

TEST_CASE("redundancy duplicates equal an independent intersection") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        auto in = desk_instance(seed, 10, 80, 6);
        const auto& r = in.run.clustering;
        const auto& sets = in.run.sets;
        std::map<std::pair<int, int>, std::vector<FileId>> expect;
        auto popular = [&](int m) {
            const int c = r.cluster_of[m];
            auto v = c >= 0 ? sets.cluster_files[c] : sets.node_files[m];
            std::sort(v.begin(), v.end());
            return v;
        };
        for (auto [a, b] : in.run.graph.edges()) {
            if (r.cluster_of[a] >= 0 && r.cluster_of[a] == r.cluster_of[b]) continue;
            const auto pa = popular(a), pb = popular(b);
            std::vector<FileId> both;
            std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(both));
            expect[{a, b}] = both;
        }
        const auto& rg = in.run.redundancy;
        CHECK(rg.edges.size() == expect.size());
        for (const auto& e : rg.edges) {
            CHECK(e.a < e.b);
            CHECK(e.duplicates == expect[{e.a, e.b}]);
            CHECK(std::includes(e.duplicates.begin(), e.duplicates.end(), e.redundant.begin(), e.redundant.end()));
        }
    }
}

TEST_CASE("separation fixtures") {
    auto rg = make_rg(2, 2, {{0, 1, {5}}});
    auto out = separate_duplicates(rg, 1);
    CHECK(out.edges[0].redundant == std::vector<FileId>{5});
    CHECK(out.edges[0].duplicates == std::vector<FileId>{5});
    CHECK(out.remaining_capacity == std::vector<int>{2, 1});

    out = separate_duplicates(make_rg(3, 2, {}), 1);
    CHECK(out.edges.empty());

    // Hand trace. Tables by size: T0 = {0,1,2,3} (three edges), then
    // T1 = {1,2}. T0: common duplicates {1}, room 4, so each edge takes {1}
    // plus floor(3/3) = 1 of its other (single) duplicates; nodes 1..3 are
    // charged 2 each and the fixed sets leave the working copy of e12,
    // which becomes {6}. T1: owner 1 has room 2, common {6}, so e12 = {6}
    // and node 2 is charged 1 more.
    rg = make_rg(4, 4, {{0, 1, {1, 2}}, {0, 2, {1, 4}}, {0, 3, {1, 5}}, {1, 2, {2, 4, 6}}});
    const auto tables = rg.ordered_tables();
    REQUIRE(tables.size() == 2);
    CHECK(tables[0].members == VertexSet{0, 1, 2, 3});
    CHECK(tables[1].members == VertexSet{1, 2});
    out = separate_duplicates(rg, 42);
    CHECK(out.edges[0].redundant == std::vector<FileId>{1, 2});
    CHECK(out.edges[1].redundant == std::vector<FileId>{1, 4});
    CHECK(out.edges[2].redundant == std::vector<FileId>{1, 5});
    CHECK(out.edges[3].redundant == std::vector<FileId>{6});
    CHECK(out.remaining_capacity == std::vector<int>{4, 2, 1, 2});

    // Common duplicates outnumber the owner's room: every edge receives the
    // same draw, of exactly K_m files.
    rg = make_rg(3, 2, {{0, 1, {3, 4, 5, 7}}, {0, 2, {3, 4, 5}}});
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        out = separate_duplicates(rg, seed);
        CHECK(out.edges[0].redundant.size() == 2);
        CHECK(out.edges[0].redundant == out.edges[1].redundant);
        for (int f : out.edges[0].redundant) CHECK((f >= 3 && f <= 5));
        CHECK(out.remaining_capacity == std::vector<int>{2, 0, 0});
        CHECK(separate_duplicates(rg, seed).edges[0].redundant == out.edges[0].redundant);
    }
}

TEST_CASE("single node caches its local top-K") {
    const auto s = oracle::scenario(1, 6, 2, {{0, 0}}, {2}, 5);
    const auto pop = make_popularity(s, {{0.1, 0.3, 0.05, 0.4, 0.1, 0.05}});
    const auto run = run_proposed(s, pop);
    CHECK(run.enhanced.placement.files_at(0) == std::vector<FileId>{1, 3});
    CHECK(run.redundancy.edges.empty());
}

TEST_CASE("enhancement splits a duplicated file between two cooperating nodes") {
    const auto s = oracle::scenario(2, 4, 1, {{0, 0}, {1, 0}}, {1, 1}, 5);
    const auto pop = make_popularity(s, {{0.4, 0.3, 0.2, 0.1}, {0.4, 0.3, 0.2, 0.1}});
    const auto g = build_node_graph(s);
    const auto r = make_clustering(g, s, pop, {});
    const auto sets = popular_file_sets(r, pop, s);
    const auto rg = separate_duplicates(build_redundancy_graph(g, r, sets, s.K), s.seed);
    REQUIRE(rg.edges.size() == 1);
    CHECK(rg.edges[0].redundant == std::vector<FileId>{0});

    const auto pre = knapsack_placement(r, sets, s);
    CHECK(pre.x == CacheMatrix{{1, 0, 0, 0}, {1, 0, 0, 0}});
    const auto post = enhance_decisions(rg, r, sets, s, pop, g).placement;
    CHECK(post.x == CacheMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}});

    const double t_pre = offloaded_traffic(pre, s, pop, g, true).T;
    const double t_post = offloaded_traffic(post, s, pop, g, true).T;
    CHECK(t_post > t_pre);

    // Best over every placement with at most one file per node.
    double best = 0.0;
    for (int a = -1; a < 4; ++a)
        for (int b = -1; b < 4; ++b) {
            CacheMatrix x(2, std::vector<std::uint8_t>(4, 0));
            if (a >= 0) x[0][a] = 1;
            if (b >= 0) x[1][b] = 1;
            best = std::max(best, oracle::direct_traffic(x, s, pop.local, [](int, int) { return true; }));
        }
    CHECK(t_post == doctest::Approx(best));
    CHECK(t_post == doctest::Approx(1.4));
}

TEST_CASE("enhancement improves on the knapsack placement on average") {
    double sum_pre = 0.0, sum_post = 0.0;
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        GeneratorConfig cfg;
        cfg.M = 3;
        cfg.F = 8;
        cfg.K = 2;
        cfg.area_side = 25;
        const auto s = generate_scenario(cfg, seed);
        const auto pop = synthesize_local_popularity(s);
        const auto run = run_proposed(s, pop);
        const auto pre = knapsack_placement(run.clustering, run.sets, s);
        sum_pre += offloaded_traffic(pre, s, pop, run.graph, true).T;
        sum_post += offloaded_traffic(run.enhanced.placement, s, pop, run.graph, true).T;
    }
    CHECK(sum_post >= sum_pre);
}

TEST_CASE("proposed placement invariants on seeded scenarios") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const auto in = desk_instance(seed);
        const auto& run = in.run;
        const auto& x = run.enhanced.placement.x;
        CHECK(respects_capacity(run.enhanced.placement, in.s.K));
        for (const auto& c : run.clustering.clusters)
            for (int f = 0; f < in.s.F; ++f) {
                int holders = 0;
                for (int m : c.members) holders += x[m][f];
                CHECK(holders <= 1);
            }
        for (const auto& e : run.redundancy.edges)
            for (int f : e.redundant) CHECK_FALSE((x[e.a][f] && x[e.b][f]));
        const auto& st = run.enhanced.state;
        CHECK(st.writes <= static_cast<std::size_t>(in.s.M) * in.s.F);
        for (int m = 0; m < in.s.M; ++m)
            for (int f = 0; f < in.s.F; ++f) CHECK((x[m][f] == 1) == (st.delta[m][f] == 1));
        for (int m = 0; m < in.s.M; ++m) CHECK(st.remaining_capacity[m] == in.s.K - run.enhanced.placement.load(m));

        const auto again = run_proposed(in.s, in.pop);
        CHECK(again.enhanced.placement.x == x);
        EnhanceOptions det;
        det.random_cluster_fill = false;
        const auto sorted = run_proposed(in.s, in.pop, {}, det);
        CHECK(respects_capacity(sorted.enhanced.placement, in.s.K));
    }
}

TEST_CASE("LPC caches local prefixes") {
    const auto s = oracle::scenario(2, 5, 2, {{0, 0}, {1, 0}}, {1, 3}, 5, 2.0);
    const std::vector<double> row{0.1, 0.3, 0.25, 0.05, 0.3};
    const auto pop = make_popularity(s, {row, row});
    const auto p = baseline_lpc(s, pop);
    CHECK(p.x == CacheMatrix{{0, 1, 0, 0, 1}, {0, 1, 0, 0, 1}});
    CHECK(p.cooperation);
    const double T = offloaded_traffic(p, s, pop, build_node_graph(s), true).T;
    CHECK(T == doctest::Approx((1 + 3) * 0.6 * 2.0));

    GeneratorConfig cfg;
    const auto sc = generate_scenario(cfg, 5);
    const auto pp = synthesize_local_popularity(sc);
    const auto lpc = baseline_lpc(sc, pp);
    for (int m = 0; m < sc.M; ++m) {
        std::vector<int> idx(sc.F);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return pp.local[m][a] > pp.local[m][b]; });
        idx.resize(sc.K);
        CHECK(lpc.x[m] == row_of(idx, sc.F));
    }
}

TEST_CASE("GPC caches the global prefix without cooperation") {
    const auto s = oracle::scenario(2, 5, 2, {{0, 0}, {1, 0}}, {1, 1}, 5);
    const std::vector<double> row{0.1, 0.3, 0.25, 0.05, 0.3};
    auto pop = make_popularity(s, {row, row});
    auto p = baseline_gpc(s, pop);
    CHECK(p.x == baseline_lpc(s, pop).x);
    CHECK_FALSE(p.cooperation);

    pop = make_popularity(s, std::vector<std::vector<double>>(2, std::vector<double>(5, 0.2)));
    CHECK(baseline_gpc(s, pop).x == CacheMatrix{{1, 1, 0, 0, 0}, {1, 1, 0, 0, 0}});

    GeneratorConfig cfg;
    const auto sc = generate_scenario(cfg, 6);
    const auto pp = synthesize_local_popularity(sc);
    const auto gpc = baseline_gpc(sc, pp);
    std::vector<int> idx(sc.F);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return pp.global[a] > pp.global[b]; });
    idx.resize(sc.K);
    double closed = 0.0;
    for (int m = 0; m < sc.M; ++m) {
        CHECK(gpc.x[m] == row_of(idx, sc.F));
        for (int f : idx) closed += sc.rates[m] * pp.local[m][f] * sc.L;
    }
    CHECK(offloaded_traffic(gpc, sc, pp, build_node_graph(sc)).T == doctest::Approx(closed).epsilon(1e-12));
}
