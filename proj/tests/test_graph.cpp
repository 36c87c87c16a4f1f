#include <doctest.h>

#include <sstream>

#include "fogcache/graph.hpp"
#include "oracles.hpp"

using namespace fogcache;

namespace {

using Edges = std::vector<std::pair<int, int>>;

WeightedGraph random_weighted(int n, double density, std::mt19937_64& rng, Edges& edges) {
    std::bernoulli_distribution coin(density);
    std::uniform_real_distribution<double> weight(0.0, 10.0);
    std::vector<double> w(n);
    for (auto& v : w) v = weight(rng);
    edges.clear();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    return make_weighted_graph(w, edges);
}

// Three heavy mutually independent vertices, each conflicting with a block
// of five lighter independent vertices, plus one light hub touching all.
WeightedGraph trap_graph() {
    std::vector<double> w{10, 9.5, 9, 7, 7, 7, 7, 7, 1};
    Edges e;
    for (int h = 0; h < 3; ++h)
        for (int l = 3; l < 8; ++l) e.emplace_back(h, l);
    for (int v = 0; v < 8; ++v) e.emplace_back(v, 8);
    return make_weighted_graph(w, e);
}

}  // namespace

TEST_CASE("maximal cliques of small fixed graphs") {
    CHECK(maximal_cliques(NodeGraph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}})) == std::vector<VertexSet>{{0, 1, 2}});
    CHECK(maximal_cliques(NodeGraph::from_edges(3, {{0, 1}, {1, 2}})) == std::vector<VertexSet>{{0, 1}, {1, 2}});
    CHECK(maximal_cliques(NodeGraph::empty(4)).empty());
    CHECK(maximal_cliques(NodeGraph::from_edges(4, {{0, 1}, {2, 3}})) == std::vector<VertexSet>{{0, 1}, {2, 3}});
}

TEST_CASE("adjacency tables hold owner plus higher neighbours") {
    const auto g = NodeGraph::from_edges(4, {{0, 2}, {1, 2}, {2, 3}, {0, 1}});
    const auto t = adjacency_tables(g);
    REQUIRE(t.size() == 4);
    CHECK(t[0].members == VertexSet{0, 1, 2});
    CHECK(t[1].members == VertexSet{1, 2});
    CHECK(t[2].members == VertexSet{2, 3});
    CHECK(t[3].members == VertexSet{3});
}

TEST_CASE("maximal cliques equal exhaustive enumeration on random graphs") {
    std::mt19937_64 rng(2024);
    for (double density : {0.2, 0.5, 0.8}) {
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 2 + trial % 11;
            const auto g = oracle::random_graph(n, density, rng);
            CHECK(maximal_cliques(g) == oracle::maximal_cliques(g));
        }
    }
}

TEST_CASE("complete subgraph enumeration") {
    CHECK(enumerate_complete_subgraphs({{0, 1, 2}}, 3) == std::vector<VertexSet>{{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}});
    CHECK(enumerate_complete_subgraphs({{0, 1}, {1, 2}}, 5) == std::vector<VertexSet>{{0, 1}, {1, 2}});
    CHECK(enumerate_complete_subgraphs({{0, 1, 2}}, 2) == std::vector<VertexSet>{{0, 1}, {0, 2}, {1, 2}});
    CHECK_THROWS_AS(enumerate_complete_subgraphs({{0, 1}}, 1), std::invalid_argument);

    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = oracle::random_graph(3 + trial % 8, 0.6, rng);
        const auto got = enumerate_complete_subgraphs(maximal_cliques(g), 4);
        const std::set<VertexSet> as_set(got.begin(), got.end());
        CHECK(as_set.size() == got.size());
        CHECK(as_set == oracle::cliques_in_range(g, 2, 4));
        for (std::size_t i = 1; i < got.size(); ++i) {
            const bool ordered = got[i - 1].size() < got[i].size() ||
                                 (got[i - 1].size() == got[i].size() && got[i - 1] < got[i]);
            CHECK(ordered);
        }
    }
}

TEST_CASE("conflict graph links overlapping candidates") {
    auto g = build_weighted_graph({{0, 1}, {1, 2}}, {1.0, 1.0});
    CHECK(g.num_edges() == 1);
    CHECK(g.adjacent(0, 1));
    g = build_weighted_graph({{0, 1}, {2, 3}}, {1.0, 1.0});
    CHECK(g.num_edges() == 0);

    g = build_weighted_graph({{0, 1}, {1, 2}, {2, 3}}, {1.0, 0.0, -2.0});
    CHECK(g.size() == 1);
    CHECK(g.source_index == std::vector<int>{0});
    CHECK_THROWS_AS(build_weighted_graph({{0, 1}}, {}), std::invalid_argument);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto ng = oracle::random_graph(9, 0.5, rng);
        const auto cands = enumerate_complete_subgraphs(maximal_cliques(ng), 3);
        std::vector<double> w(cands.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<double>(i % 4);
        const auto wg = build_weighted_graph(cands, w);
        for (int a = 0; a < wg.size(); ++a) {
            CHECK(wg.weights[a] > 0.0);
            CHECK(wg.vertices[a] == cands[wg.source_index[a]]);
            for (int b = 0; b < wg.size(); ++b) {
                bool overlap = false;
                for (int u : wg.vertices[a])
                    for (int v : wg.vertices[b]) overlap |= u == v;
                CHECK(wg.adjacent(a, b) == (a != b && overlap));
            }
        }
    }
}

TEST_CASE("greedy and exact MWIS on small graphs") {
    const auto path = make_weighted_graph({1, 3, 1}, {{0, 1}, {1, 2}});
    CHECK(greedy_mwis(path).vertices == std::vector<int>{1});
    CHECK(greedy_mwis(path).weight == 3);
    CHECK(exact_mwis(path).vertices == std::vector<int>{1});
    CHECK(exact_mwis(path).weight == 3);

    const auto single = make_weighted_graph({7}, {});
    CHECK(exact_mwis(single).vertices == std::vector<int>{0});
    CHECK(exact_mwis(single).weight == 7);

    const auto tri = make_weighted_graph({5, 4, 3}, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(exact_mwis(tri).vertices == std::vector<int>{0});
    CHECK(exact_mwis(tri).weight == 5);

    const auto empty = make_weighted_graph({}, {});
    CHECK(greedy_mwis(empty).vertices.empty());
    CHECK(exact_mwis(empty).vertices.empty());

    // Equal optima: {0, 2} and {1, 3} both weigh 2.
    const auto tie = make_weighted_graph({1, 1, 1, 1}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(exact_mwis(tie).vertices == std::vector<int>{0, 2});

    CHECK_THROWS_AS(exact_mwis(make_weighted_graph(std::vector<double>(21, 1.0), {})), std::length_error);
    CHECK_THROWS(make_weighted_graph({-1.0}, {}));
}

TEST_CASE("multi-start escapes the heaviest-seed trap") {
    const auto g = trap_graph();
    const auto single = single_start_greedy_mwis(g);
    const auto multi = greedy_mwis(g);
    CHECK(single.vertices == std::vector<int>{0, 1, 2});
    CHECK(single.weight == doctest::Approx(28.5));
    CHECK(multi.vertices == std::vector<int>{3, 4, 5, 6, 7});
    CHECK(multi.weight == doctest::Approx(35.0));
    CHECK(greedy_pass(g, 3).vertices == multi.vertices);
    CHECK(exact_mwis(g).weight == doctest::Approx(35.0));
}

TEST_CASE("MWIS bounds against the exhaustive oracle") {
    std::mt19937_64 rng(314);
    Edges edges;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 18;
        const auto g = random_weighted(n, 0.15 + 0.1 * (trial % 7), rng, edges);
        const auto best = oracle::mwis_weight(g.weights, edges);
        const auto exact = exact_mwis(g);
        const auto multi = greedy_mwis(g);
        const auto single = single_start_greedy_mwis(g);
        CHECK(exact.weight == doctest::Approx(best).epsilon(1e-12));
        CHECK(multi.weight <= exact.weight + 1e-9);
        CHECK(multi.weight >= single.weight - 1e-12);
        CHECK(is_independent(g, exact.vertices));
        CHECK(is_independent(g, multi.vertices));
        CHECK(is_independent(g, single.vertices));
        for (int t : {2, 3, 8}) {
            const auto par = greedy_mwis(g, t);
            CHECK(par.vertices == multi.vertices);
            CHECK(par.weight == multi.weight);
        }
    }
}

TEST_CASE("independence check and adjacency dump") {
    const auto g = make_weighted_graph({1, 1, 1}, {{0, 1}});
    CHECK(is_independent(g, {0, 2}));
    CHECK_FALSE(is_independent(g, {0, 1}));
    std::ostringstream os;
    write_adjacency_list(os, g.adjacency);
    CHECK(os.str() == "0: 1\n1: 0\n2:\n");
}
