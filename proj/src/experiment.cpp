#include "fogcache/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fogcache {

SchemeOutcome run_scheme(const std::string& scheme, const Scenario& s, const PopularityModel& pop) {
    SchemeOutcome out;
    if (scheme == "proposed") {
        auto run = run_proposed(s, pop);
        out.placement = std::move(run.enhanced.placement);
        out.report = offloaded_traffic(out.placement, s, pop, run.graph, true, &run.clustering);
        out.n_clusters = static_cast<int>(run.clustering.clusters.size());
    } else if (scheme == "lpc") {
        const auto g = build_node_graph(s);
        const auto flat = make_clustering(g, s, pop, {});
        out.placement = baseline_lpc(s, pop);
        out.report = offloaded_traffic(out.placement, s, pop, g, true, &flat);
    } else if (scheme == "gpc") {
        const auto g = NodeGraph::empty(s.M);
        const auto flat = make_clustering(g, s, pop, {});
        out.placement = baseline_gpc(s, pop);
        out.report = offloaded_traffic(out.placement, s, pop, g, false, &flat);
    } else {
        throw ValidationError("unknown scheme " + scheme);
    }
    out.report.scheme = scheme;
    return out;
}

void apply_sweep_value(GeneratorConfig& cfg, const std::string& param, double value) {
    if (param == "K") cfg.K = static_cast<int>(value);
    else if (param == "F") cfg.F = static_cast<int>(value);
    else if (param == "z") cfg.zipf_z = value;
    else if (param == "gamma_d") cfg.gamma_d = value;
    else throw ValidationError("unknown sweep parameter " + param);
}

std::vector<ResultRow> run_sweep(const ExperimentSpec& e, int threads) {
    validate_experiment(e);
    struct Point {
        double value;
        std::uint64_t seed;
    };
    std::vector<Point> grid;
    for (double v : e.values) {
        for (auto seed : e.seeds) grid.push_back({v, seed});
    }
    const std::size_t per_point = e.schemes.size();
    std::vector<ResultRow> rows(grid.size() * per_point);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            GeneratorConfig cfg = e.base;
            apply_sweep_value(cfg, e.sweep_param, grid[i].value);
            const auto s = generate_scenario(cfg, grid[i].seed);
            const auto pop = synthesize_local_popularity(s);
            for (std::size_t k = 0; k < per_point; ++k) {
                const auto t0 = std::chrono::steady_clock::now();
                const auto outcome = run_scheme(e.schemes[k], s, pop);
                const auto t1 = std::chrono::steady_clock::now();
                auto& row = rows[i * per_point + k];
                row.sweep_param = e.sweep_param;
                row.value = grid[i].value;
                row.seed = grid[i].seed;
                row.scheme = e.schemes[k];
                row.T = outcome.report.T;
                row.T_c = outcome.report.T_c.value_or(0.0);
                row.T_n = outcome.report.T_n.value_or(0.0);
                row.T_d = outcome.report.T_d.value_or(0.0);
                row.n_clusters = outcome.n_clusters;
                row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            }
        }
    };

    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(grid.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return rows;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
    std::vector<SummaryRow> out;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    for (const auto& r : rows) {
        const auto key = std::make_pair(format_double(r.value), r.scheme);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, out.size()).first;
            SummaryRow s;
            s.sweep_param = r.sweep_param;
            s.value = r.value;
            s.scheme = r.scheme;
            out.push_back(s);
        }
        auto& s = out[it->second];
        ++s.runs;
        s.mean_T += r.T;
        s.mean_T_c += r.T_c;
        s.mean_T_n += r.T_n;
        s.mean_T_d += r.T_d;
        s.mean_clusters += r.n_clusters;
    }
    for (auto& s : out) {
        s.mean_T /= s.runs;
        s.mean_T_c /= s.runs;
        s.mean_T_n /= s.runs;
        s.mean_T_d /= s.runs;
        s.mean_clusters /= s.runs;
    }
    return out;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool with_wall_time) {
    out << "sweep_param,value,seed,scheme,T,T_c,T_n,T_d,n_clusters" << (with_wall_time ? ",wall_ms" : "") << '\n';
    for (const auto& r : rows) {
        out << r.sweep_param << ',' << format_double(r.value) << ',' << r.seed << ',' << r.scheme << ','
            << format_double(r.T) << ',' << format_double(r.T_c) << ',' << format_double(r.T_n) << ','
            << format_double(r.T_d) << ',' << r.n_clusters;
        if (with_wall_time) out << ',' << format_double(std::round(r.wall_ms * 1000.0) / 1000.0);
        out << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "sweep_param,value,scheme,runs,mean_T,mean_T_c,mean_T_n,mean_T_d,mean_clusters\n";
    for (const auto& r : rows) {
        out << r.sweep_param << ',' << format_double(r.value) << ',' << r.scheme << ',' << r.runs << ','
            << format_double(r.mean_T) << ',' << format_double(r.mean_T_c) << ',' << format_double(r.mean_T_n) << ','
            << format_double(r.mean_T_d) << ',' << format_double(r.mean_clusters) << '\n';
    }
}

std::uint64_t results_hash(const std::vector<ResultRow>& rows) {
    std::ostringstream os;
    write_results_csv(os, rows, false);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : os.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace fogcache
