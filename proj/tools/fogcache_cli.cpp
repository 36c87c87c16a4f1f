// fogcache: command-line front end for the cooperative caching pipeline.
//
// Exit codes: 0 ok, 1 validation error (bad flags, config or input files),
// 2 runtime error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fogcache/clustering.hpp"
#include "fogcache/config.hpp"
#include "fogcache/eval.hpp"
#include "fogcache/experiment.hpp"
#include "fogcache/graph.hpp"
#include "fogcache/placement.hpp"
#include "fogcache/workload.hpp"

namespace fs = std::filesystem;
using namespace fogcache;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

/// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

struct Inputs {
    std::string scenario_path;
    std::string popularity_path;
    std::optional<std::uint64_t> seed;

    void add_to(CLI::App* cmd) {
        cmd->add_option("-s,--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
        cmd->add_option("--popularity", popularity_path, "Local popularity CSV (default: synthesized)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--seed", seed, "Override the scenario seed");
    }

    Scenario scenario() const {
        auto s = scenario_from_json(read_json_file(scenario_path));
        if (seed) s.seed = *seed;
        return s;
    }

    PopularityModel popularity(const Scenario& s) const {
        if (popularity_path.empty()) return synthesize_local_popularity(s);
        std::ifstream in(popularity_path);
        if (!in) throw ValidationError("cannot open " + popularity_path);
        return read_popularity_csv(in, s);
    }
};

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    // "1-20" or "1,2,5"
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    try {
        while (std::getline(ss, item, ',')) {
            const auto dash = item.find('-');
            if (dash == std::string::npos) {
                out.push_back(std::stoull(item));
            } else {
                const auto lo = std::stoull(item.substr(0, dash));
                const auto hi = std::stoull(item.substr(dash + 1));
                if (hi < lo) throw ValidationError("bad seed range " + item);
                for (auto v = lo; v <= hi; ++v) out.push_back(v);
            }
        }
    } catch (const std::logic_error&) {
        throw ValidationError("bad seed list " + text);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph-based cooperative caching for fog access networks"};
    app.require_subcommand(1);
    std::string output;
    int threads = 1;

    // generate
    auto* gen = app.add_subcommand("generate", "Emit a seeded scenario file");
    GeneratorConfig gcfg;
    std::string gen_config;
    std::uint64_t gen_seed = 1;
    gen->add_option("--config", gen_config, "Generator config JSON (flags override it)")->check(CLI::ExistingFile);
    gen->add_option("--M", gcfg.M, "Number of cache nodes");
    gen->add_option("--F", gcfg.F, "Library size");
    gen->add_option("--K", gcfg.K, "Per-node storage in files");
    gen->add_option("--L", gcfg.L, "File size in bits");
    gen->add_option("--gamma-d", gcfg.gamma_d, "Distance threshold (m)");
    gen->add_option("--gamma-l", gcfg.gamma_l, "Load-difference threshold (req/s)");
    gen->add_option("--z", gcfg.zipf_z, "Zipf skewness");
    gen->add_option("--locality", gcfg.locality, "Local popularity reshuffle strength in [0, 1]");
    gen->add_option("--cap", gcfg.cluster_size_cap, "Maximum cluster size");
    gen->add_option("--area", gcfg.area_side, "Side of the deployment square (m)");
    gen->add_option("--rate-min", gcfg.rate_min, "Lower bound of node request rates");
    gen->add_option("--rate-max", gcfg.rate_max, "Upper bound of node request rates");
    gen->add_option("--seed", gen_seed, "Scenario seed");
    gen->add_option("-o,--output", output, "Output file (default stdout)");

    // cluster
    auto* clu = app.add_subcommand("cluster", "Solve the clustering subproblem and print the result as JSON");
    Inputs clu_in;
    std::string dump_graph;
    clu_in.add_to(clu);
    clu->add_option("--dump-graph", dump_graph, "Write node and conflict graph adjacency lists here");
    clu->add_option("-o,--output", output, "Output file (default stdout)");
    clu->add_option("--threads", threads, "Worker threads for the MWIS passes");

    // place
    auto* pla = app.add_subcommand("place", "Compute a placement and write it as sparse CSV");
    Inputs pla_in;
    std::string scheme = "proposed";
    std::string summary_path;
    pla_in.add_to(pla);
    pla->add_option("--scheme", scheme, "proposed, lpc or gpc")->check(CLI::IsMember({"proposed", "lpc", "gpc"}));
    pla->add_option("-o,--output", output, "Placement CSV (default stdout)");
    pla->add_option("--summary", summary_path, "Also write a JSON traffic summary here");

    // evaluate
    auto* eva = app.add_subcommand("evaluate", "Evaluate offloaded traffic of a placement CSV");
    Inputs eva_in;
    std::string placement_path;
    std::string clustering_path;
    bool no_coop = false;
    std::string label = "custom";
    eva_in.add_to(eva);
    eva->add_option("-p,--placement", placement_path, "Placement CSV")->required()->check(CLI::ExistingFile);
    eva->add_option("--clustering", clustering_path, "Clustering JSON for the T_c/T_n/T_d split")->check(CLI::ExistingFile);
    eva->add_flag("--no-cooperation", no_coop, "Evaluate with every cooperator set empty");
    eva->add_option("--label", label, "Scheme label for the report");
    eva->add_option("-o,--output", output, "Output file (default stdout)");

    // sweep
    auto* swp = app.add_subcommand("sweep", "Run a parameter sweep and write CSV results");
    std::string sweep_config;
    std::string sweep_param;
    std::vector<double> sweep_values;
    std::string sweep_seeds;
    std::vector<std::string> sweep_schemes;
    swp->add_option("--config", sweep_config, "Experiment JSON (flags override it)")->check(CLI::ExistingFile);
    swp->add_option("--param", sweep_param, "K, z, F or gamma_d")->check(CLI::IsMember({"K", "z", "F", "gamma_d"}));
    swp->add_option("--values", sweep_values, "Sweep values")->delimiter(',');
    swp->add_option("--seeds", sweep_seeds, "Seeds, e.g. 1-20 or 1,4,9");
    swp->add_option("--seed", sweep_seeds, "Single seed (same as --seeds N)");
    swp->add_option("--schemes", sweep_schemes, "Subset of proposed,lpc,gpc")->delimiter(',');
    swp->add_option("-o,--output", output, "Output directory");
    swp->add_option("--threads", threads, "Worker threads");

    // oracle
    auto* ora = app.add_subcommand("oracle", "Compare heuristics with exhaustive optima on a tiny scenario");
    Inputs ora_in;
    std::uint64_t budget = 5'000'000;
    int mwis_limit = 20;
    ora_in.add_to(ora);
    ora->add_option("--budget", budget, "Maximum placements the exhaustive search may evaluate");
    ora->add_option("--mwis-limit", mwis_limit, "Largest conflict graph handed to exact MWIS");
    ora->add_option("-o,--output", output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*gen) {
            GeneratorConfig cfg = gcfg;
            if (!gen_config.empty()) {
                // Explicit flags win over the file.
                auto base = generator_from_json(read_json_file(gen_config));
                const GeneratorConfig defaults;
                auto pick = [&](auto GeneratorConfig::*field) {
                    if (gcfg.*field == defaults.*field) cfg.*field = base.*field;
                };
                pick(&GeneratorConfig::M);
                pick(&GeneratorConfig::F);
                pick(&GeneratorConfig::K);
                pick(&GeneratorConfig::L);
                pick(&GeneratorConfig::gamma_d);
                pick(&GeneratorConfig::gamma_l);
                pick(&GeneratorConfig::zipf_z);
                pick(&GeneratorConfig::cluster_size_cap);
                pick(&GeneratorConfig::locality);
                pick(&GeneratorConfig::area_side);
                pick(&GeneratorConfig::rate_min);
                pick(&GeneratorConfig::rate_max);
            }
            const auto s = generate_scenario(cfg, gen_seed);
            emit(output, scenario_to_json(s).dump(2) + "\n");
        } else if (*clu) {
            const auto s = clu_in.scenario();
            const auto pop = clu_in.popularity(s);
            const auto g = build_node_graph(s);
            const auto r = solve_clustering(s, pop, g, {.threads = threads});
            if (!dump_graph.empty()) {
                std::ostringstream os;
                os << "# node graph\n";
                write_adjacency_list(os, g.adjacency);
                const auto cands = enumerate_complete_subgraphs(maximal_cliques(g), s.cluster_size_cap);
                std::vector<double> weights;
                for (const auto& c : cands) weights.push_back(make_candidate(c, s, pop).weight);
                const auto wg = build_weighted_graph(cands, weights);
                os << "# conflict graph over candidate clusters\n";
                write_adjacency_list(os, wg.adjacency);
                emit(dump_graph, os.str());
            }
            emit(output, clustering_to_json(r).dump(2) + "\n");
        } else if (*pla) {
            const auto s = pla_in.scenario();
            const auto pop = pla_in.popularity(s);
            const auto outcome = run_scheme(scheme, s, pop);
            std::ostringstream os;
            write_placement_csv(os, outcome.placement);
            emit(output, os.str());
            if (!summary_path.empty()) {
                auto j = report_to_json(outcome.report);
                j["n_clusters"] = outcome.n_clusters;
                j["cooperation"] = outcome.placement.cooperation;
                emit(summary_path, j.dump(2) + "\n");
            }
        } else if (*eva) {
            const auto s = eva_in.scenario();
            const auto pop = eva_in.popularity(s);
            std::ifstream in(placement_path);
            auto p = read_placement_csv(in, s.M, s.F);
            p.scheme = label;
            const auto g = no_coop ? NodeGraph::empty(s.M) : build_node_graph(s);
            std::optional<ClusteringResult> r;
            if (!clustering_path.empty()) {
                try {
                    r = make_clustering(g, s, pop, cluster_members_from_json(read_json_file(clustering_path)));
                } catch (const std::invalid_argument& e) {
                    throw ValidationError(std::string("clustering: ") + e.what());
                }
            } else {
                r = make_clustering(g, s, pop, {});
            }
            auto rep = offloaded_traffic(p, s, pop, g, !no_coop, &*r);
            auto j = report_to_json(rep);
            j["capacity_ok"] = respects_capacity(p, s.K);
            emit(output, j.dump(2) + "\n");
        } else if (*swp) {
            ExperimentSpec e = sweep_config.empty() ? default_experiment() : experiment_from_json(read_json_file(sweep_config));
            if (!sweep_param.empty()) e.sweep_param = sweep_param;
            if (!sweep_values.empty()) e.values = sweep_values;
            if (!sweep_seeds.empty()) e.seeds = parse_seeds(sweep_seeds);
            if (!sweep_schemes.empty()) e.schemes = sweep_schemes;
            if (!output.empty()) e.output = output;
            validate_experiment(e);

            const auto rows = run_sweep(e, threads);
            const fs::path dir(e.output);
            std::ostringstream results;
            write_results_csv(results, rows);
            emit((dir / "results.csv").string(), results.str());
            std::ostringstream summary;
            write_summary_csv(summary, summarize(rows));
            emit((dir / "summary.csv").string(), summary.str());
            json meta{{"experiment", experiment_to_json(e)}, {"rows", rows.size()}};
            char hash[17];
            std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(results_hash(rows)));
            meta["results_hash"] = hash;
            emit((dir / "summary.json").string(), meta.dump(2) + "\n");
            std::cout << summary.str();
        } else if (*ora) {
            const auto s = ora_in.scenario();
            const auto pop = ora_in.popularity(s);
            const auto g = build_node_graph(s);
            const auto best = exact_placement_oracle(s, pop, g, budget);
            json j{{"T_star", best.T}, {"evaluated", best.evaluated}};
            for (const char* name : {"proposed", "lpc", "gpc"}) {
                const double t = run_scheme(name, s, pop).report.T;
                j[name] = {{"T", t}, {"ratio", best.T > 0 ? t / best.T : 1.0}};
            }
            const auto cands = enumerate_complete_subgraphs(maximal_cliques(g), s.cluster_size_cap);
            std::vector<double> weights;
            for (const auto& c : cands) weights.push_back(make_candidate(c, s, pop).weight);
            const auto wg = build_weighted_graph(cands, weights);
            json mwis{{"vertices", wg.size()}, {"greedy", greedy_mwis(wg).weight},
                      {"single_start", single_start_greedy_mwis(wg).weight}};
            if (wg.size() <= mwis_limit) mwis["exact"] = exact_mwis(wg, mwis_limit).weight;
            j["mwis"] = mwis;
            emit(output, j.dump(2) + "\n");
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
