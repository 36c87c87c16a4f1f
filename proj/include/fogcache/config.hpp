#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fogcache/clustering.hpp"
#include "fogcache/eval.hpp"
#include "fogcache/model.hpp"

namespace fogcache {

using json = nlohmann::json;

/// Scenario file schema (JSON object):
///   M, F, K: integers; L: bits; positions: [[x, y], ...]; rates: [...];
///   gamma_d, gamma_l, zipf_z, locality: numbers; seed: integer;
///   cluster_size_cap: integer.
/// Missing optional keys (gamma_l, zipf_z, locality, cluster_size_cap,
/// seed) take the Scenario defaults. Parsing validates the result.
json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const json& j);

json generator_to_json(const GeneratorConfig& g);
GeneratorConfig generator_from_json(const json& j);

/// One sweep: `param` is one of K, z, F, gamma_d.
struct ExperimentSpec {
    GeneratorConfig base;
    std::string sweep_param = "K";
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> schemes{"proposed", "lpc", "gpc"};
    std::string output = "results";

    bool operator==(const ExperimentSpec&) const = default;
};

void validate_experiment(const ExperimentSpec& e);
json experiment_to_json(const ExperimentSpec& e);
ExperimentSpec experiment_from_json(const json& j);

/// Desk-scale defaults: M=10, F=500, K=25, z=0.6, L=2 Gb, gamma_d=20,
/// K swept over {10, 25, 50, 100}, 20 seeds.
ExperimentSpec default_experiment();

json clustering_to_json(const ClusteringResult& r);
/// Member lists only; the caller rebuilds the rest with make_clustering.
std::vector<VertexSet> cluster_members_from_json(const json& j);

json report_to_json(const TrafficReport& r);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

}  // namespace fogcache
