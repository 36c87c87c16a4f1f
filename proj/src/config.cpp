#include "fogcache/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace fogcache {

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string("bad value for ") + key);
    }
}

template <typename T>
T require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing key ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string("bad value for ") + key);
    }
}

}  // namespace

json scenario_to_json(const Scenario& s) {
    json pos = json::array();
    for (const auto& p : s.positions) pos.push_back({p.x, p.y});
    return json{
        {"M", s.M},
        {"F", s.F},
        {"K", s.K},
        {"L", s.L},
        {"positions", pos},
        {"rates", s.rates},
        {"gamma_d", s.gamma_d},
        {"gamma_l", s.gamma_l},
        {"zipf_z", s.zipf_z},
        {"seed", s.seed},
        {"cluster_size_cap", s.cluster_size_cap},
        {"locality", s.locality},
    };
}

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("scenario must be a JSON object");
    Scenario s;
    s.M = require<int>(j, "M");
    s.F = require<int>(j, "F");
    s.K = require<int>(j, "K");
    s.L = require<double>(j, "L");
    for (const auto& p : require<json>(j, "positions")) {
        if (!p.is_array() || p.size() != 2) throw ValidationError("each position must be [x, y]");
        s.positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    s.rates = require<std::vector<double>>(j, "rates");
    s.gamma_d = require<double>(j, "gamma_d");
    s.gamma_l = get_or<double>(j, "gamma_l", s.gamma_l);
    s.zipf_z = get_or<double>(j, "zipf_z", s.zipf_z);
    s.seed = get_or<std::uint64_t>(j, "seed", s.seed);
    s.cluster_size_cap = get_or<int>(j, "cluster_size_cap", s.cluster_size_cap);
    s.locality = get_or<double>(j, "locality", s.locality);
    return validate_scenario(s);
}

json generator_to_json(const GeneratorConfig& g) {
    return json{
        {"M", g.M},
        {"F", g.F},
        {"K", g.K},
        {"L", g.L},
        {"gamma_d", g.gamma_d},
        {"gamma_l", g.gamma_l},
        {"zipf_z", g.zipf_z},
        {"cluster_size_cap", g.cluster_size_cap},
        {"locality", g.locality},
        {"area_side", g.area_side},
        {"rate_min", g.rate_min},
        {"rate_max", g.rate_max},
    };
}

GeneratorConfig generator_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("generator config must be a JSON object");
    GeneratorConfig g;
    g.M = get_or<int>(j, "M", g.M);
    g.F = get_or<int>(j, "F", g.F);
    g.K = get_or<int>(j, "K", g.K);
    g.L = get_or<double>(j, "L", g.L);
    g.gamma_d = get_or<double>(j, "gamma_d", g.gamma_d);
    g.gamma_l = get_or<double>(j, "gamma_l", g.gamma_l);
    g.zipf_z = get_or<double>(j, "zipf_z", g.zipf_z);
    g.cluster_size_cap = get_or<int>(j, "cluster_size_cap", g.cluster_size_cap);
    g.locality = get_or<double>(j, "locality", g.locality);
    g.area_side = get_or<double>(j, "area_side", g.area_side);
    g.rate_min = get_or<double>(j, "rate_min", g.rate_min);
    g.rate_max = get_or<double>(j, "rate_max", g.rate_max);
    return g;
}

void validate_experiment(const ExperimentSpec& e) {
    static const std::vector<std::string> params{"K", "z", "F", "gamma_d"};
    static const std::vector<std::string> known{"proposed", "lpc", "gpc"};
    if (std::find(params.begin(), params.end(), e.sweep_param) == params.end())
        throw ValidationError("sweep parameter must be one of K, z, F, gamma_d");
    if (e.values.empty()) throw ValidationError("sweep values are empty");
    if (e.seeds.empty()) throw ValidationError("seeds are empty");
    if (e.schemes.empty()) throw ValidationError("schemes are empty");
    for (const auto& s : e.schemes) {
        if (std::find(known.begin(), known.end(), s) == known.end()) throw ValidationError("unknown scheme " + s);
    }
    for (double v : e.values) {
        if (!std::isfinite(v)) throw ValidationError("sweep values must be finite");
        const bool integral = v == std::floor(v);
        if (e.sweep_param == "K" && (!integral || v < 1 || v > e.base.F)) throw ValidationError("K sweep value must be an integer in [1, F]");
        if (e.sweep_param == "F" && (!integral || v < e.base.K)) throw ValidationError("F sweep value must be an integer >= K");
        if (e.sweep_param == "z" && v < 0) throw ValidationError("z sweep value must be non-negative");
        if (e.sweep_param == "gamma_d" && v < 0) throw ValidationError("gamma_d sweep value must be non-negative");
    }
    if (e.sweep_param != "K" && e.base.K > e.base.F) throw ValidationError("K exceeds F");
}

json experiment_to_json(const ExperimentSpec& e) {
    return json{
        {"base", generator_to_json(e.base)},
        {"sweep", {{"param", e.sweep_param}, {"values", e.values}}},
        {"seeds", e.seeds},
        {"schemes", e.schemes},
        {"output", e.output},
    };
}

ExperimentSpec experiment_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("experiment must be a JSON object");
    ExperimentSpec e;
    if (j.contains("base")) e.base = generator_from_json(j.at("base"));
    const auto sweep = require<json>(j, "sweep");
    e.sweep_param = require<std::string>(sweep, "param");
    e.values = require<std::vector<double>>(sweep, "values");
    e.seeds = require<std::vector<std::uint64_t>>(j, "seeds");
    e.schemes = get_or<std::vector<std::string>>(j, "schemes", e.schemes);
    e.output = get_or<std::string>(j, "output", e.output);
    validate_experiment(e);
    return e;
}

ExperimentSpec default_experiment() {
    ExperimentSpec e;
    e.sweep_param = "K";
    e.values = {10, 25, 50, 100};
    for (std::uint64_t s = 1; s <= 20; ++s) e.seeds.push_back(s);
    return e;
}

json clustering_to_json(const ClusteringResult& r) {
    json clusters = json::array();
    for (const auto& c : r.clusters) {
        clusters.push_back({{"members", c.members}, {"capacity", c.capacity}, {"weight", c.weight}});
    }
    json partition = json::array();
    for (std::size_t m = 0; m < r.partition.size(); ++m) {
        const auto& p = r.partition[m];
        partition.push_back({{"node", m}, {"intra", p.intra}, {"inter", p.inter}, {"nonclustered", p.nonclustered}});
    }
    return json{
        {"clusters", clusters},
        {"nonclustered", r.nonclustered},
        {"objective", r.objective},
        {"maximal_cliques", r.maximal_clique_count},
        {"candidates", r.candidate_count},
        {"weighted_vertices", r.weighted_vertex_count},
        {"cooperators", partition},
    };
}

std::vector<VertexSet> cluster_members_from_json(const json& j) {
    std::vector<VertexSet> out;
    for (const auto& c : require<json>(j, "clusters")) {
        auto members = require<VertexSet>(c, "members");
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

json report_to_json(const TrafficReport& r) {
    json j{{"scheme", r.scheme}, {"T", r.T}, {"per_node", r.per_node}};
    if (r.T_c) j["T_c"] = *r.T_c;
    if (r.T_n) j["T_n"] = *r.T_n;
    if (r.T_d) j["T_d"] = *r.T_d;
    return j;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace fogcache
