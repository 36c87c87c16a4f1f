#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fogcache/config.hpp"
#include "fogcache/eval.hpp"
#include "fogcache/placement.hpp"

namespace fogcache {

struct SchemeOutcome {
    Placement placement;
    TrafficReport report;
    int n_clusters = 0;
};

/// Runs one scheme ("proposed", "lpc" or "gpc") end to end. Baselines are
/// decomposed against the all-nonclustered partition of the graph they are
/// evaluated on, so every report carries T_c, T_n and T_d.
SchemeOutcome run_scheme(const std::string& scheme, const Scenario& s, const PopularityModel& pop);

/// Sets the named parameter on a generator config.
void apply_sweep_value(GeneratorConfig& cfg, const std::string& param, double value);

struct ResultRow {
    std::string sweep_param;
    double value = 0.0;
    std::uint64_t seed = 0;
    std::string scheme;
    double T = 0.0;
    double T_c = 0.0;
    double T_n = 0.0;
    double T_d = 0.0;
    int n_clusters = 0;
    double wall_ms = 0.0;
};

/// Every (value, seed, scheme) grid point, in that nesting order. Grid
/// points run on `threads` workers; row order does not depend on it.
std::vector<ResultRow> run_sweep(const ExperimentSpec& e, int threads = 1);

struct SummaryRow {
    std::string sweep_param;
    double value = 0.0;
    std::string scheme;
    int runs = 0;
    double mean_T = 0.0;
    double mean_T_c = 0.0;
    double mean_T_n = 0.0;
    double mean_T_d = 0.0;
    double mean_clusters = 0.0;
};

/// Means over seeds, ordered by first appearance of (value, scheme).
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

/// Columns: sweep_param,value,seed,scheme,T,T_c,T_n,T_d,n_clusters,wall_ms
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool with_wall_time = true);
/// Columns: sweep_param,value,scheme,runs,mean_T,mean_T_c,mean_T_n,mean_T_d,mean_clusters
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

/// FNV-1a over the results CSV with the wall_ms column dropped.
std::uint64_t results_hash(const std::vector<ResultRow>& rows);

}  // namespace fogcache
