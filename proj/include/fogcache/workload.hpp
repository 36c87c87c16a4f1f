#pragma once

#include <iosfwd>
#include <vector>

#include "fogcache/model.hpp"

namespace fogcache {

struct ZipfParams {
    double z = 0.6;
    int F = 1;
};

/// p_f = f^{-z} / sum_{f'} f'^{-z}, index 0 holding the most popular file.
std::vector<double> zipf_pmf(const ZipfParams& p);

/// Local popularity rows p_{mf}, rate weights w_m and the rate-weighted
/// global mixture p_f.
struct PopularityModel {
    std::vector<std::vector<double>> local;  // M x F
    std::vector<double> weights;             // w_m = lambda_m / sum lambda
    std::vector<double> global;              // F

    int num_nodes() const { return static_cast<int>(local.size()); }
    int num_files() const { return local.empty() ? 0 : static_cast<int>(local.front().size()); }
};

/// w_m = lambda_m / sum_m' lambda_m'.
std::vector<double> rate_weights(const std::vector<double>& rates);

/// Builds a PopularityModel from explicit local rows; weights come from
/// the scenario rates and the global vector from the mixture identity.
/// Throws ValidationError when any invariant fails.
PopularityModel make_popularity(const Scenario& s, std::vector<std::vector<double>> local);

/// Each node gets the Zipf(z) values laid over its own ranking of the
/// library. The ranking starts as the identity and each rank position r is
/// swapped with a uniformly drawn position in [r, r + floor(locality * F)].
/// locality = 0 leaves every node on the global ranking.
PopularityModel synthesize_local_popularity(const Scenario& s, double locality);

/// Same, with locality taken from the scenario.
PopularityModel synthesize_local_popularity(const Scenario& s);

/// Checks row sums, entry bounds, weight sum and the mixture identity.
void validate_popularity(const PopularityModel& pop, const Scenario& s);

/// CSV: header row of file ids, then one row of F probabilities per node.
PopularityModel read_popularity_csv(std::istream& in, const Scenario& s);
void write_popularity_csv(std::ostream& out, const PopularityModel& pop);

/// File ids sorted by descending probability, ties broken by lower id.
std::vector<FileId> rank_files(const std::vector<double>& probs);

/// Sum of the `k` largest entries (k clamped to the vector length).
double top_k_mass(const std::vector<double>& probs, int k);

}  // namespace fogcache
