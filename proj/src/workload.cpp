#include "fogcache/workload.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "fogcache/random.hpp"

namespace fogcache {

std::vector<double> zipf_pmf(const ZipfParams& p) {
    if (p.F < 1) throw ValidationError("F must be at least 1");
    if (!(p.z >= 0.0)) throw ValidationError("zipf_z must be non-negative");
    std::vector<double> pmf(p.F);
    for (int f = 0; f < p.F; ++f) pmf[f] = std::pow(static_cast<double>(f + 1), -p.z);
    // Smallest terms first keeps the normaliser accurate for large F.
    double norm = 0.0;
    for (int f = p.F - 1; f >= 0; --f) norm += pmf[f];
    for (double& v : pmf) v /= norm;
    return pmf;
}

std::vector<double> rate_weights(const std::vector<double>& rates) {
    const double total = std::accumulate(rates.begin(), rates.end(), 0.0);
    std::vector<double> w(rates.size());
    for (std::size_t m = 0; m < rates.size(); ++m) w[m] = rates[m] / total;
    return w;
}

namespace {

std::vector<double> mixture(const std::vector<std::vector<double>>& local, const std::vector<double>& w) {
    const std::size_t F = local.empty() ? 0 : local.front().size();
    std::vector<double> global(F, 0.0);
    for (std::size_t m = 0; m < local.size(); ++m) {
        for (std::size_t f = 0; f < F; ++f) global[f] += w[m] * local[m][f];
    }
    return global;
}

}  // namespace

void validate_popularity(const PopularityModel& pop, const Scenario& s) {
    auto fail = [](const std::string& what) { throw ValidationError(what); };
    if (pop.num_nodes() != s.M) fail("popularity rows must match M");
    if (static_cast<int>(pop.weights.size()) != s.M) fail("weights length mismatch");
    if (static_cast<int>(pop.global.size()) != s.F) fail("global length mismatch");
    for (const auto& row : pop.local) {
        if (static_cast<int>(row.size()) != s.F) fail("popularity row length must match F");
        double sum = 0.0;
        for (double v : row) {
            if (!(v >= 0.0 && v <= 1.0)) fail("popularity entries must lie in [0, 1]");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9) fail("popularity row does not sum to 1");
    }
    const double wsum = std::accumulate(pop.weights.begin(), pop.weights.end(), 0.0);
    if (std::abs(wsum - 1.0) > 1e-9) fail("weights do not sum to 1");
    const auto expect = mixture(pop.local, pop.weights);
    for (int f = 0; f < s.F; ++f) {
        if (std::abs(expect[f] - pop.global[f]) > 1e-9) fail("global popularity violates mixture identity");
    }
}

PopularityModel make_popularity(const Scenario& s, std::vector<std::vector<double>> local) {
    PopularityModel pop;
    pop.local = std::move(local);
    pop.weights = rate_weights(s.rates);
    pop.global = mixture(pop.local, pop.weights);
    validate_popularity(pop, s);
    return pop;
}

PopularityModel synthesize_local_popularity(const Scenario& s, double locality) {
    validate_scenario(s);
    if (!(locality >= 0.0 && locality <= 1.0)) throw ValidationError("locality must lie in [0, 1]");
    const auto base = zipf_pmf({s.zipf_z, s.F});
    const auto window = static_cast<std::uint64_t>(std::floor(locality * s.F));

    std::vector<std::vector<double>> local(s.M, std::vector<double>(s.F));
    std::vector<FileId> ranking(s.F);
    for (int m = 0; m < s.M; ++m) {
        std::iota(ranking.begin(), ranking.end(), 0);
        if (window > 0) {
            auto rng = make_rng(s.seed, Stream::Popularity, static_cast<std::uint64_t>(m));
            for (std::uint64_t r = 0; r + 1 < static_cast<std::uint64_t>(s.F); ++r) {
                const std::uint64_t span = std::min<std::uint64_t>(window, s.F - 1 - r);
                const std::uint64_t j = r + uniform_index(rng, span + 1);
                std::swap(ranking[r], ranking[j]);
            }
        }
        for (int r = 0; r < s.F; ++r) local[m][ranking[r]] = base[r];
    }
    return make_popularity(s, std::move(local));
}

PopularityModel synthesize_local_popularity(const Scenario& s) {
    return synthesize_local_popularity(s, s.locality);
}

PopularityModel read_popularity_csv(std::istream& in, const Scenario& s) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("popularity CSV is empty");
    {
        std::istringstream header(line);
        std::string cell;
        int expected = 0;
        while (std::getline(header, cell, ',')) {
            try {
                if (std::stoi(cell) != expected) throw ValidationError("popularity CSV header must list file ids 0..F-1");
            } catch (const std::logic_error&) {
                throw ValidationError("popularity CSV header must list file ids 0..F-1");
            }
            ++expected;
        }
        if (expected != s.F) throw ValidationError("popularity CSV header must list file ids 0..F-1");
    }
    std::vector<std::vector<double>> local;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::logic_error&) {
                throw ValidationError("popularity CSV holds a non-numeric cell");
            }
        }
        local.push_back(std::move(row));
    }
    return make_popularity(s, std::move(local));
}

void write_popularity_csv(std::ostream& out, const PopularityModel& pop) {
    const int F = pop.num_files();
    for (int f = 0; f < F; ++f) out << (f ? "," : "") << f;
    out << '\n';
    const auto old = out.precision(17);
    for (const auto& row : pop.local) {
        for (int f = 0; f < F; ++f) out << (f ? "," : "") << row[f];
        out << '\n';
    }
    out.precision(old);
}

std::vector<FileId> rank_files(const std::vector<double>& probs) {
    std::vector<FileId> order(probs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](FileId a, FileId b) { return probs[a] > probs[b]; });
    return order;
}

double top_k_mass(const std::vector<double>& probs, int k) {
    const std::size_t n = std::min<std::size_t>(probs.size(), static_cast<std::size_t>(std::max(k, 0)));
    std::vector<double> sorted = probs;
    std::partial_sort(sorted.begin(), sorted.begin() + n, sorted.end(), std::greater<>());
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += sorted[i];
    return sum;
}

}  // namespace fogcache
