#include "hyperim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hyperim {

namespace {

struct RankSumCore {
    double z = 0.0;
};

RankSumCore rank_sum_z(std::span<const double> sample_a, std::span<const double> sample_b) {
    const std::size_t na = sample_a.size();
    const std::size_t nb = sample_b.size();
    if (na < 2 || nb < 2) {
        throw std::invalid_argument("rank-sum test needs at least 2 values per sample");
    }
    const std::size_t n = na + nb;

    // Pool, tagging sample membership, and midrank.
    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(n);
    for (double x : sample_a) {
        pooled.emplace_back(x, 0);
    }
    for (double x : sample_b) {
        pooled.emplace_back(x, 1);
    }
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    double rank_sum_a = 0.0;
    double tie_term = 0.0; // sum of t^3 - t over tie groups
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && pooled[j].first == pooled[i].first) {
            ++j;
        }
        const double midrank = 0.5 * static_cast<double>(i + 1 + j); // average of i+1..j
        const auto t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        for (std::size_t q = i; q < j; ++q) {
            if (pooled[q].second == 0) {
                rank_sum_a += midrank;
            }
        }
        i = j;
    }

    const double dna = static_cast<double>(na);
    const double dnb = static_cast<double>(nb);
    const double dn = static_cast<double>(n);
    const double u_a = rank_sum_a - dna * (dna + 1.0) / 2.0;
    const double mean_u = dna * dnb / 2.0;
    const double var_u =
        dna * dnb / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    if (var_u <= 0.0) {
        throw std::invalid_argument(
            "degenerate variance: all pooled values are identical");
    }
    const double sigma = std::sqrt(var_u);

    // Continuity correction pulls the statistic toward zero.
    double diff = u_a - mean_u;
    if (diff > 0.0) {
        diff -= 0.5;
    } else if (diff < 0.0) {
        diff += 0.5;
    }
    return {diff / sigma};
}

} // namespace

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

RankSumResult wilcoxon_rank_sum(std::span<const double> sample_a,
                                std::span<const double> sample_b) {
    const RankSumCore core = rank_sum_z(sample_a, sample_b);
    RankSumResult result;
    result.statistic = core.z;
    result.p_value = std::min(1.0, 2.0 * normal_sf(std::abs(core.z)));
    return result;
}

double rank_sum_p_greater(std::span<const double> sample_a,
                          std::span<const double> sample_b) {
    return normal_sf(rank_sum_z(sample_a, sample_b).z);
}

} // namespace hyperim
