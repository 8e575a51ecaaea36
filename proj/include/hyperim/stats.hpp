#pragma once

#include <span>

namespace hyperim {

struct RankSumResult {
    double statistic = 0.0; // standardized z for the first sample's U
    double p_value = 0.0;   // two-sided
};

/// Two-sided Mann-Whitney/Wilcoxon rank-sum test with midrank tie handling,
/// tie-corrected variance, continuity correction and normal approximation.
/// Throws std::invalid_argument if either sample has fewer than 2 values or
/// if all values across both samples are identical (degenerate variance).
RankSumResult wilcoxon_rank_sum(std::span<const double> sample_a,
                                std::span<const double> sample_b);

/// One-sided p-value for "sample_a is shifted above sample_b", derived from
/// the same standardized statistic.
double rank_sum_p_greater(std::span<const double> sample_a,
                          std::span<const double> sample_b);

/// Standard normal survival function P(Z > z).
double normal_sf(double z);

} // namespace hyperim
