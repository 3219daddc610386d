#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rcdfs::stats {

// 1-based ranks with ties sharing their average rank.
std::vector<double> midranks(std::span<const double> values);

struct RankSumResult {
    double statistic = 0.0;  // rank sum of sample a
    double p_value = 1.0;    // two-sided
    bool exact = false;
};

// Exact null distribution when n_a + n_b <= kExactLimit and there are no
// ties; otherwise the normal approximation with tie and continuity
// corrections.
inline constexpr std::size_t kExactLimit = 20;
RankSumResult wilcoxon_rank_sum(std::span<const double> sample_a, std::span<const double> sample_b);

struct FriedmanResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t df = 0;
    std::vector<double> mean_ranks;  // per method
};

// `scores[method][block]`; lower is better (rank 1). Needs >= 2 methods and
// >= 2 blocks of equal length.
FriedmanResult friedman_test(const std::vector<std::vector<double>>& scores);

// Upper tail of the chi-square distribution.
double chi_square_survival(double x, double df);

}  // namespace rcdfs::stats
